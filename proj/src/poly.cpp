#include "defectus/poly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace defectus {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::span<const unsigned> exps) {
  if (exps.size() > kMaxVars) throw InvalidArgument("too many variables");
  for (unsigned i = 0; i < exps.size(); ++i) set(i, exps[i]);
}

Monomial Monomial::variable(unsigned i, unsigned power) {
  Monomial m;
  m.set(i, power);
  return m;
}

void Monomial::set(unsigned i, unsigned e) {
  if (i >= kMaxVars) throw InvalidArgument("variable index out of range");
  if (e > UINT16_MAX) throw InvalidArgument("exponent overflow");
  degree_ = degree_ - exps_[i] + e;
  exps_[i] = static_cast<std::uint16_t>(e);
  if (e) {
    support_ |= (1U << i);
  } else {
    support_ &= ~(1U << i);
  }
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_ || (support_ & ~other.support_) != 0) return false;
  for (unsigned i = 0; i < kMaxVars; ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (unsigned i = 0; i < kMaxVars; ++i) {
    const unsigned e = unsigned{a.exps_[i]} + b.exps_[i];
    if (e > UINT16_MAX) throw InvalidArgument("exponent overflow");
    m.exps_[i] = static_cast<std::uint16_t>(e);
  }
  m.degree_ = a.degree_ + b.degree_;
  m.support_ = a.support_ | b.support_;
  return m;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (unsigned i = 0; i < kMaxVars; ++i) {
    m.exps_[i] = static_cast<std::uint16_t>(a.exps_[i] - b.exps_[i]);
    if (m.exps_[i]) m.support_ |= (1U << i);
  }
  m.degree_ = a.degree_ - b.degree_;
  return m;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (unsigned i = 0; i < kMaxVars; ++i) {
    m.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    m.degree_ += m.exps_[i];
  }
  m.support_ = a.support_ | b.support_;
  return m;
}

int grevlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
  for (unsigned i = kMaxVars; i-- > 0;) {
    if (a.exps_[i] != b.exps_[i]) return a.exps_[i] > b.exps_[i] ? -1 : 1;
  }
  return 0;
}

std::vector<unsigned> Monomial::exponents(unsigned nvars) const {
  return std::vector<unsigned>(exps_.begin(), exps_.begin() + nvars);
}

// ---------------------------------------------------------------- Poly

namespace {

bool term_greater(const Term& a, const Term& b) { return grevlex_cmp(a.mono, b.mono) > 0; }

std::vector<Term> combine_sorted(const Field& F, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff = F.add(out.back().coeff, t.coeff);
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coeff.v == 0; });
  return out;
}

}  // namespace

Poly::Poly(Field field, unsigned nvars) : field_(std::move(field)), nvars_(nvars) {
  if (nvars > kMaxVars) throw InvalidArgument("too many variables (max " + std::to_string(kMaxVars) + ")");
}

Poly Poly::constant(Field field, unsigned nvars, Fel c) { return monomial(std::move(field), nvars, Monomial{}, c); }

Poly Poly::variable(Field field, unsigned nvars, unsigned i) {
  if (i >= nvars) throw InvalidArgument("variable index out of range");
  return monomial(std::move(field), nvars, Monomial::variable(i), Fel{1});
}

Poly Poly::monomial(Field field, unsigned nvars, Monomial m, Fel c) {
  Poly p(std::move(field), nvars);
  if (c.v != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(Field field, unsigned nvars, std::vector<Term> terms) {
  Poly p(std::move(field), nvars);
  for (const auto& t : terms) {
    if (nvars < kMaxVars && (t.mono.support() >> nvars) != 0) throw InvalidArgument("monomial uses a variable outside the ring");
  }
  p.terms_ = combine_sorted(p.field_, std::move(terms));
  return p;
}

int Poly::degree() const {
  if (terms_.empty()) return kNegInf;
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return static_cast<int>(d);
}

bool Poly::is_homogeneous() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return t.mono.degree() == terms_.front().mono.degree(); });
}

Fel Poly::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mono == m) return t.coeff;
  return Fel{0};
}

void Poly::check_compatible(const Poly& other) const {
  if (nvars_ != other.nvars_) throw InvalidArgument("polynomials live in rings with different numbers of variables");
  if (!(field_ == other.field_)) throw InvalidArgument("polynomials live over different fields");
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = field_.neg(t.coeff);
  return r;
}

namespace {

// a + sign*b by merging; both sorted descending.
std::vector<Term> merge_terms(const Field& F, const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) {
      c = -1;
    } else if (j == b.size()) {
      c = 1;
    } else {
      c = grevlex_cmp(a[i].mono, b[j].mono);
    }
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].mono, subtract ? F.neg(b[j].coeff) : b[j].coeff});
      ++j;
    } else {
      const Fel s = subtract ? F.sub(a[i].coeff, b[j].coeff) : F.add(a[i].coeff, b[j].coeff);
      if (s.v != 0) out.push_back({a[i].mono, s});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly operator+(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  Poly r(a.field_, a.nvars_);
  r.terms_ = merge_terms(a.field_, a.terms_, b.terms_, false);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  Poly r(a.field_, a.nvars_);
  r.terms_ = merge_terms(a.field_, a.terms_, b.terms_, true);
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) prod.push_back({s.mono * t.mono, a.field_.mul(s.coeff, t.coeff)});
  Poly r(a.field_, a.nvars_);
  r.terms_ = combine_sorted(a.field_, std::move(prod));
  return r;
}

Poly Poly::scaled(Fel c) const {
  if (c.v == 0) return Poly(field_, nvars_);
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = field_.mul(t.coeff, c);
  return r;
}

Poly Poly::times_monomial(const Monomial& m, Fel c) const {
  if (c.v == 0) return Poly(field_, nvars_);
  Poly r = *this;
  // multiplication by a monomial preserves grevlex order
  for (auto& t : r.terms_) {
    t.mono = t.mono * m;
    t.coeff = field_.mul(t.coeff, c);
  }
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(field_, nvars_, field_.one());
  for (unsigned i = 0; i < e; ++i) result = result * *this;
  return result;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(field_.inv(terms_.front().coeff));
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  if (!(a.field_ == b.field_)) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

Fel Poly::evaluate(std::span<const Fel> point) const {
  if (point.size() != nvars_) throw InvalidArgument("evaluation point has wrong dimension");
  Fel sum{0};
  for (const auto& t : terms_) {
    Fel v = t.coeff;
    for (unsigned i = 0; i < nvars_ && v.v != 0; ++i) {
      if (t.mono[i]) v = field_.mul(v, field_.pow(point[i], t.mono[i]));
    }
    sum = field_.add(sum, v);
  }
  return sum;
}

Poly Poly::derivative(unsigned i) const {
  if (i >= nvars_) throw InvalidArgument("variable index out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const unsigned e = t.mono[i];
    if (e == 0) continue;
    const Fel c = field_.mul(t.coeff, field_.from_int(e));
    if (c.v == 0) continue;  // e divisible by the characteristic
    Monomial m = t.mono;
    m.set(i, e - 1);
    out.push_back({m, c});
  }
  return from_terms(field_, nvars_, std::move(out));
}

Poly Poly::substitute(unsigned i, Fel c) const {
  if (i >= nvars_) throw InvalidArgument("variable index out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    const unsigned e = m[i];
    m.set(i, 0);
    out.push_back({m, field_.mul(t.coeff, field_.pow(c, e))});
  }
  return from_terms(field_, nvars_, std::move(out));
}

Poly Poly::with_nvars(unsigned n) const {
  if (n < nvars_) throw InvalidArgument("with_nvars cannot shrink the ring");
  Poly r(field_, n);
  r.terms_ = terms_;
  return r;
}

Poly Poly::drop_last_variable() const {
  if (nvars_ == 0) throw InvalidArgument("ring has no variables");
  for (const auto& t : terms_)
    if (t.mono[nvars_ - 1] != 0) throw InvalidArgument("last variable occurs in polynomial");
  Poly r(field_, nvars_ - 1);
  r.terms_ = terms_;
  return r;
}

Poly Poly::over(const Field& extension) const {
  if (!extension.contains_subfield(field_)) throw InvalidArgument("target field does not extend the coefficient field");
  Poly r(extension, nvars_);
  r.terms_ = terms_;
  return r;
}

Poly Poly::compose(std::span<const Poly> images) const {
  if (images.size() != nvars_) throw InvalidArgument("compose: need one image per variable");
  const unsigned n = images.empty() ? nvars_ : images[0].nvars();
  for (const auto& g : images)
    if (g.nvars() != n || !(g.field() == field_)) throw InvalidArgument("compose: images live in different rings");
  // powers of each image, built lazily
  std::vector<std::vector<Poly>> powers(nvars_);
  auto power = [&](unsigned i, unsigned e) -> const Poly& {
    auto& p = powers[i];
    if (p.empty()) p.push_back(constant(field_, n, field_.one()));
    while (p.size() <= e) p.push_back(p.back() * images[i]);
    return p[e];
  };
  Poly result(field_, n);
  for (const auto& t : terms_) {
    Poly term = constant(field_, n, t.coeff);
    for (unsigned i = 0; i < nvars_; ++i)
      if (t.mono[i]) term = term * power(i, t.mono[i]);
    result += term;
  }
  return result;
}

Poly Poly::homogeneous_component(unsigned d) const {
  Poly r(field_, nvars_);
  for (const auto& t : terms_)
    if (t.mono.degree() == d) r.terms_.push_back(t);
  return r;
}

nlohmann::json Poly::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : terms_) {
    nlohmann::json c;
    if (field_.absolute_degree() == 1) {
      c = t.coeff.v;
    } else {
      c = field_.coords(t.coeff);
    }
    terms.push_back({{"exp", t.mono.exponents(nvars_)}, {"c", c}});
  }
  return {{"nvars", nvars_}, {"terms", terms}};
}

Poly Poly::from_json(const Field& field, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("nvars") || !j.contains("terms")) {
    throw InvalidArgument("polynomial JSON must be an object with \"nvars\" and \"terms\"");
  }
  if (!j["nvars"].is_number_unsigned()) throw InvalidArgument("\"nvars\" must be a non-negative integer");
  const unsigned n = j["nvars"].get<unsigned>();
  if (n > kMaxVars) throw InvalidArgument("too many variables");
  if (!j["terms"].is_array()) throw InvalidArgument("\"terms\" must be an array");
  std::vector<Term> terms;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("exp") || !t.contains("c") || !t["exp"].is_array()) {
      throw InvalidArgument("term must be an object with \"exp\" and \"c\"");
    }
    if (t["exp"].size() != n) throw InvalidArgument("exponent vector length differs from nvars");
    std::vector<unsigned> e;
    for (const auto& x : t["exp"]) {
      if (!x.is_number_unsigned()) throw InvalidArgument("exponents must be non-negative integers");
      e.push_back(x.get<unsigned>());
    }
    Fel c;
    const auto& cj = t["c"];
    if (field.absolute_degree() == 1) {
      if (!cj.is_number_unsigned()) throw InvalidArgument("coefficient must be an integer in [0, p)");
      const auto v = cj.get<std::uint64_t>();
      if (v >= field.characteristic()) throw InvalidArgument("coefficient out of range [0, p)");
      c = Fel{v};
    } else {
      if (!cj.is_array()) throw InvalidArgument("coefficient must be a length-k integer vector");
      std::vector<std::uint64_t> cs;
      for (const auto& x : cj) {
        if (!x.is_number_unsigned()) throw InvalidArgument("coefficient coordinates must be non-negative integers");
        cs.push_back(x.get<std::uint64_t>());
      }
      c = field.from_coords(cs);
    }
    terms.push_back({Monomial(e), c});
  }
  return from_terms(field, n, std::move(terms));
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    const bool unit = t.coeff.v == 1;
    if (!unit || t.mono.is_one()) os << field_.to_string(t.coeff);
    bool need_star = !unit;
    for (unsigned i = 0; i < nvars_; ++i) {
      if (!t.mono[i]) continue;
      if (need_star) os << '*';
      os << 'x' << i;
      if (t.mono[i] > 1) os << '^' << t.mono[i];
      need_star = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- constructions

Poly homogenize(const Poly& f, unsigned cap) {
  if (f.degree() != kNegInf && f.degree() > static_cast<int>(cap)) {
    throw InvalidArgument("cannot homogenize: degree exceeds the cap");
  }
  const unsigned r = f.nvars();
  if (r + 1 > kMaxVars) throw InvalidArgument("too many variables to homogenize");
  std::vector<Term> out;
  out.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    Monomial m = t.mono;
    m.set(r, cap - t.mono.degree());
    out.push_back({m, t.coeff});
  }
  return Poly::from_terms(f.field(), r + 1, std::move(out));
}

Poly dehomogenize(const Poly& f) {
  if (f.nvars() == 0) throw InvalidArgument("ring has no variables");
  const unsigned last = f.nvars() - 1;
  return f.substitute(last, f.field().one()).drop_last_variable();
}

Poly initial_form(const Poly& f, unsigned cap) { return f.homogeneous_component(cap); }

Poly jacobian_minor(std::span<const Poly> polys, std::span<const unsigned> cols) {
  const unsigned m = static_cast<unsigned>(polys.size());
  if (m == 0) throw InvalidArgument("empty polynomial list");
  if (cols.size() != m) throw InvalidArgument("column count must equal the number of polynomials");
  std::vector<std::vector<Poly>> jac(m);
  for (unsigned i = 0; i < m; ++i)
    for (unsigned c : cols) jac[i].push_back(polys[i].derivative(c));

  // Laplace expansion along the first row over the remaining columns.
  std::function<Poly(unsigned, std::vector<unsigned>&)> det = [&](unsigned row, std::vector<unsigned>& avail) -> Poly {
    if (row == m) return Poly::constant(polys[0].field(), polys[0].nvars(), polys[0].field().one());
    Poly sum(polys[0].field(), polys[0].nvars());
    for (std::size_t idx = 0; idx < avail.size(); ++idx) {
      const unsigned c = avail[idx];
      if (jac[row][c].is_zero()) continue;
      avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(idx));
      Poly sub = det(row + 1, avail);
      avail.insert(avail.begin() + static_cast<std::ptrdiff_t>(idx), c);
      Poly term = jac[row][c] * sub;
      sum = (idx % 2 == 0) ? sum + term : sum - term;
    }
    return sum;
  };
  std::vector<unsigned> avail(m);
  for (unsigned i = 0; i < m; ++i) avail[i] = i;
  return det(0, avail);
}

std::vector<std::vector<unsigned>> column_subsets(unsigned n, unsigned m) {
  std::vector<std::vector<unsigned>> out;
  if (m > n) return out;
  std::vector<unsigned> cur(m);
  for (unsigned i = 0; i < m; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    int i = static_cast<int>(m) - 1;
    while (i >= 0 && cur[i] == n - m + static_cast<unsigned>(i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < m; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<Poly> jacobian_minors(std::span<const Poly> polys) {
  if (polys.empty()) throw InvalidArgument("empty polynomial list");
  const unsigned n = polys[0].nvars();
  const unsigned m = static_cast<unsigned>(polys.size());
  if (m > n) throw InvalidArgument("more polynomials than variables: no maximal minors");
  std::vector<Poly> out;
  for (const auto& cols : column_subsets(n, m)) out.push_back(jacobian_minor(polys, cols));
  return out;
}

std::uint64_t monomial_count_upto(unsigned d, unsigned n) {
  // C(d+n, n)
  std::uint64_t c = 1;
  for (unsigned i = 1; i <= n; ++i) c = c * (d + i) / i;
  return c;
}

namespace {

void gen_monomials(unsigned n, unsigned var, unsigned remaining, bool exact, Monomial& cur, std::vector<Monomial>& out) {
  if (var == n) {
    if (!exact || remaining == 0) out.push_back(cur);
    return;
  }
  for (unsigned e = 0; e <= remaining; ++e) {
    cur.set(var, e);
    gen_monomials(n, var + 1, remaining - e, exact, cur, out);
  }
  cur.set(var, 0);
}

}  // namespace

std::vector<Monomial> monomials_upto(unsigned d, unsigned n) {
  std::vector<Monomial> out;
  Monomial cur;
  gen_monomials(n, 0, d, false, cur, out);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) > 0; });
  return out;
}

std::vector<Monomial> monomials_of_degree(unsigned d, unsigned n) {
  std::vector<Monomial> out;
  Monomial cur;
  if (n == 0) {
    if (d == 0) out.push_back(cur);
    return out;
  }
  gen_monomials(n, 0, d, true, cur, out);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) > 0; });
  return out;
}

// ---------------------------------------------------------------- PolySystem

PolySystem::PolySystem(unsigned r, std::vector<unsigned> caps, std::vector<Poly> polys)
    : r_(r), caps_(std::move(caps)), polys_(std::move(polys)) {
  if (polys_.empty()) throw InvalidArgument("system must contain at least one polynomial");
  if (caps_.size() != polys_.size()) throw InvalidArgument("number of degree caps differs from number of polynomials");
  if (polys_.size() >= r_) throw InvalidArgument("system must have fewer equations than variables (s < r)");
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    if (polys_[i].nvars() != r_) throw InvalidArgument("polynomial " + std::to_string(i + 1) + " is not in r variables");
    if (!(polys_[i].field() == polys_[0].field())) throw InvalidArgument("polynomials over different fields");
    if (caps_[i] < 1) throw InvalidArgument("degree caps must be at least 1");
    if (polys_[i].degree() > static_cast<int>(caps_[i])) {
      throw InvalidArgument("polynomial " + std::to_string(i + 1) + " exceeds its degree cap");
    }
  }
}

bool PolySystem::degree_full(unsigned i) const { return polys_.at(i).degree() == static_cast<int>(caps_.at(i)); }

bool PolySystem::all_degrees_full() const {
  for (unsigned i = 0; i < s(); ++i)
    if (!degree_full(i)) return false;
  return true;
}

std::vector<Poly> PolySystem::homogenized() const {
  std::vector<Poly> out;
  for (unsigned i = 0; i < s(); ++i) out.push_back(homogenize(polys_[i], caps_[i]));
  return out;
}

std::vector<Poly> PolySystem::initial_forms() const {
  std::vector<Poly> out;
  for (unsigned i = 0; i < s(); ++i) out.push_back(initial_form(polys_[i], caps_[i]));
  return out;
}

nlohmann::json PolySystem::to_json() const {
  nlohmann::json polys = nlohmann::json::array();
  for (const auto& f : polys_) polys.push_back(f.to_json());
  return {{"r", r_}, {"caps", caps_}, {"polys", polys}};
}

PolySystem PolySystem::from_json(const Field& field, unsigned r, std::vector<unsigned> caps, const nlohmann::json& j) {
  const nlohmann::json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("polys")) throw InvalidArgument("system JSON object must contain \"polys\"");
    arr = &j["polys"];
  }
  if (!arr->is_array()) throw InvalidArgument("system JSON must be an array of polynomials");
  std::vector<Poly> polys;
  for (const auto& p : *arr) polys.push_back(Poly::from_json(field, p));
  return PolySystem(r, std::move(caps), std::move(polys));
}

}  // namespace defectus
