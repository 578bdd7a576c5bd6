#include "defectus/groebner.hpp"

#include <algorithm>
#include <bit>

namespace defectus {

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (kind == Kind::eliminate_last && a[var] != b[var]) return a[var] < b[var] ? -1 : 1;
  return grevlex_cmp(a, b);
}

namespace {

using Terms = std::vector<Term>;

struct Engine {
  const Field& F;
  MonomialOrder order;

  bool greater(const Monomial& a, const Monomial& b) const { return order.compare(a, b) > 0; }

  Terms sorted(const Poly& p) const {
    Terms t = p.terms();
    if (order.kind != MonomialOrder::Kind::grevlex) {
      std::sort(t.begin(), t.end(), [&](const Term& x, const Term& y) { return greater(x.mono, y.mono); });
    }
    return t;
  }

  void make_monic(Terms& t) const {
    if (t.empty() || t.front().coeff.v == 1) return;
    const Fel c = F.inv(t.front().coeff);
    for (auto& x : t) x.coeff = F.mul(x.coeff, c);
  }

  // f[from+1..] - c * m * g[1..]; g's leading term cancels f[from].
  Terms reduce_step(const Terms& f, std::size_t from, Fel c, const Monomial& m, const Terms& g) const {
    Terms out;
    out.reserve(f.size() - from + g.size());
    std::size_t i = from + 1, j = 1;
    while (i < f.size() || j < g.size()) {
      if (j == g.size()) {
        out.push_back(f[i++]);
        continue;
      }
      const Monomial gm = g[j].mono * m;
      const int cmp = i == f.size() ? -1 : order.compare(f[i].mono, gm);
      if (cmp > 0) {
        out.push_back(f[i++]);
      } else if (cmp < 0) {
        out.push_back({gm, F.neg(F.mul(c, g[j].coeff))});
        ++j;
      } else {
        const Fel v = F.sub(f[i].coeff, F.mul(c, g[j].coeff));
        if (v.v != 0) out.push_back({gm, v});
        ++i;
        ++j;
      }
    }
    return out;
  }

  // Full reduction modulo monic polynomials `basis` (skipping index `skip`).
  Terms reduce(Terms f, const std::vector<Terms>& basis, std::size_t skip = SIZE_MAX) const {
    Terms rem;
    std::size_t head = 0;
    while (head < f.size()) {
      const Term lt = f[head];
      const Terms* divisor = nullptr;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (k == skip || basis[k].empty()) continue;
        if (basis[k].front().mono.divides(lt.mono)) {
          divisor = &basis[k];
          break;
        }
      }
      if (!divisor) {
        rem.push_back(lt);
        ++head;
        continue;
      }
      f = reduce_step(f, head, lt.coeff, lt.mono / divisor->front().mono, *divisor);
      head = 0;
    }
    return rem;
  }

  Terms spoly(const Terms& a, const Terms& b, const Monomial& l) const {
    // both monic: (l/LM(a)) a - (l/LM(b)) b
    Terms ta = a;
    const Monomial ma = l / a.front().mono;
    for (auto& t : ta) t.mono = t.mono * ma;
    return reduce_step(ta, 0, F.one(), l / b.front().mono, b);
  }
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

std::vector<Terms> buchberger(const Engine& E, std::vector<Terms> input) {
  std::vector<Terms> G;
  std::vector<std::vector<char>> pending;
  std::vector<Pair> queue;
  bool unit = false;

  auto add = [&](Terms h) {
    E.make_monic(h);
    if (h.front().mono.is_one()) unit = true;
    const std::size_t k = G.size();
    G.push_back(std::move(h));
    for (auto& row : pending) row.push_back(0);
    pending.emplace_back(G.size(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      queue.push_back({i, k, lcm(G[i].front().mono, G[k].front().mono)});
      pending[i][k] = pending[k][i] = 1;
    }
  };

  for (auto& f : input) {
    Terms h = E.reduce(std::move(f), G);
    if (h.empty()) continue;
    add(std::move(h));
    if (unit) break;
  }

  while (!unit && !queue.empty()) {
    // normal selection strategy: smallest lcm, ties by index
    auto best = queue.begin();
    for (auto it = queue.begin() + 1; it != queue.end(); ++it) {
      const int c = E.order.compare(it->lcm, best->lcm);
      if (c < 0 || (c == 0 && std::tie(it->j, it->i) < std::tie(best->j, best->i))) best = it;
    }
    const Pair p = *best;
    queue.erase(best);
    pending[p.i][p.j] = pending[p.j][p.i] = 0;

    const Monomial& li = G[p.i].front().mono;
    const Monomial& lj = G[p.j].front().mono;
    if (coprime(li, lj)) continue;  // product criterion
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == p.i || k == p.j) continue;
      if (!pending[p.i][k] && !pending[p.j][k] && G[k].front().mono.divides(p.lcm)) chain = true;
    }
    if (chain) continue;

    Terms h = E.reduce(E.spoly(G[p.i], G[p.j], p.lcm), G);
    if (!h.empty()) add(std::move(h));
  }

  if (unit) return {Terms{{Monomial{}, E.F.one()}}};

  // minimal basis, then interreduce
  std::vector<Terms> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& lj = G[j].front().mono;
      const Monomial& lm = G[i].front().mono;
      if (lj.divides(lm) && (!(lj == lm) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  std::vector<Terms> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    Terms tail(minimal[i].begin() + 1, minimal[i].end());
    Terms red = E.reduce(std::move(tail), minimal, i);
    Terms full{minimal[i].front()};
    full.insert(full.end(), red.begin(), red.end());
    reduced.push_back(std::move(full));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const Terms& a, const Terms& b) { return E.greater(a.front().mono, b.front().mono); });
  return reduced;
}

Monomial leading_under(const Poly& p, MonomialOrder order) {
  Monomial best = p.terms().front().mono;
  for (const auto& t : p.terms())
    if (order.compare(t.mono, best) > 0) best = t.mono;
  return best;
}

}  // namespace

GroebnerBasis::GroebnerBasis(Field field, unsigned nvars, MonomialOrder order, std::vector<Poly> gens)
    : field_(std::move(field)), nvars_(nvars), order_(order), gens_(std::move(gens)) {
  for (const auto& g : gens_) {
    if (g.is_zero()) throw InvalidArgument("zero polynomial in a reduced basis");
    leading_.push_back(leading_under(g, order_));
  }
}

bool GroebnerBasis::is_unit() const { return gens_.size() == 1 && gens_[0].is_constant(); }

bool GroebnerBasis::contains(const Poly& f) const { return normal_form(f, *this).is_zero(); }

bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
  return a.nvars_ == b.nvars_ && a.order_ == b.order_ && a.field_ == b.field_ && a.gens_ == b.gens_;
}

nlohmann::json GroebnerBasis::to_json() const {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : gens_) gens.push_back(g.to_json());
  return {{"nvars", nvars_}, {"order", order_.kind == MonomialOrder::Kind::grevlex ? "grevlex" : "eliminate_last"},
          {"gens", gens}};
}

GroebnerBasis groebner(const Field& field, unsigned nvars, std::span<const Poly> gens, MonomialOrder order) {
  Engine E{field, order};
  std::vector<Terms> input;
  for (const auto& g : gens) {
    if (g.nvars() != nvars) throw InvalidArgument("generator lives in a different ring");
    if (!(g.field() == field)) throw InvalidArgument("generator lives over a different field");
    if (!g.is_zero()) input.push_back(E.sorted(g));
  }
  std::vector<Poly> out;
  for (auto& t : buchberger(E, std::move(input))) out.push_back(Poly::from_terms(field, nvars, std::move(t)));
  return GroebnerBasis(field, nvars, order, std::move(out));
}

GroebnerBasis groebner(std::span<const Poly> gens, MonomialOrder order) {
  if (gens.empty()) throw InvalidArgument("groebner: empty generator list needs an explicit ring");
  return groebner(gens[0].field(), gens[0].nvars(), gens, order);
}

Poly normal_form(const Poly& f, const GroebnerBasis& gb) {
  if (f.nvars() != gb.nvars() || !(f.field() == gb.field())) throw InvalidArgument("normal_form: ring mismatch");
  Engine E{gb.field(), gb.order()};
  std::vector<Terms> basis;
  for (const auto& g : gb.gens()) basis.push_back(E.sorted(g));
  return Poly::from_terms(gb.field(), gb.nvars(), E.reduce(E.sorted(f), basis));
}

Poly divide_exact(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw InvalidArgument("division by the zero polynomial");
  const Field& F = f.field();
  Poly rest = f;
  std::vector<Term> quotient;
  const Term& lg = g.leading();
  const Fel lg_inv = F.inv(lg.coeff);
  while (!rest.is_zero()) {
    const Term& lt = rest.leading();
    if (!lg.mono.divides(lt.mono)) throw InvalidArgument("divide_exact: divisor does not divide");
    const Monomial m = lt.mono / lg.mono;
    const Fel c = F.mul(lt.coeff, lg_inv);
    quotient.push_back({m, c});
    rest = rest - g.times_monomial(m, c);
  }
  return Poly::from_terms(F, f.nvars(), std::move(quotient));
}

namespace {

// Elimination of an appended variable t from t*A + (1-t)*B.
GroebnerBasis intersect_gens(const Field& F, unsigned n, const std::vector<Poly>& A, const std::vector<Poly>& B) {
  if (n + 1 > kMaxVars) throw InvalidArgument("no room for an elimination variable");
  const Poly t = Poly::variable(F, n + 1, n);
  const Poly one_minus_t = Poly::constant(F, n + 1, F.one()) - t;
  std::vector<Poly> gens;
  for (const auto& a : A) gens.push_back(t * a.with_nvars(n + 1));
  for (const auto& b : B) gens.push_back(one_minus_t * b.with_nvars(n + 1));
  GroebnerBasis elim = groebner(F, n + 1, gens, MonomialOrder::eliminate_last(n));
  std::vector<Poly> kept;
  for (std::size_t i = 0; i < elim.gens().size(); ++i) {
    if (elim.leading_monomials()[i][n] == 0) kept.push_back(elim.gens()[i].drop_last_variable());
  }
  return groebner(F, n, kept);
}

}  // namespace

GroebnerBasis intersect(const GroebnerBasis& I, const GroebnerBasis& J) {
  if (I.nvars() != J.nvars() || !(I.field() == J.field())) throw InvalidArgument("intersect: ring mismatch");
  return intersect_gens(I.field(), I.nvars(), I.gens(), J.gens());
}

GroebnerBasis colon_ideal(const GroebnerBasis& gb, const Poly& f) {
  if (f.is_zero()) throw InvalidArgument("colon_ideal: f must be nonzero");
  if (f.nvars() != gb.nvars() || !(f.field() == gb.field())) throw InvalidArgument("colon_ideal: ring mismatch");
  const Field& F = gb.field();
  const unsigned n = gb.nvars();
  if (gb.is_unit()) return gb.order() == MonomialOrder::grevlex() ? gb : groebner(F, n, gb.gens());
  if (gb.is_zero_ideal()) return GroebnerBasis(F, n, MonomialOrder::grevlex(), {});
  GroebnerBasis meet = intersect_gens(F, n, gb.gens(), {f});
  std::vector<Poly> quotients;
  for (const auto& g : meet.gens()) quotients.push_back(divide_exact(g, f));
  return groebner(F, n, quotients);
}

int ideal_dimension(const GroebnerBasis& gb) {
  if (gb.is_unit()) return -1;
  const unsigned n = gb.nvars();
  std::vector<std::uint32_t> supports;
  for (const auto& m : gb.leading_monomials()) supports.push_back(m.support());
  int best = 0;
  const std::uint32_t full = n >= 32 ? ~0U : ((1U << n) - 1);
  for (std::uint32_t mask = 0;; ++mask) {
    const int size = std::popcount(mask);
    if (size > best) {
      bool independent = true;
      for (auto s : supports) {
        if ((s & ~mask) == 0) {
          independent = false;
          break;
        }
      }
      if (independent) best = size;
    }
    if (mask == full) break;
  }
  return best;
}

namespace {

void require_homogeneous(const GroebnerBasis& gb, const char* what) {
  for (const auto& g : gb.gens()) {
    if (!g.is_homogeneous()) throw InvalidArgument(std::string(what) + ": generators are not homogeneous");
  }
}

}  // namespace

int projective_dimension(const GroebnerBasis& gb) {
  require_homogeneous(gb, "projective_dimension");
  const int d = ideal_dimension(gb);
  return d <= 0 ? -1 : d - 1;
}

bool is_empty(const GroebnerBasis& gb, Geometry mode) {
  if (mode == Geometry::affine) return gb.is_unit();
  return projective_dimension(gb) < 0;
}

namespace {

std::uint64_t count_standard(const std::vector<Monomial>& leads, unsigned n, unsigned var, unsigned remaining,
                             Monomial& cur) {
  if (var + 1 == n) {
    cur.set(var, remaining);
    bool standard = true;
    for (const auto& l : leads) {
      if (l.divides(cur)) {
        standard = false;
        break;
      }
    }
    cur.set(var, 0);
    return standard ? 1 : 0;
  }
  std::uint64_t total = 0;
  for (unsigned e = 0; e <= remaining; ++e) {
    cur.set(var, e);
    total += count_standard(leads, n, var + 1, remaining - e, cur);
  }
  cur.set(var, 0);
  return total;
}

}  // namespace

std::uint64_t hilbert_function(const GroebnerBasis& gb, unsigned t) {
  const unsigned n = gb.nvars();
  if (n == 0) return (t == 0 && !gb.is_unit()) ? 1 : 0;
  Monomial cur;
  return count_standard(gb.leading_monomials(), n, 0, t, cur);
}

std::uint64_t hilbert_degree(const GroebnerBasis& gb) {
  require_homogeneous(gb, "hilbert_degree");
  const int dim = ideal_dimension(gb);
  if (dim <= 0) return 0;
  unsigned max_deg = 1;
  for (const auto& m : gb.leading_monomials()) max_deg = std::max(max_deg, m.degree());
  const unsigned t0 = gb.nvars() * max_deg;
  const unsigned order = static_cast<unsigned>(dim - 1);
  // order-th forward difference of the Hilbert function, constant for t >= t0
  auto difference = [&](unsigned t) {
    std::int64_t acc = 0;
    std::int64_t binom = 1;
    for (unsigned i = 0; i <= order; ++i) {
      const auto h = static_cast<std::int64_t>(hilbert_function(gb, t + i));
      acc += ((order - i) % 2 == 0 ? 1 : -1) * binom * h;
      binom = binom * static_cast<std::int64_t>(order - i) / static_cast<std::int64_t>(i + 1);
    }
    return acc;
  };
  const std::int64_t d = difference(t0);
  return d < 0 ? 0 : static_cast<std::uint64_t>(d);
}

}  // namespace defectus
