#include "defectus/bounds.hpp"

#include <cstdlib>
#include <sstream>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "defectus/groebner.hpp"

namespace defectus {

namespace mp = boost::multiprecision;

void BoundInputs::validate() const {
  if (s < 2 || s >= r) throw InvalidArgument("need 1 < s < r");
  if (d.size() != s) throw InvalidArgument("need exactly s degree caps");
  for (auto di : d)
    if (di < 1) throw InvalidArgument("degree caps must be >= 1");
  if (prime_power(q).k == 0) throw InvalidArgument("q must be a prime power");
}

nlohmann::json BoundInputs::to_json() const { return {{"r", r}, {"s", s}, {"q", q}, {"d", d}}; }

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt b = 1;
  for (unsigned i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

BoundReport derive(const BoundInputs& in) {
  in.validate();
  BoundReport rep;
  rep.inputs = in;
  rep.delta = 1;
  rep.sigma = 0;
  rep.dimF = 0;
  for (auto di : in.d) {
    rep.delta *= di;
    rep.sigma += di;
    rep.dimF += binomial(di + in.r, in.r);
  }
  rep.sigma -= in.s;
  rep.N = binomial(in.r + 1, in.s);

  rep.applicable = true;
  for (auto di : in.d) rep.applicable = rep.applicable && di >= 2;
  if (!rep.applicable) return rep;

  const Rational ds(rep.delta * rep.sigma);
  for (auto di : in.d) {
    rep.C1.push_back(ds * (Rational(1) + Rational(1, di)));
    rep.C2.push_back(ds * (Rational(rep.sigma, di) + 2));
  }
  const BigInt q = in.q;
  const unsigned e1 = in.r - in.s + 2;
  const unsigned e2 = in.r - in.s + 1;
  rep.threshold_B1 = 2 * BigInt(in.s) * rep.sigma * rep.delta;
  rep.threshold_B2 = 2 * BigInt(in.s) * rep.sigma * rep.sigma * rep.delta;
  const unsigned dim = rep.dimF.convert_to<unsigned>();
  rep.count_B1 = mp::pow(rep.threshold_B1, e1) * mp::pow(q, dim - e1);
  rep.count_B2 = mp::pow(rep.threshold_B2, e2) * mp::pow(q, dim - e2);
  rep.prob_B1 = Rational(mp::pow(rep.threshold_B1, e1), mp::pow(q, e1));
  rep.prob_B2 = Rational(mp::pow(rep.threshold_B2, e2), mp::pow(q, e2));
  rep.vacuous_B1 = rep.prob_B1 >= 1;
  rep.vacuous_B2 = rep.prob_B2 >= 1;
  return rep;
}

std::string to_string(const Rational& x) {
  const BigInt num = mp::numerator(x), den = mp::denominator(x);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

std::string decimal(const Rational& x, int digits) {
  using Dec = mp::cpp_dec_float_50;
  const Dec v = Dec(mp::numerator(x)) / Dec(mp::denominator(x));
  return v.str(digits, std::ios_base::fmtflags(0));
}

nlohmann::json BoundReport::to_json() const {
  nlohmann::json j;
  j["inputs"] = inputs.to_json();
  j["delta"] = delta.str();
  j["sigma"] = sigma.str();
  j["dimF"] = dimF.str();
  j["N"] = N.str();
  j["applicable"] = applicable;
  if (!applicable) {
    j["bounds"] = "inapplicable: some d_i < 2";
    return j;
  }
  nlohmann::json c1 = nlohmann::json::array(), c2 = nlohmann::json::array();
  for (const auto& v : C1) c1.push_back(to_string(v));
  for (const auto& v : C2) c2.push_back(to_string(v));
  j["C1"] = c1;
  j["C2"] = c2;
  j["count_B1"] = count_B1.str();
  j["prob_B1"] = to_string(prob_B1);
  j["prob_B1_decimal"] = decimal(prob_B1);
  j["vacuous_B1"] = vacuous_B1;
  j["count_B2"] = count_B2.str();
  j["prob_B2"] = to_string(prob_B2);
  j["prob_B2_decimal"] = decimal(prob_B2);
  j["vacuous_B2"] = vacuous_B2;
  j["nonvacuous_q_above_B1"] = threshold_B1.str();
  j["nonvacuous_q_above_B2"] = threshold_B2.str();
  return j;
}

BigInt point_count_bound(const BigInt& degree, int dim, std::uint64_t q) {
  if (dim < 0) return 0;
  return degree * mp::pow(BigInt(q), static_cast<unsigned>(dim));
}

BigInt bezout_number(std::span<const Poly> polys) {
  BigInt b = 1;
  for (const auto& f : polys) {
    if (f.is_zero()) continue;
    if (f.is_constant()) return 0;
    b *= f.degree();
  }
  return b;
}

VarietyMeasure measure_variety(const PolySystem& system) {
  VarietyMeasure m;
  const GroebnerBasis ideal = groebner(system.polys());
  m.dim = ideal_dimension(ideal);
  m.hilbert_degree = 0;
  const int r = static_cast<int>(system.r()), s = static_cast<int>(system.s());
  if (m.dim < 0) {
    m.degree = 0;
    m.source = "empty";
    return m;
  }
  if (m.dim == r - s) {
    // homogenize to the actual degrees, not the caps, to avoid spurious
    // components at infinity
    std::vector<Poly> hom_gens;
    for (const auto& f : system.polys())
      if (!f.is_zero()) hom_gens.push_back(homogenize(f, static_cast<unsigned>(f.degree())));
    const GroebnerBasis hom = groebner(system.field(), system.r() + 1, hom_gens);
    if (projective_dimension(hom) == r - s) {
      m.hilbert_degree = hilbert_degree(hom);
      m.degree = m.hilbert_degree;
      m.source = "hilbert";
      return m;
    }
  }
  m.degree = bezout_number(system.polys());
  m.source = "bezout";
  return m;
}

std::uint64_t enumeration_budget() {
  if (const char* env = std::getenv("DEFECTUS_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 1ULL << 22;
}

PointSet enumerate_points(const PolySystem& system, unsigned k, std::uint64_t budget) {
  if (k < 1) throw InvalidArgument("extension degree must be >= 1");
  const Field E = k == 1 ? system.field() : system.field().extension(k, 0);
  const BigInt total = mp::pow(BigInt(E.order()), system.r());
  if (total > budget) throw BudgetExceeded("point enumeration exceeds budget", total.str());
  std::vector<Poly> polys;
  for (const auto& f : system.polys()) polys.push_back(k == 1 ? f : f.over(E));
  PointSet out{E, {}};
  const std::uint64_t n = total.convert_to<std::uint64_t>();
  std::vector<Fel> pt(system.r());
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    // first coordinate most significant
    std::uint64_t rest = idx;
    for (unsigned j = system.r(); j-- > 0;) {
      pt[j] = E.element(rest % E.order());
      rest /= E.order();
    }
    bool zero = true;
    for (const auto& f : polys) {
      if (!E.is_zero(f.evaluate(pt))) {
        zero = false;
        break;
      }
    }
    if (zero) out.points.push_back(pt);
  }
  return out;
}

}  // namespace defectus
