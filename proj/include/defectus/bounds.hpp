#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "defectus/poly.hpp"

namespace defectus {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct BoundInputs {
  unsigned r = 0;
  unsigned s = 0;
  std::uint64_t q = 0;
  std::vector<unsigned> d;

  /// 1 < s < r, q a prime power, |d| = s, every d_i >= 1.
  void validate() const;
  nlohmann::json to_json() const;
};

struct BoundReport {
  BoundInputs inputs;
  BigInt delta;  // d_1 ... d_s
  BigInt sigma;  // d_1 + ... + d_s - s
  BigInt dimF;   // sum C(d_i + r, r)
  BigInt N;      // C(r+1, s)
  /// All d_i >= 2; otherwise the fields below are left empty / zero.
  bool applicable = false;
  std::vector<Rational> C1;
  std::vector<Rational> C2;
  BigInt count_B1;
  Rational prob_B1;
  BigInt count_B2;
  Rational prob_B2;
  bool vacuous_B1 = false;
  bool vacuous_B2 = false;
  /// q above which the probability bounds drop below 1: 2 s σ δ and 2 s σ² δ.
  BigInt threshold_B1;
  BigInt threshold_B2;

  nlohmann::json to_json() const;
};

BoundReport derive(const BoundInputs& inputs);

/// Decimal rendering with `digits` significant digits.
std::string decimal(const Rational& x, int digits = 6);
std::string to_string(const Rational& x);

BigInt binomial(unsigned n, unsigned k);

/// |V(F_q)| <= degree * q^dim; zero when dim < 0.
BigInt point_count_bound(const BigInt& degree, int dim, std::uint64_t q);

/// Product of the degrees of the nonzero generators (a nonzero constant
/// makes the variety empty and the product 0).
BigInt bezout_number(std::span<const Poly> polys);

/// Degree and dimension used for the point-count check.
struct VarietyMeasure {
  int dim = -1;          // affine dimension
  BigInt degree;         // upper bound for the degree of V
  std::string source;    // "hilbert" or "bezout"
  BigInt hilbert_degree; // Hilbert degree of the homogenization when computed, else 0
};

/// For a complete intersection whose homogenization (to the actual degrees)
/// has no excess component at infinity, its Hilbert degree; otherwise the
/// Bézout number.  Both bound the degree of V from above.
VarietyMeasure measure_variety(const PolySystem& system);

struct PointSet {
  Field field;
  std::vector<std::vector<Fel>> points;
};

/// Default enumeration budget, overridable through DEFECTUS_BUDGET.
std::uint64_t enumeration_budget();

/// All zeros of the system in F_{q^k}^r by exhaustive scan.  Throws
/// BudgetExceeded when q^{k r} exceeds the budget.
PointSet enumerate_points(const PolySystem& system, unsigned k, std::uint64_t budget = enumeration_budget());

}  // namespace defectus
