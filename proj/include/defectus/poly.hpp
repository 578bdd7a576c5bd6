#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "defectus/field.hpp"

namespace defectus {

/// Maximum number of variables in any ring (affine ring, homogenizing
/// variable and one elimination variable must fit).
inline constexpr unsigned kMaxVars = 16;

/// Degree of the zero polynomial; below every integer degree.
inline constexpr int kNegInf = std::numeric_limits<int>::min();

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::span<const unsigned> exps);

  static Monomial variable(unsigned i, unsigned power = 1);

  unsigned operator[](unsigned i) const { return exps_[i]; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }
  /// Bit i set iff variable i occurs.
  std::uint32_t support() const { return support_; }

  void set(unsigned i, unsigned e);

  bool divides(const Monomial& other) const;
  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool coprime(const Monomial& a, const Monomial& b) { return (a.support_ & b.support_) == 0; }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

  /// Graded reverse lexicographic comparison with X_1 > X_2 > ... (variable 0
  /// largest): returns <0, 0, >0.
  friend int grevlex_cmp(const Monomial& a, const Monomial& b);

  std::vector<unsigned> exponents(unsigned nvars) const;

 private:
  std::array<std::uint16_t, kMaxVars> exps_{};
  std::uint32_t degree_ = 0;
  std::uint32_t support_ = 0;
};

struct Term {
  Monomial mono;
  Fel coeff;
};

/// Sparse multivariate polynomial over a finite field.
///
/// Terms are kept in strictly descending grevlex order with nonzero
/// coefficients, so equal polynomials have identical term lists and
/// serialize to identical bytes.
class Poly {
 public:
  Poly(Field field, unsigned nvars);

  static Poly constant(Field field, unsigned nvars, Fel c);
  static Poly variable(Field field, unsigned nvars, unsigned i);
  static Poly monomial(Field field, unsigned nvars, Monomial m, Fel c);
  /// Builds from arbitrary terms (any order, duplicates summed, zeros dropped).
  static Poly from_terms(Field field, unsigned nvars, std::vector<Term> terms);

  const Field& field() const { return field_; }
  unsigned nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  /// Total degree, kNegInf for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  /// Leading term under grevlex; requires nonzero.
  const Term& leading() const { return terms_.front(); }
  Fel coefficient(const Monomial& m) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly scaled(Fel c) const;
  Poly times_monomial(const Monomial& m, Fel c) const;
  Poly pow(unsigned e) const;
  /// Divides by the leading coefficient.
  Poly monic() const;

  friend bool operator==(const Poly& a, const Poly& b);

  Fel evaluate(std::span<const Fel> point) const;
  /// Formal partial derivative with respect to variable i.
  Poly derivative(unsigned i) const;
  /// Substitutes the constant c for variable i (the variable stays in the ring).
  Poly substitute(unsigned i, Fel c) const;
  /// Same polynomial over a ring with more variables (new ones appended).
  Poly with_nvars(unsigned n) const;
  /// Drops the last variable; requires it not to occur.
  Poly drop_last_variable() const;
  /// Reinterprets coefficients in an extension field of the current field.
  Poly over(const Field& extension) const;
  /// f(g_0, ..., g_{n-1}); all images share one ring.
  Poly compose(std::span<const Poly> images) const;
  /// Homogeneous component of the given degree.
  Poly homogeneous_component(unsigned d) const;

  nlohmann::json to_json() const;
  static Poly from_json(const Field& field, const nlohmann::json& j);
  std::string to_string() const;

 private:
  void check_compatible(const Poly& other) const;

  Field field_;
  unsigned nvars_;
  std::vector<Term> terms_;
};

/// Homogenizes to degree `cap` in r+1 variables; the homogenizing variable
/// X_0 is appended as the last variable (index r), which makes it the
/// smallest variable under grevlex.
Poly homogenize(const Poly& f, unsigned cap);
/// Sets the last variable to 1 and drops it.
Poly dehomogenize(const Poly& f);
/// Degree-`cap` homogeneous component (zero when deg f < cap).
Poly initial_form(const Poly& f, unsigned cap);

/// m x m minor of the Jacobian of `polys` taken on the given columns, in the
/// given column order.
Poly jacobian_minor(std::span<const Poly> polys, std::span<const unsigned> cols);
/// All m x m minors of the m x n Jacobian, column subsets in lexicographic
/// order of variable index.
std::vector<Poly> jacobian_minors(std::span<const Poly> polys);
/// Column subsets used by jacobian_minors, same order.
std::vector<std::vector<unsigned>> column_subsets(unsigned n, unsigned m);

/// Number of monomials of degree <= d in n variables, C(d+n, n).
std::uint64_t monomial_count_upto(unsigned d, unsigned n);
/// Monomials of degree <= d in n variables, descending grevlex.
std::vector<Monomial> monomials_upto(unsigned d, unsigned n);
/// Monomials of degree exactly d in n variables, descending grevlex.
std::vector<Monomial> monomials_of_degree(unsigned d, unsigned n);

/// Ordered s-tuple (F_1, ..., F_s) in r variables with degree caps d_i.
class PolySystem {
 public:
  PolySystem(unsigned r, std::vector<unsigned> caps, std::vector<Poly> polys);

  unsigned r() const { return r_; }
  unsigned s() const { return static_cast<unsigned>(polys_.size()); }
  const std::vector<unsigned>& caps() const { return caps_; }
  const std::vector<Poly>& polys() const { return polys_; }
  const Poly& operator[](unsigned i) const { return polys_[i]; }
  const Field& field() const { return polys_.front().field(); }

  /// deg F_i == d_i.
  bool degree_full(unsigned i) const;
  bool all_degrees_full() const;
  /// (F_1^h, ..., F_s^h) in r+1 variables.
  std::vector<Poly> homogenized() const;
  /// (F_1^in, ..., F_s^in).
  std::vector<Poly> initial_forms() const;

  nlohmann::json to_json() const;
  /// Accepts {"polys": [...]} or a bare array of polynomials.
  static PolySystem from_json(const Field& field, unsigned r, std::vector<unsigned> caps, const nlohmann::json& j);

 private:
  unsigned r_;
  std::vector<unsigned> caps_;
  std::vector<Poly> polys_;
};

}  // namespace defectus
