#pragma once

#include <span>
#include <vector>

#include "defectus/poly.hpp"

namespace defectus {

/// Monomial orders used by the Gröbner engine.  Variable precedence is
/// always x_0 > x_1 > ... > x_{n-1}; in homogenized rings the homogenizing
/// variable is the last one, so it is the smallest.
struct MonomialOrder {
  enum class Kind {
    grevlex,
    /// Eliminates the last variable: compare its exponent first, then
    /// grevlex.  Used internally for ideal intersections.
    eliminate_last,
  };
  Kind kind = Kind::grevlex;
  /// Index of the eliminated variable (eliminate_last only).
  unsigned var = 0;

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder eliminate_last(unsigned var) { return {Kind::eliminate_last, var}; }

  /// <0, 0, >0 as a is smaller, equal, larger than b.
  int compare(const Monomial& a, const Monomial& b) const;

  friend bool operator==(MonomialOrder, MonomialOrder) = default;
};

/// Reduced, monic Gröbner basis of an ideal, generators sorted by
/// decreasing leading monomial.
class GroebnerBasis {
 public:
  GroebnerBasis(Field field, unsigned nvars, MonomialOrder order, std::vector<Poly> gens);

  const Field& field() const { return field_; }
  unsigned nvars() const { return nvars_; }
  MonomialOrder order() const { return order_; }
  const std::vector<Poly>& gens() const { return gens_; }
  /// Leading monomials under order(), aligned with gens().
  const std::vector<Monomial>& leading_monomials() const { return leading_; }

  bool is_unit() const;
  bool is_zero_ideal() const { return gens_.empty(); }
  bool contains(const Poly& f) const;

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b);

  nlohmann::json to_json() const;

 private:
  Field field_;
  unsigned nvars_;
  MonomialOrder order_;
  std::vector<Poly> gens_;
  std::vector<Monomial> leading_;
};

/// Buchberger with the normal selection strategy and both Buchberger
/// criteria; deterministic given the input list.
GroebnerBasis groebner(const Field& field, unsigned nvars, std::span<const Poly> gens,
                       MonomialOrder order = MonomialOrder::grevlex());
/// Convenience overload; `gens` must be nonempty.
GroebnerBasis groebner(std::span<const Poly> gens, MonomialOrder order = MonomialOrder::grevlex());

/// Remainder of f under full reduction by the basis.
Poly normal_form(const Poly& f, const GroebnerBasis& gb);

/// Basis of (I : f) = {g : g f in I}, via I ∩ (f) computed by elimination.
GroebnerBasis colon_ideal(const GroebnerBasis& gb, const Poly& f);

/// I ∩ J by elimination of an auxiliary variable.
GroebnerBasis intersect(const GroebnerBasis& I, const GroebnerBasis& J);

/// Krull dimension of the quotient ring (= dimension of the affine zero set
/// over the algebraic closure); -1 for the unit ideal.
int ideal_dimension(const GroebnerBasis& gb);

/// Dimension of the projective zero set of a homogeneous ideal; -1 if empty.
int projective_dimension(const GroebnerBasis& gb);

enum class Geometry { affine, projective };

/// Affine: V(I) empty over the closure iff I = (1).  Projective: empty iff the
/// affine cone has dimension <= 0.  Projective mode requires homogeneous
/// generators.
bool is_empty(const GroebnerBasis& gb, Geometry mode);

/// Hilbert function of R/in(I) at degree t: number of degree-t monomials
/// outside the leading-term ideal.
std::uint64_t hilbert_function(const GroebnerBasis& gb, unsigned t);

/// Degree (multiplicity) of a homogeneous ideal from its Hilbert polynomial;
/// 0 when the projective zero set is empty.
std::uint64_t hilbert_degree(const GroebnerBasis& gb);

/// Exact division; throws if g does not divide f.
Poly divide_exact(const Poly& f, const Poly& g);

}  // namespace defectus
