#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "defectus/matrix.hpp"
#include "defectus/poly.hpp"

namespace defectus {

/// Macaulay matrix of r forms in r variables at the critical degree
/// D = sum(d_i - 1) + 1.  Columns are the degree-D monomials in descending
/// grevlex order; the row placed at a monomial's index is (m / x_i^{d_i}) F_i
/// where i is the first index with x_i^{d_i} | m.  With this layout the
/// monomial system (x_1^{d_1}, ..., x_r^{d_r}) gives the identity matrix.
struct MacaulayMatrix {
  std::vector<unsigned> degrees;
  unsigned critical_degree = 0;
  std::vector<Monomial> monomials;
  /// owner[k]: the i with monomials[k] in S_i.
  std::vector<unsigned> owner;
  Matrix numerator;
  /// Rows/columns of the non-reduced monomials (divisible by two or more
  /// of the x_i^{d_i}).
  std::vector<std::size_t> extraneous;
  Matrix denominator;
};

MacaulayMatrix macaulay_build(std::span<const Poly> system, std::span<const unsigned> degrees);

/// det(numerator) / det(denominator); nullopt when the denominator is
/// singular.  Normalized so Res(x_1^{d_1}, ..., x_r^{d_r}) = 1.
std::optional<Fel> macaulay_resultant(std::span<const Poly> system, std::span<const unsigned> degrees);

struct ResultantDecision {
  bool vanishes = false;
  enum class Path { direct, coordinate_change, groebner } path = Path::direct;
  unsigned coordinate_changes = 0;
};

/// True iff the forms share a projective zero over the algebraic closure.
/// A singular denominator triggers seeded random invertible coordinate
/// changes over F_{q^m} (q^m >= 2^20), then the Gröbner emptiness test.
ResultantDecision resultant_decide(std::span<const Poly> system, std::span<const unsigned> degrees,
                                   std::uint64_t seed, unsigned max_changes = 4);

inline bool resultant_vanishes(std::span<const Poly> system, std::span<const unsigned> degrees,
                               std::uint64_t seed) {
  return resultant_decide(system, degrees, seed).vanishes;
}

}  // namespace defectus
