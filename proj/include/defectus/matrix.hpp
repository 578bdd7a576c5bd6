#pragma once

#include <vector>

#include "defectus/field.hpp"

namespace defectus {

/// Dense row-major matrix over a finite field.
using Matrix = std::vector<std::vector<Fel>>;

/// Determinant by Gaussian elimination with row swaps (exact over F_q).
/// The empty matrix has determinant 1.
Fel determinant(const Field& F, Matrix m);

int rank(const Field& F, Matrix m);

}  // namespace defectus
