#include "defectus/matrix.hpp"

#include <utility>

namespace defectus {

namespace {

// Row-echelon form in place; returns the rank and whether an odd number of
// swaps happened.  Stops at the first missing pivot when `square_only`.
std::pair<int, bool> eliminate(const Field& F, Matrix& m, bool square_only) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  bool odd = false;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c].v == 0) ++piv;
    if (piv == rows) {
      if (square_only) return {-1, odd};
      continue;
    }
    if (piv != r) {
      std::swap(m[piv], m[r]);
      odd = !odd;
    }
    const Fel inv = F.inv(m[r][c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].v == 0) continue;
      const Fel f = F.mul(m[i][c], inv);
      for (std::size_t j = c; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[r][j]));
    }
    ++r;
  }
  return {static_cast<int>(r), odd};
}

}  // namespace

Fel determinant(const Field& F, Matrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw InvalidArgument("determinant of a non-square matrix");
  const auto [rk, odd] = eliminate(F, m, true);
  if (rk < 0) return F.zero();
  Fel d = F.one();
  for (std::size_t i = 0; i < n; ++i) d = F.mul(d, m[i][i]);
  return odd ? F.neg(d) : d;
}

int rank(const Field& F, Matrix m) { return eliminate(F, m, false).first; }

}  // namespace defectus
