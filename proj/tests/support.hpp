#pragma once

#include <random>
#include <vector>

#include "defectus/poly.hpp"
#include "defectus/random.hpp"

namespace defectus::testing {

// Random polynomial of degree <= d with roughly `density` of the monomials
// present.
inline Poly random_poly(const Field& F, unsigned nvars, unsigned d, std::mt19937_64& rng, double density = 0.5) {
  std::vector<Term> terms;
  for (const auto& m : monomials_upto(d, nvars)) {
    if (static_cast<double>(uniform_below(rng, 1000)) < density * 1000.0) terms.push_back({m, uniform_element(F, rng)});
  }
  return Poly::from_terms(F, nvars, std::move(terms));
}

inline Poly random_homogeneous(const Field& F, unsigned nvars, unsigned d, std::mt19937_64& rng,
                               double density = 0.5) {
  std::vector<Term> terms;
  for (const auto& m : monomials_of_degree(d, nvars)) {
    if (static_cast<double>(uniform_below(rng, 1000)) < density * 1000.0) terms.push_back({m, uniform_element(F, rng)});
  }
  return Poly::from_terms(F, nvars, std::move(terms));
}

inline std::vector<Fel> random_point(const Field& F, unsigned n, std::mt19937_64& rng) {
  std::vector<Fel> x(n);
  for (auto& v : x) v = uniform_element(F, rng);
  return x;
}

// X_i with the 1-based naming used in the tests: x(F, n, 1) is variable 0.
inline Poly x(const Field& F, unsigned n, unsigned i) { return Poly::variable(F, n, i - 1); }

inline Poly c(const Field& F, unsigned n, std::int64_t v) { return Poly::constant(F, n, F.from_int(v)); }

}  // namespace defectus::testing
