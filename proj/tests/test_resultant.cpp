#include <gtest/gtest.h>

#include "defectus/groebner.hpp"
#include "defectus/resultant.hpp"
#include "support.hpp"

using namespace defectus;
using defectus::testing::random_homogeneous;
using defectus::testing::x;

namespace {

Fel res(const std::vector<Poly>& sys, const std::vector<unsigned>& d) {
  auto v = macaulay_resultant(sys, d);
  EXPECT_TRUE(v.has_value());
  return v.value_or(Fel{0});
}

// Sylvester determinant of binary forms f (degree a) and g (degree b) in
// variables (X1, X2); coefficients listed by descending power of X1.
Fel sylvester(const Field& F, const Poly& f, unsigned a, const Poly& g, unsigned b) {
  auto coeffs = [&](const Poly& p, unsigned d) {
    std::vector<Fel> c(d + 1, F.zero());
    for (const auto& t : p.terms()) c[d - t.mono[0]] = t.coeff;
    return c;
  };
  const auto cf = coeffs(f, a), cg = coeffs(g, b);
  const unsigned n = a + b;
  Matrix S(n, std::vector<Fel>(n, F.zero()));
  for (unsigned i = 0; i < b; ++i)
    for (unsigned j = 0; j <= a; ++j) S[i][i + j] = cf[j];
  for (unsigned i = 0; i < a; ++i)
    for (unsigned j = 0; j <= b; ++j) S[b + i][i + j] = cg[j];
  return determinant(F, S);
}

}  // namespace

TEST(Resultant, MonomialSystemIsOne) {
  const Field F = Field::prime(101);
  for (unsigned r = 2; r <= 4; ++r) {
    for (unsigned d = 1; d <= 3; ++d) {
      std::vector<Poly> sys;
      std::vector<unsigned> deg;
      for (unsigned i = 0; i < r; ++i) {
        const unsigned di = 1 + (d + i) % 3;
        sys.push_back(Poly::variable(F, r, i).pow(di));
        deg.push_back(di);
      }
      EXPECT_EQ(res(sys, deg), F.one());
    }
  }
}

TEST(Resultant, MatrixShape) {
  const Field F = Field::prime(7);
  const unsigned r = 3;
  std::vector<Poly> sys{x(F, r, 1).pow(2), x(F, r, 2).pow(3), x(F, r, 3)};
  const auto M = macaulay_build(sys, std::vector<unsigned>{2, 3, 1});
  EXPECT_EQ(M.critical_degree, 4u);
  EXPECT_EQ(M.numerator.size(), 15u);  // C(4+2, 2)
  for (const auto& row : M.numerator) EXPECT_EQ(row.size(), 15u);
}

TEST(Resultant, LinearFormsGiveTheDeterminant) {
  const Field F = Field::prime(101);
  auto rng = make_stream(1, 0);
  for (int it = 0; it < 50; ++it) {
    const Fel a = uniform_element(F, rng), b = uniform_element(F, rng), c = uniform_element(F, rng),
              d = uniform_element(F, rng);
    const Poly f = x(F, 2, 1).scaled(a) + x(F, 2, 2).scaled(b);
    const Poly g = x(F, 2, 1).scaled(c) + x(F, 2, 2).scaled(d);
    EXPECT_EQ(res({f, g}, {1, 1}), F.sub(F.mul(a, d), F.mul(b, c)));
  }
}

TEST(Resultant, BinaryFormsMatchSylvesterUpToSign) {
  const Field F = Field::prime(101);
  auto rng = make_stream(2, 0);
  for (int it = 0; it < 60; ++it) {
    const unsigned a = 1 + static_cast<unsigned>(uniform_below(rng, 4));
    const unsigned b = 1 + static_cast<unsigned>(uniform_below(rng, 4));
    const Poly f = random_homogeneous(F, 2, a, rng, 1.0), g = random_homogeneous(F, 2, b, rng, 1.0);
    const auto m = macaulay_resultant(std::vector<Poly>{f, g}, std::vector<unsigned>{a, b});
    if (!m) continue;
    const Fel s = sylvester(F, f, a, g, b);
    EXPECT_TRUE(*m == s || *m == F.neg(s));
  }
}

TEST(Resultant, ScalingMultipliesByPowerOfLambda) {
  const Field F = Field::prime(101);
  auto rng = make_stream(3, 0);
  int probes = 0;
  while (probes < 30) {
    std::vector<unsigned> deg{1 + static_cast<unsigned>(uniform_below(rng, 3)),
                              1 + static_cast<unsigned>(uniform_below(rng, 3)),
                              1 + static_cast<unsigned>(uniform_below(rng, 3))};
    std::vector<Poly> sys;
    for (auto d : deg) sys.push_back(random_homogeneous(F, 3, d, rng, 1.0));
    const auto base = macaulay_resultant(sys, deg);
    if (!base || base->v == 0) continue;
    const unsigned i = static_cast<unsigned>(uniform_below(rng, 3));
    const Fel lambda = uniform_nonzero(F, rng);
    auto scaled = sys;
    scaled[i] = scaled[i].scaled(lambda);
    const unsigned delta = deg[0] * deg[1] * deg[2];
    EXPECT_EQ(res(scaled, deg), F.mul(F.pow(lambda, delta / deg[i]), *base));
    ++probes;
  }
}

TEST(Resultant, VanishingExamples) {
  const Field F = Field::prime(101);
  const unsigned r = 3;
  EXPECT_FALSE(resultant_vanishes(std::vector<Poly>{x(F, 2, 1), x(F, 2, 2)}, std::vector<unsigned>{1, 1}, 0));
  const std::vector<Poly> prods{x(F, r, 1) * x(F, r, 2), x(F, r, 1) * x(F, r, 3), x(F, r, 2) * x(F, r, 3)};
  EXPECT_TRUE(resultant_vanishes(prods, std::vector<unsigned>{2, 2, 2}, 0));
  EXPECT_FALSE(is_empty(groebner(prods), Geometry::projective));
}

TEST(Resultant, AgreesWithGroebnerIncludingDegenerateDenominators) {
  const Field F = Field::prime(101);
  auto rng = make_stream(4, 0);
  int changed = 0;
  for (int it = 0; it < 80; ++it) {
    std::vector<unsigned> deg;
    std::vector<Poly> sys;
    const double density = it % 2 ? 1.0 : 0.3;  // sparse forms hit singular denominators
    for (unsigned i = 0; i < 3; ++i) {
      deg.push_back(1 + static_cast<unsigned>(uniform_below(rng, 3)));
      sys.push_back(random_homogeneous(F, 3, deg.back(), rng, density));
    }
    const auto d = resultant_decide(sys, deg, static_cast<std::uint64_t>(it));
    if (d.path != ResultantDecision::Path::direct) ++changed;
    EXPECT_EQ(d.vanishes, !is_empty(groebner(F, 3, sys), Geometry::projective)) << "case " << it;
  }
  EXPECT_GT(changed, 0);
}

TEST(Resultant, RejectsMalformedInput) {
  const Field F = Field::prime(7);
  EXPECT_THROW(macaulay_build(std::vector<Poly>{x(F, 3, 1), x(F, 3, 2)}, std::vector<unsigned>{1, 1}),
               InvalidArgument);
  EXPECT_THROW(macaulay_build(std::vector<Poly>{x(F, 2, 1) + x(F, 2, 2).pow(2), x(F, 2, 2)},
                              std::vector<unsigned>{2, 1}),
               InvalidArgument);
}
