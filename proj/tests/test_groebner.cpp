#include <gtest/gtest.h>

#include "defectus/groebner.hpp"
#include "support.hpp"

using namespace defectus;
using defectus::testing::c;
using defectus::testing::random_homogeneous;
using defectus::testing::random_poly;
using defectus::testing::x;

namespace {

GroebnerBasis gb(std::vector<Poly> g) { return groebner(g); }

// Every S-polynomial reduces to zero and the basis is reduced and monic.
void expect_reduced_basis(const GroebnerBasis& G) {
  const auto& gens = G.gens();
  const auto& lm = G.leading_monomials();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    EXPECT_EQ(gens[i].leading().coeff, G.field().one());
    for (const auto& t : gens[i].terms())
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (i != j) EXPECT_FALSE(lm[j].divides(t.mono));
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const Monomial l = lcm(lm[i], lm[j]);
      const Poly s = gens[i].times_monomial(l / lm[i], G.field().one()) -
                     gens[j].times_monomial(l / lm[j], G.field().one());
      EXPECT_TRUE(normal_form(s, G).is_zero());
    }
  }
}

}  // namespace

TEST(Groebner, Examples) {
  const Field F = Field::prime(7);
  const unsigned n = 3;
  EXPECT_EQ(gb({x(F, n, 1), x(F, n, 2)}).gens(), (std::vector<Poly>{x(F, n, 1), x(F, n, 2)}));
  const auto unit = gb({x(F, n, 1), x(F, n, 1) + c(F, n, 1)});
  EXPECT_TRUE(unit.is_unit());
  EXPECT_EQ(unit.gens(), std::vector<Poly>{c(F, n, 1)});
  const auto m = gb({x(F, n, 1).pow(2), x(F, n, 1) * x(F, n, 2)});
  EXPECT_EQ(m.gens(), (std::vector<Poly>{x(F, n, 1).pow(2), x(F, n, 1) * x(F, n, 2)}));
  EXPECT_TRUE(groebner(F, n, std::vector<Poly>{}).is_zero_ideal());
}

TEST(Groebner, NormalFormExamples) {
  const Field F = Field::prime(7);
  const auto G = gb({x(F, 3, 1), x(F, 3, 2)});
  EXPECT_TRUE(normal_form(x(F, 3, 1), G).is_zero());
  EXPECT_EQ(normal_form(x(F, 3, 1) + c(F, 3, 1), G), c(F, 3, 1));
}

TEST(Groebner, RandomBasesAreReducedAndIdempotent) {
  for (std::uint64_t p : {2u, 3u, 101u}) {
    const Field F = Field::prime(p);
    auto rng = make_stream(p, 7);
    for (int it = 0; it < 30; ++it) {
      std::vector<Poly> gens;
      const unsigned k = 2 + static_cast<unsigned>(uniform_below(rng, 2));
      for (unsigned i = 0; i < k; ++i) gens.push_back(random_poly(F, 3, 2, rng, 0.4));
      const auto G = groebner(F, 3, gens);
      expect_reduced_basis(G);
      for (const auto& g : gens) EXPECT_TRUE(G.contains(g));
      const Poly f = random_poly(F, 3, 3, rng);
      const Poly r = normal_form(f, G);
      EXPECT_EQ(normal_form(r, G), r);
      EXPECT_TRUE(G.contains(f - r));
      // order of generators does not matter
      std::vector<Poly> rev(gens.rbegin(), gens.rend());
      EXPECT_EQ(groebner(F, 3, rev), G);
    }
  }
}

TEST(Groebner, ColonExamples) {
  const Field F = Field::prime(5);
  const unsigned n = 3;
  const auto I = gb({x(F, n, 1).pow(2), x(F, n, 1) * x(F, n, 2)});
  EXPECT_EQ(colon_ideal(I, x(F, n, 1)), gb({x(F, n, 1), x(F, n, 2)}));
  const auto J = gb({x(F, n, 1)});
  EXPECT_EQ(colon_ideal(J, x(F, n, 2)), J);
  EXPECT_THROW(colon_ideal(J, Poly(F, n)), InvalidArgument);
}

TEST(Groebner, ColonByMemberIsUnit) {
  const Field F = Field::prime(7);
  auto rng = make_stream(21, 0);
  for (int it = 0; it < 20; ++it) {
    std::vector<Poly> gens{random_poly(F, 3, 2, rng), random_poly(F, 3, 2, rng)};
    const auto I = groebner(F, 3, gens);
    if (I.is_zero_ideal()) continue;
    const Poly f = gens[0] * random_poly(F, 3, 1, rng) + gens[1];
    if (f.is_zero()) continue;
    EXPECT_TRUE(colon_ideal(I, f).is_unit());
  }
}

TEST(Groebner, ColonDefinitionHolds) {
  // g in (I : f) iff g f in I, checked on the computed generators and on
  // random non-members
  const Field F = Field::prime(5);
  auto rng = make_stream(22, 0);
  for (int it = 0; it < 15; ++it) {
    const Poly a = random_poly(F, 3, 1, rng, 0.7), b = random_poly(F, 3, 2, rng, 0.5);
    const Poly f = random_poly(F, 3, 1, rng, 0.7);
    if (a.is_zero() || b.is_zero() || f.is_zero()) continue;
    const auto I = groebner(F, 3, std::vector<Poly>{a * f, b});
    const auto Q = colon_ideal(I, f);
    for (const auto& g : Q.gens()) EXPECT_TRUE(I.contains(g * f));
    EXPECT_TRUE(Q.contains(a));
    for (const auto& g : I.gens()) EXPECT_TRUE(Q.contains(g));
  }
}

TEST(Groebner, IntersectionOfMonomialIdeals) {
  const Field F = Field::prime(3);
  const auto I = gb({x(F, 3, 1), x(F, 3, 2)});
  const auto J = gb({x(F, 3, 3)});
  EXPECT_EQ(intersect(I, J), gb({x(F, 3, 1) * x(F, 3, 3), x(F, 3, 2) * x(F, 3, 3)}));
}

TEST(Groebner, DimensionExamples) {
  const Field F = Field::prime(7);
  EXPECT_EQ(ideal_dimension(gb({x(F, 3, 1), x(F, 3, 2)})), 1);
  EXPECT_EQ(ideal_dimension(gb({c(F, 3, 1)})), -1);
  EXPECT_EQ(ideal_dimension(gb({x(F, 3, 1) * x(F, 3, 2), x(F, 3, 1) * x(F, 3, 3)})), 2);
  EXPECT_EQ(ideal_dimension(groebner(F, 3, std::vector<Poly>{})), 3);
}

TEST(Groebner, EmptinessExamples) {
  const Field F = Field::prime(7);
  EXPECT_TRUE(is_empty(gb({x(F, 3, 1).pow(2), x(F, 3, 1).pow(2) + c(F, 3, 1)}), Geometry::affine));
  const unsigned n = 4;
  const auto irrelevant = gb({x(F, n, 1), x(F, n, 2), x(F, n, 3), x(F, n, 4)});
  EXPECT_TRUE(is_empty(irrelevant, Geometry::projective));
  EXPECT_EQ(projective_dimension(irrelevant), -1);
  const auto line = gb({x(F, n, 1), x(F, n, 2)});
  EXPECT_FALSE(is_empty(line, Geometry::projective));
  EXPECT_EQ(projective_dimension(line), 1);
  EXPECT_THROW(projective_dimension(gb({x(F, n, 1) + c(F, n, 1)})), InvalidArgument);
  EXPECT_THROW(is_empty(gb({x(F, n, 1) + c(F, n, 1)}), Geometry::projective), InvalidArgument);
}

TEST(Groebner, ProjectiveDimensionOfRandomHomogeneousIdeals) {
  const Field F = Field::prime(101);
  auto rng = make_stream(31, 0);
  for (int it = 0; it < 20; ++it) {
    const unsigned k = 1 + static_cast<unsigned>(uniform_below(rng, 4));
    std::vector<Poly> gens;
    for (unsigned i = 0; i < k; ++i) gens.push_back(random_homogeneous(F, 4, 2, rng, 0.8));
    const auto G = groebner(F, 4, gens);
    const int cone = ideal_dimension(G);
    const int proj = projective_dimension(G);
    EXPECT_EQ(proj, cone <= 0 ? -1 : cone - 1);
    // generic dense quadrics cut a complete intersection
    EXPECT_EQ(proj, 3 - static_cast<int>(std::min(k, 4u)));
  }
}

TEST(Groebner, HilbertDegreeIsBezoutForCompleteIntersections) {
  const Field F = Field::prime(101);
  auto rng = make_stream(41, 0);
  for (int it = 0; it < 10; ++it) {
    const unsigned d1 = 1 + static_cast<unsigned>(uniform_below(rng, 3));
    const unsigned d2 = 1 + static_cast<unsigned>(uniform_below(rng, 3));
    std::vector<Poly> gens{random_homogeneous(F, 4, d1, rng, 1.0), random_homogeneous(F, 4, d2, rng, 1.0)};
    const auto G = groebner(F, 4, gens);
    EXPECT_EQ(hilbert_degree(G), d1 * d2);
  }
  // a double line has degree 2, the irrelevant ideal degree 0
  const unsigned n = 3;
  EXPECT_EQ(hilbert_degree(gb({x(F, n, 1).pow(2), x(F, n, 2)})), 2u);
  EXPECT_EQ(hilbert_degree(gb({x(F, n, 1), x(F, n, 2), x(F, n, 3)})), 0u);
  EXPECT_EQ(hilbert_function(gb({x(F, n, 1)}), 2), 3u);
}

TEST(Groebner, ExtensionFieldBasis) {
  const Field F = Field::make(2, 3, 1);
  auto rng = make_stream(51, 0);
  for (int it = 0; it < 10; ++it) {
    std::vector<Poly> gens{random_poly(F, 3, 2, rng), random_poly(F, 3, 2, rng), random_poly(F, 3, 1, rng)};
    expect_reduced_basis(groebner(F, 3, gens));
  }
}

TEST(Groebner, ColonMatchesBruteForceOverF2) {
  // every g of degree <= 3 in two variables: g f in I  <=>  g in (I : f)
  const Field F = Field::prime(2);
  const unsigned n = 2;
  const auto monos = monomials_upto(3, n);
  auto rng = make_stream(61, 0);
  for (int it = 0; it < 25; ++it) {
    std::vector<Poly> gens{random_poly(F, n, 2, rng), random_poly(F, n, 2, rng)};
    const Poly f = random_poly(F, n, 1, rng, 0.7);
    if (f.is_zero()) continue;
    const auto I = groebner(F, n, gens);
    const auto Q = colon_ideal(I, f);
    for (std::uint64_t mask = 0; mask < (1ULL << monos.size()); ++mask) {
      std::vector<Term> terms;
      for (std::size_t k = 0; k < monos.size(); ++k)
        if (mask >> k & 1) terms.push_back({monos[k], F.one()});
      const Poly g = Poly::from_terms(F, n, terms);
      ASSERT_EQ(I.contains(g * f), Q.contains(g));
    }
    // nonzerodivisor iff the colon is I itself
    bool zero_divisor_witness = false;
    for (std::uint64_t mask = 1; mask < (1ULL << monos.size()) && !zero_divisor_witness; ++mask) {
      std::vector<Term> terms;
      for (std::size_t k = 0; k < monos.size(); ++k)
        if (mask >> k & 1) terms.push_back({monos[k], F.one()});
      const Poly g = Poly::from_terms(F, n, terms);
      zero_divisor_witness = !I.contains(g) && I.contains(g * f);
    }
    if (zero_divisor_witness) EXPECT_FALSE(Q == I);
    if (!(Q == I)) {
      bool low_degree = true;
      for (const auto& g : Q.gens()) low_degree &= g.degree() <= 3;
      if (low_degree) EXPECT_TRUE(zero_divisor_witness);
    }
  }
}

TEST(Groebner, DimensionIsInvariantUnderFieldExtension) {
  const Field F = Field::prime(3);
  const Field E = F.extension(2, 0);
  auto rng = make_stream(71, 0);
  for (int it = 0; it < 30; ++it) {
    std::vector<Poly> gens{random_poly(F, 3, 2, rng, 0.4), random_poly(F, 3, 2, rng, 0.4)};
    std::vector<Poly> lifted;
    for (const auto& g : gens) lifted.push_back(g.over(E));
    EXPECT_EQ(ideal_dimension(groebner(F, 3, gens)), ideal_dimension(groebner(E, 3, lifted)));
  }
}

TEST(Groebner, RepeatedRunsAreByteIdentical) {
  const Field F = Field::prime(101);
  auto rng = make_stream(81, 0);
  std::vector<Poly> gens{random_poly(F, 4, 2, rng), random_poly(F, 4, 2, rng), random_poly(F, 4, 2, rng)};
  EXPECT_EQ(groebner(F, 4, gens).to_json().dump(), groebner(F, 4, gens).to_json().dump());
}
