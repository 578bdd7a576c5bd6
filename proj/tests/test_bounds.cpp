#include <gtest/gtest.h>

#include <cstdlib>

#include "defectus/bounds.hpp"
#include "defectus/groebner.hpp"
#include "support.hpp"

using namespace defectus;
using defectus::testing::c;
using defectus::testing::random_poly;
using defectus::testing::x;

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t v = 1;
  while (e--) v *= b;
  return v;
}

}  // namespace

TEST(Bounds, QuadricPairInThreeSpace) {
  for (std::uint64_t q : {2u, 3u, 4u, 101u}) {
    const auto rep = derive({3, 2, q, {2, 2}});
    EXPECT_EQ(rep.delta, 4);
    EXPECT_EQ(rep.sigma, 2);
    EXPECT_EQ(rep.dimF, 20);
    EXPECT_EQ(rep.N, 6);
    EXPECT_EQ(rep.prob_B1, Rational(32 * 32 * 32, ipow(q, 3)));
    EXPECT_EQ(rep.prob_B2, Rational(64 * 64, q * q));
  }
  const auto rep = derive({3, 2, 101, {2, 2}});
  EXPECT_EQ(rep.prob_B1, Rational(32768, 1030301));
  EXPECT_EQ(rep.prob_B2, Rational(4096, 10201));
  EXPECT_FALSE(rep.vacuous_B1);
  EXPECT_FALSE(rep.vacuous_B2);
  EXPECT_EQ(rep.threshold_B1, 32);
  EXPECT_EQ(rep.threshold_B2, 64);
  EXPECT_EQ(to_string(rep.prob_B1), "32768/1030301");
  EXPECT_EQ(decimal(rep.prob_B1), "0.0318043");
  EXPECT_EQ(decimal(rep.prob_B2), "0.401529");
}

TEST(Bounds, DegreeConstants) {
  const auto rep = derive({3, 2, 101, {2, 2}});
  ASSERT_EQ(rep.C1.size(), 2u);
  EXPECT_EQ(rep.C1[0], 12);
  EXPECT_EQ(rep.C2[0], 24);
}

TEST(Bounds, VacuousAtSmallQ) {
  const auto rep = derive({3, 2, 2, {2, 2}});
  EXPECT_TRUE(rep.vacuous_B1);
  EXPECT_TRUE(rep.vacuous_B2);
  EXPECT_EQ(rep.prob_B1, 4096);
}

TEST(Bounds, InapplicableWithLinearCaps) {
  const auto rep = derive({3, 2, 2, {1, 1}});
  EXPECT_FALSE(rep.applicable);
  EXPECT_EQ(rep.delta, 1);
  EXPECT_EQ(rep.sigma, 0);
  EXPECT_EQ(rep.dimF, 8);
  EXPECT_EQ(rep.to_json()["applicable"], false);
}

TEST(Bounds, ValidationErrors) {
  EXPECT_THROW(derive({3, 1, 5, {2}}), InvalidArgument);
  EXPECT_THROW(derive({3, 3, 5, {2, 2, 2}}), InvalidArgument);
  EXPECT_THROW(derive({3, 2, 6, {2, 2}}), InvalidArgument);
  EXPECT_THROW(derive({3, 2, 5, {2}}), InvalidArgument);
  EXPECT_THROW(derive({3, 2, 5, {0, 2}}), InvalidArgument);
}

TEST(Bounds, CountOverSpaceSizeEqualsProbability) {
  for (unsigned r = 3; r <= 6; ++r)
    for (unsigned s = 2; s < r; ++s)
      for (std::uint64_t q : {2u, 7u, 9u, 101u}) {
        std::vector<unsigned> d;
        for (unsigned i = 0; i < s; ++i) d.push_back(2 + (i + r) % 3);
        const auto rep = derive({r, s, q, d});
        const BigInt space = boost::multiprecision::pow(BigInt(q), rep.dimF.convert_to<unsigned>());
        EXPECT_EQ(Rational(rep.count_B1, space), rep.prob_B1);
        EXPECT_EQ(Rational(rep.count_B2, space), rep.prob_B2);
        EXPECT_EQ(rep.vacuous_B1, rep.prob_B1 >= 1);
        // brute-force the structural quantities
        std::uint64_t dimF = 0;
        for (auto di : d) dimF += monomials_upto(di, r).size();
        EXPECT_EQ(rep.dimF, dimF);
        EXPECT_EQ(rep.N, column_subsets(r + 1, s).size());
      }
}

TEST(Bounds, FullDegreeCoefficientCount) {
  for (unsigned r = 3; r <= 8; ++r)
    for (unsigned s = 2; s < r; ++s)
      for (unsigned d = 2; d <= 5; ++d) EXPECT_GE(binomial(d + r - 1, r - 1), r - s + 2);
}

TEST(Bounds, PointCountBoundExamples) {
  EXPECT_EQ(point_count_bound(2, 1, 3), 6);
  EXPECT_EQ(point_count_bound(1, 0, 7), 1);
  EXPECT_EQ(point_count_bound(0, 2, 7), 0);
  const Field F = Field::prime(3);
  PolySystem sys(3, {2, 1}, {x(F, 3, 1) * x(F, 3, 2), x(F, 3, 3)});
  EXPECT_EQ(enumerate_points(sys, 1).points.size(), 5u);
  const auto m = measure_variety(sys);
  EXPECT_EQ(m.dim, 1);
  EXPECT_EQ(m.degree, 2);
}

TEST(Bounds, EnumeratePointsExamples) {
  const Field F2 = Field::prime(2);
  PolySystem lines(3, {1, 1}, {x(F2, 3, 1), x(F2, 3, 2)});
  const auto pts = enumerate_points(lines, 1).points;
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0], (std::vector<Fel>{F2.zero(), F2.zero(), F2.zero()}));
  EXPECT_EQ(pts[1], (std::vector<Fel>{F2.zero(), F2.zero(), F2.one()}));

  const Field F3 = Field::prime(3);
  PolySystem circle(2, {2}, {x(F3, 2, 1).pow(2) + c(F3, 2, 1)});
  EXPECT_EQ(enumerate_points(circle, 1).points.size(), 0u);
  EXPECT_GT(enumerate_points(circle, 2).points.size(), 0u);

  EXPECT_THROW(enumerate_points(lines, 1, 4), BudgetExceeded);
}

TEST(Bounds, EnumeratedPointsAreZeros) {
  const Field F = Field::prime(3);
  auto rng = make_stream(5, 0);
  for (int it = 0; it < 30; ++it) {
    PolySystem sys(3, {2, 2}, {random_poly(F, 3, 2, rng, 0.3), random_poly(F, 3, 2, rng, 0.3)});
    const auto ps = enumerate_points(sys, 1);
    std::size_t brute = 0;
    for (std::uint64_t i = 0; i < 27; ++i) {
      const std::vector<Fel> pt{F.element(i / 9), F.element(i / 3 % 3), F.element(i % 3)};
      bool z = true;
      for (const auto& f : sys.polys()) z = z && f.evaluate(pt).v == 0;
      brute += z;
    }
    EXPECT_EQ(ps.points.size(), brute);
    for (const auto& p : ps.points)
      for (const auto& f : sys.polys()) EXPECT_EQ(f.evaluate(p), F.zero());
  }
}

TEST(Bounds, MeasuredDegreeNeverExceedsBezout) {
  for (std::uint64_t p : {2u, 3u, 5u}) {
    const Field F = Field::prime(p);
    auto rng = make_stream(6, p);
    for (int it = 0; it < 40; ++it) {
      PolySystem sys(3, {2, 2}, {random_poly(F, 3, 2, rng, 0.5), random_poly(F, 3, 2, rng, 0.5)});
      const auto m = measure_variety(sys);
      if (m.source == "hilbert") EXPECT_LE(m.degree, bezout_number(sys.polys()));
    }
  }
}

TEST(Bounds, BudgetFromEnvironment) {
  ::setenv("DEFECTUS_BUDGET", "1234", 1);
  EXPECT_EQ(enumeration_budget(), 1234u);
  ::setenv("DEFECTUS_BUDGET", "junk", 1);
  EXPECT_EQ(enumeration_budget(), 1ull << 22);
  ::unsetenv("DEFECTUS_BUDGET");
}

TEST(Bounds, JsonIsExact) {
  const auto j = derive({3, 2, 101, {2, 2}}).to_json();
  EXPECT_EQ(j["prob_B1"], "32768/1030301");
  EXPECT_EQ(j["prob_B2"], "4096/10201");
  EXPECT_EQ(j["delta"], "4");
  EXPECT_EQ(j["C1"][0], "12");
}
