#include <gtest/gtest.h>

#include "defectus/field.hpp"
#include "defectus/random.hpp"

using namespace defectus;

TEST(Field, PrimeFieldArithmetic) {
  const Field F = Field::prime(7);
  EXPECT_EQ(F.order(), 7u);
  EXPECT_EQ(F.add(F.from_int(3), F.from_int(5)), F.from_int(1));
  EXPECT_EQ(F.mul(F.from_int(3), F.from_int(5)), F.from_int(1));
  EXPECT_EQ(F.inv(F.from_int(3)), F.from_int(5));
  for (std::uint64_t a = 1; a < 7; ++a) EXPECT_EQ(F.mul(F.inv(F.element(a)), F.element(a)), F.one());
  EXPECT_THROW(F.inv(F.zero()), InvalidArgument);
  EXPECT_EQ(F.from_int(-1), F.from_int(6));
}

TEST(Field, MakeRejectsComposite) {
  EXPECT_THROW(Field::prime(9), InvalidArgument);
  EXPECT_THROW(Field::make(6, 1, 0), InvalidArgument);
  EXPECT_THROW(Field::make(2, 0, 0), InvalidArgument);
}

TEST(Field, F4HasTheOnlyIrreducibleQuadratic) {
  const Field F = Field::make(2, 2, 0);
  EXPECT_EQ(F.order(), 4u);
  const auto m = F.modulus();
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0], F.one());
  EXPECT_EQ(m[1], F.one());
  EXPECT_EQ(m[2], F.one());
  const Fel t = F.element(2);
  EXPECT_EQ(F.mul(t, t), F.add(t, F.one()));
}

TEST(Field, F9ModulusHasNoRootInF3) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Field F = Field::make(3, 2, seed);
    const auto m = F.modulus();
    const Field P = Field::prime(3);
    for (std::uint64_t x = 0; x < 3; ++x) {
      const std::uint64_t v = (m[0].v + m[1].v * x + m[2].v * x * x) % 3;
      EXPECT_NE(v, 0u) << "root " << x << " seed " << seed;
    }
    EXPECT_EQ(m[2], P.one());
  }
}

TEST(Field, MakeIsDeterministic) {
  EXPECT_EQ(Field::make(5, 3, 42).modulus(), Field::make(5, 3, 42).modulus());
  EXPECT_TRUE(Field::make(5, 3, 42) == Field::make(5, 3, 42));
}

TEST(Field, ExplicitModulusMustBeIrreducible) {
  EXPECT_THROW(Field::with_modulus(2, {1, 0, 1}), InvalidArgument);  // (t+1)^2
  EXPECT_NO_THROW(Field::with_modulus(2, {1, 1, 1}));
}

namespace {

void check_axioms(const Field& F, std::uint64_t seed) {
  auto rng = make_stream(seed, 0);
  for (int it = 0; it < 300; ++it) {
    const Fel a = uniform_element(F, rng), b = uniform_element(F, rng), c = uniform_element(F, rng);
    ASSERT_EQ(F.add(F.add(a, b), c), F.add(a, F.add(b, c)));
    ASSERT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
    ASSERT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
    ASSERT_EQ(F.mul(a, b), F.mul(b, a));
    ASSERT_EQ(F.add(a, F.neg(a)), F.zero());
    ASSERT_EQ(F.sub(a, b), F.add(a, F.neg(b)));
    if (!F.is_zero(a)) ASSERT_EQ(F.mul(a, F.inv(a)), F.one());
    for (auto v : F.coords(a)) ASSERT_LT(v, F.characteristic());
    ASSERT_EQ(F.from_coords(F.coords(a)), a);
  }
  // Frobenius fixes exactly the prime field, and a^q = a
  auto rng2 = make_stream(seed, 1);
  for (int it = 0; it < 50; ++it) {
    const Fel a = uniform_element(F, rng2);
    ASSERT_EQ(F.pow(a, F.order()), a);
  }
}

}  // namespace

TEST(Field, AxiomsHoldAcrossFields) {
  check_axioms(Field::prime(2), 1);
  check_axioms(Field::prime(101), 2);
  check_axioms(Field::make(2, 8, 3), 3);
  check_axioms(Field::make(3, 4, 4), 4);
  check_axioms(Field::make(101, 2, 5), 5);
  check_axioms(Field::prime(2).randomization_extension(), 6);
  check_axioms(Field::prime(101).randomization_extension(), 7);
  check_axioms(Field::make(3, 2, 0).extension(3, 9), 8);
}

TEST(Field, RandomizationExtensionSize) {
  const Field a = Field::prime(101).randomization_extension();
  EXPECT_EQ(a.order(), 101ull * 101 * 101 * 101);
  const Field b = Field::prime(2).randomization_extension();
  EXPECT_EQ(b.order(), 1ull << 20);
  EXPECT_TRUE(b.contains_subfield(Field::prime(2)));
  EXPECT_FALSE(b.contains_subfield(Field::prime(3)));
}

TEST(Field, TowerKeepsBaseElementsFixed) {
  const Field K = Field::make(3, 2, 0);
  const Field L = K.extension(2, 1);
  EXPECT_EQ(L.order(), 81u);
  auto rng = make_stream(11, 0);
  for (int it = 0; it < 100; ++it) {
    const Fel a = uniform_element(K, rng), b = uniform_element(K, rng);
    EXPECT_EQ(L.mul(a, b), K.mul(a, b));
    EXPECT_EQ(L.add(a, b), K.add(a, b));
  }
}

TEST(Field, IrreducibilityAgreesWithRootSearchForCubics) {
  // a cubic is irreducible iff it has no root
  const Field F = Field::prime(5);
  for (std::uint64_t c0 = 0; c0 < 5; ++c0)
    for (std::uint64_t c1 = 0; c1 < 5; ++c1)
      for (std::uint64_t c2 = 0; c2 < 5; ++c2) {
        bool root = false;
        for (std::uint64_t x = 0; x < 5; ++x) root |= (c0 + c1 * x + c2 * x * x + x * x * x) % 5 == 0;
        upoly::UPoly f{F.element(c0), F.element(c1), F.element(c2), F.one()};
        EXPECT_EQ(upoly::is_irreducible(F, f), !root);
      }
}
