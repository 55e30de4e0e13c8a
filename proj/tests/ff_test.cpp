#include <gtest/gtest.h>

#include <vector>

#include "nearspace/ff.hpp"

using namespace nearspace;

namespace {

// Independent schoolbook multiplication of residue polynomials, used as the
// oracle for the exp/log tables.
Element poly_mul(const Field& f, Element a, Element b) {
  const std::uint32_t p = f.characteristic();
  const std::uint32_t m = f.degree();
  auto da = f.digits(a);
  auto db = f.digits(b);
  std::vector<std::uint64_t> prod(2 * m, 0);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  const auto& mod = f.modulus();
  for (std::size_t i = prod.size(); i-- > m;) {
    const std::uint64_t c = prod[i];
    for (std::uint32_t k = 0; k <= m; ++k) prod[i - m + k] = (prod[i - m + k] + (p - c) * mod[k]) % p;
  }
  Element out = 0;
  for (std::uint32_t i = m; i-- > 0;) out = out * p + static_cast<Element>(prod[i]);
  return out;
}

}  // namespace

TEST(Field, PrimeFieldThreeHasGeneratorTwo) {
  Field f({3, 1});
  EXPECT_EQ(f.order(), 3u);
  EXPECT_EQ(f.generator(), 2u);
  EXPECT_EQ(f.add(1, 2), 0u);
}

TEST(Field, RejectsNonPrimeCharacteristic) {
  try {
    Field f({4, 1});
    FAIL() << "expected NotPrime";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPrime);
  }
}

TEST(Field, RejectsOrdersAboveTheCap) {
  try {
    Field f({2, 21});
    FAIL() << "expected TooLarge";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
  }
  EXPECT_NO_THROW(Field({2, 21}, std::uint64_t{1} << 21));
}

TEST(Field, ModulusIsSmallestIrreducible) {
  // X^2 + 1 has lower-coefficient index 1, and X^2 (index 0) is reducible.
  Field f({3, 2});
  EXPECT_EQ(f.modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
  // GF(4): X^2 + X + 1 is the only irreducible quadratic over GF(2).
  Field g({2, 2});
  EXPECT_EQ(g.modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
}

TEST(Field, NineEveryNonzeroPowerEightIsOne) {
  Field f({3, 2});
  for (Element a = 1; a < 9; ++a) {
    Element acc = 1;
    for (int i = 0; i < 8; ++i) acc = poly_mul(f, acc, a);
    EXPECT_EQ(acc, 1u) << a;
    EXPECT_EQ(f.pow(a, 8), 1u);
  }
}

TEST(Field, GeneratorHasFullOrder) {
  for (FieldSpec spec : {FieldSpec{3, 2}, FieldSpec{2, 6}, FieldSpec{5, 4}, FieldSpec{7, 1}}) {
    Field f(spec);
    Element x = f.generator();
    std::uint32_t order = 1;
    while (x != 1) {
      x = poly_mul(f, x, f.generator());
      ++order;
    }
    EXPECT_EQ(order, f.order() - 1);
    // Smallest-index generator: nothing below it has full order.
    for (Element g = 1; g < f.generator(); ++g) {
      bool full = true;
      for (std::uint32_t e = 1; e < f.order() - 1 && full; ++e) full = f.pow(g, e) != 1;
      EXPECT_FALSE(full) << g;
    }
  }
}

TEST(Field, TablesMatchPolynomialOracle) {
  for (FieldSpec spec : {FieldSpec{3, 2}, FieldSpec{2, 6}, FieldSpec{5, 4}}) {
    Field f(spec);
    for (Element a = 0; a < f.order(); ++a)
      for (Element b = 0; b < f.order(); ++b) ASSERT_EQ(f.mul(a, b), poly_mul(f, a, b));
  }
}

TEST(Field, ExhaustiveFieldAxiomsOrderNine) {
  Field f({3, 2});
  const Element q = f.order();
  for (Element a = 0; a < q; ++a)
    for (Element b = 0; b < q; ++b) {
      EXPECT_EQ(f.add(a, b), f.add(b, a));
      EXPECT_EQ(f.mul(a, b), f.mul(b, a));
      for (Element c = 0; c < q; ++c) {
        EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
}

TEST(Field, InverseAndLogRoundTrip) {
  for (FieldSpec spec : {FieldSpec{3, 2}, FieldSpec{2, 6}, FieldSpec{5, 4}, FieldSpec{2, 1}}) {
    Field f(spec);
    for (Element a = 1; a < f.order(); ++a) {
      EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
      EXPECT_EQ(f.exp(f.log(a)), a);
    }
    EXPECT_THROW((void)f.inv(0), Error);
  }
}

TEST(Field, FrobeniusIsAdditiveMultiplicativeAndHasOrderM) {
  Field f({3, 2});
  for (Element a = 0; a < 9; ++a) {
    EXPECT_EQ(f.frobenius(a, 2), a);
    EXPECT_EQ(f.frobenius(a, 1), f.pow(a, 3));
    for (Element b = 0; b < 9; ++b) {
      EXPECT_EQ(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
      EXPECT_EQ(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
    }
  }
  Field g({5, 4});
  for (Element a = 0; a < g.order(); ++a) EXPECT_EQ(g.frobenius(a, 4), a);
}

TEST(Field, LargeCharacteristicWithoutAddTable) {
  Field f({1031, 1});
  EXPECT_EQ(f.add(1030, 2), 1u);
  EXPECT_EQ(f.neg(1), 1030u);
  EXPECT_EQ(f.mul(1030, 1030), 1u);
}
