#include <gtest/gtest.h>

#include <qmcforge/gf2.hpp>

#include <random>

using namespace qmcforge;

namespace {

BinaryPolynomial P(std::uint64_t bits) { return BinaryPolynomial(bits); }

// Schoolbook (a*b) mod q by repeated subtraction of shifted q.
std::uint64_t naiveMulMod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  std::uint64_t prod = 0;
  for (int i = 0; i < 32; ++i) {
    if ((b >> i) & 1U) prod ^= a << i;
  }
  const int dq = 63 - std::countl_zero(q);
  for (int i = 63; i >= dq; --i) {
    if ((prod >> i) & 1U) prod ^= q << (i - dq);
  }
  return prod;
}

bool bruteIrreducible(std::uint64_t q) {
  const int d = 63 - std::countl_zero(q);
  for (std::uint64_t f = 2; f < (std::uint64_t{1} << (d / 2 + 1)); ++f) {
    const int df = 63 - std::countl_zero(f);
    if (df < 1 || df > d / 2) continue;
    std::uint64_t r = q;
    for (int i = d; i >= df; --i) {
      if ((r >> i) & 1U) r ^= f << (i - df);
    }
    if (r == 0) return false;
  }
  return true;
}

}  // namespace

TEST(Polynomial, DegreeAndZero) {
  EXPECT_TRUE(P(0).isZero());
  EXPECT_EQ(P(0).degree(), BinaryPolynomial::kMinusInfinity);
  EXPECT_EQ(P(1).degree(), 0);
  EXPECT_EQ(P(0b111).degree(), 2);
  EXPECT_EQ(P(96129).degree(), 16);
  EXPECT_EQ(BinaryPolynomial::monomial(5).bits(), 32U);
}

TEST(Polynomial, MulModExamples) {
  const auto q = P(0b111);
  EXPECT_EQ(polyMulMod(P(1), P(0b10), q), P(0b10));
  EXPECT_EQ(polyMulMod(P(0b10), P(0b10), q), P(0b11));
  EXPECT_EQ(polyMulMod(P(0b11), P(0b11), P(0b1000)), P(0b101));
  EXPECT_THROW(polyMulMod(P(1), P(1), P(0)), Error);
}

TEST(Polynomial, MulModAgreesWithSchoolbookAndCommutes) {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 2000; ++it) {
    const int d = 1 + static_cast<int>(rng() % 20);
    const std::uint64_t q = (std::uint64_t{1} << d) | (rng() & ((std::uint64_t{1} << d) - 1));
    const std::uint64_t a = rng() & ((std::uint64_t{1} << d) - 1);
    const std::uint64_t b = rng() & ((std::uint64_t{1} << d) - 1);
    EXPECT_EQ(polyMulMod(P(a), P(b), P(q)).bits(), naiveMulMod(a, b, q));
    EXPECT_EQ(polyMulMod(P(a), P(b), P(q)), polyMulMod(P(b), P(a), P(q)));
  }
}

TEST(Polynomial, DivModReconstructs) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 500; ++it) {
    const std::uint64_t a = rng() & 0xFFFFFFFF;
    const std::uint64_t q = (rng() & 0xFFFF) | 1U;
    const auto [quot, rem] = polyDivMod(P(a), P(q));
    EXPECT_LT(rem.degree(), P(q).degree());
    EXPECT_EQ(polyMul(quot, P(q)) + rem, P(a));
  }
}

TEST(Polynomial, Irreducibility) {
  EXPECT_TRUE(isIrreducible(P(0b111)));
  EXPECT_FALSE(isIrreducible(P(0b100)));
  EXPECT_TRUE(isIrreducible(P(0b10011)));
  EXPECT_THROW(isIrreducible(P(1)), Error);
  EXPECT_THROW(isIrreducible(P(0)), Error);
}

TEST(Polynomial, IrreducibilityMatchesBruteForceUpToDegree12) {
  for (std::uint64_t q = 2; q < (std::uint64_t{1} << 13); ++q) {
    ASSERT_EQ(isIrreducible(P(q)), bruteIrreducible(q)) << q;
  }
}

TEST(Polynomial, Gcd) {
  EXPECT_EQ(gcdPoly(P(0b110), P(0b10)), P(0b10));
  EXPECT_EQ(gcdPoly(P(0b1011), P(0)), P(0b1011));
  EXPECT_EQ(gcdPoly(P(0b11), P(0b10)), P(1));
  EXPECT_THROW(gcdPoly(P(0), P(0)), Error);
}

TEST(Polynomial, DefaultModulusIsSmallestIrreducible) {
  for (int k = 1; k <= 12; ++k) {
    const auto q = defaultModulus(k);
    EXPECT_EQ(q.degree(), k);
    EXPECT_TRUE(isIrreducible(q));
    for (std::uint64_t v = std::uint64_t{1} << k; v < q.bits(); ++v) EXPECT_FALSE(bruteIrreducible(v));
  }
}

TEST(Polynomial, MultiplicativeGeneratorHasFullOrder) {
  for (const std::uint64_t q : {0b111ULL, 0b1011ULL, 0b10011ULL, 96129ULL}) {
    const auto g = multiplicativeGenerator(P(q));
    const std::uint64_t order = (std::uint64_t{1} << P(q).degree()) - 1;
    auto x = g;
    std::uint64_t t = 1;
    while (x != P(1)) {
      x = polyMulMod(x, g, P(q));
      ++t;
    }
    EXPECT_EQ(t, order) << q;
  }
}

TEST(Polynomial, PrimitivePolynomialsStartWithKnownList) {
  const auto p = primitivePolynomials(6);
  const std::vector<std::uint64_t> expected{0b11, 0b111, 0b1011, 0b1101, 0b10011, 0b11001};
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(p[i].bits(), expected[i]);
}

TEST(Matrix, Rank) {
  EXPECT_EQ(rankGF2(GeneratingMatrix::identity(3)), 3);
  GeneratingMatrix dup(2, 4);
  for (int r = 0; r < 2; ++r) {
    dup.set(r, 0, true);
    dup.set(r, 2, true);
  }
  EXPECT_EQ(rankGF2(dup), 1);
  EXPECT_EQ(rankGF2(GeneratingMatrix(5, 4)), 0);
}

TEST(Matrix, ApplyUsesLeastSignificantDigitFirst) {
  const auto id = GeneratingMatrix::identity(3);
  EXPECT_EQ(id.apply(1), 0b100U);
  EXPECT_EQ(id.apply(6), 0b011U);
  EXPECT_EQ(id.column(0), 0b100U);
}

TEST(Matrix, ExpansionExamples) {
  const auto one = expansionMatrix(P(1), P(0b10), 3);
  ASSERT_EQ(one.cols(), 1);
  EXPECT_EQ(one.column(0), 0b100U);

  const auto m = expansionMatrix(P(1), P(0b111), 6);
  // Column c holds the digits of z^c / q.
  EXPECT_EQ(m.column(0), 0b011011U);
  EXPECT_EQ(m.column(1), 0b110110U);
  EXPECT_THROW(expansionMatrix(P(0b111), P(0b111), 6), Error);
  EXPECT_THROW(expansionMatrix(P(1), P(0b111), 1), Error);
}

TEST(Matrix, ExpansionIsHankelAndRegular) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 300; ++it) {
    const int k = 1 + static_cast<int>(rng() % 12);
    const int w = k + static_cast<int>(rng() % 20);
    const std::uint64_t q = (std::uint64_t{1} << k) | (rng() & ((std::uint64_t{1} << k) - 1));
    const std::uint64_t a = rng() & ((std::uint64_t{1} << k) - 1);
    const auto m = expansionMatrix(P(a), P(q), w);
    // Row r+1 is row r shifted by one column; the new last entry follows the
    // recurrence with characteristic polynomial q.
    for (int r = 0; r + 1 < w; ++r) {
      for (int c = 0; c + 1 < k; ++c) ASSERT_EQ(m.get(r + 1, c), m.get(r, c + 1));
    }
    if (gcdPoly(P(a), P(q)) == P(1)) {
      EXPECT_EQ(rankGF2(m.truncated(k, k)), k);
    }
  }
}

TEST(Matrix, ExpansionColumnsMatchLongDivision) {
  // Column c holds the digits of z^c a / q.
  const auto q = P(0b1011);
  const auto a = P(0b110);
  const int k = 3, w = 10;
  const auto m = expansionMatrix(a, q, w);
  for (int c = 0; c < k; ++c) {
    auto num = polyMul(BinaryPolynomial::monomial(c), a);
    for (int l = 0; l < w; ++l) {
      num = polyMul(num, P(0b10));
      const auto [quot, rem] = polyDivMod(num, q);
      EXPECT_EQ(m.get(l, c), quot.coefficient(0)) << c << " " << l;
      num = rem;
    }
  }
}

TEST(Matrix, MultiplyMatchesApply) {
  std::mt19937_64 rng(5);
  GeneratingMatrix a(6, 4), b(4, 4);
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 4; ++c) a.set(r, c, rng() & 1U);
  }
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) b.set(r, c, rng() & 1U);
  }
  const auto ab = multiply(a, b);
  for (std::uint64_t i = 0; i < 16; ++i) {
    const std::uint64_t bi = b.apply(i);
    std::uint64_t idx = 0;
    for (int r = 0; r < 4; ++r) idx |= ((bi >> (3 - r)) & 1U) << r;
    EXPECT_EQ(ab.apply(i), a.apply(idx));
  }
}
