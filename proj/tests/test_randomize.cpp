#include <gtest/gtest.h>

#include <qmcforge/fom.hpp>
#include <qmcforge/oracles.hpp>
#include <qmcforge/randomize.hpp>

#include <algorithm>
#include <cmath>
#include <random>

using namespace qmcforge;

namespace {

BinaryPolynomial P(std::uint64_t bits) { return BinaryPolynomial(bits); }

DigitalNet randomNet(std::mt19937_64& rng, int k, int s, int w) {
  std::vector<GeneratingMatrix> mats;
  while (static_cast<int>(mats.size()) < s) {
    GeneratingMatrix m(w, k);
    for (int r = 0; r < w; ++r)
      for (int c = 0; c < k; ++c) m.set(r, c, rng() & 1U);
    if (isProjectionRegular(m)) mats.push_back(m);
  }
  return DigitalNet(k, mats);
}

std::vector<std::uint64_t> toDigits(const std::vector<std::vector<double>>& pts, int j, int w) {
  std::vector<std::uint64_t> out;
  for (const auto& p : pts) out.push_back(static_cast<std::uint64_t>(std::ldexp(p[static_cast<std::size_t>(j)], w)));
  return out;
}

std::vector<std::uint64_t> sortedPrefixes(const std::vector<std::uint64_t>& digits, int k, int w) {
  std::vector<std::uint64_t> out;
  for (auto y : digits) out.push_back(y >> (w - k));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Shift, Examples) {
  const Rank1Lattice lat(2, {1});
  const auto pts = shiftLattice(lat, {0.75});
  EXPECT_EQ(pts[0][0], 0.75);
  EXPECT_EQ(pts[1][0], 0.25);
  const Rank1Lattice big(13, {1, 5});
  const auto zero = shiftLattice(big, {0.0, 0.0});
  for (std::uint64_t i = 0; i < 13; ++i) EXPECT_EQ(zero[i], big.point(i));
  EXPECT_THROW(shiftLattice(big, {1.0, 0.0}), Error);
}

TEST(Shift, PairwiseDifferencesPreserved) {
  const Rank1Lattice lat(16, {1, 7});
  const auto base = shiftLattice(lat, {0.0, 0.0});
  const auto moved = shiftLattice(lat, {0.3125, 0.6875});  // dyadic: exact arithmetic
  auto diffs = [](const std::vector<std::vector<double>>& pts) {
    std::vector<std::vector<double>> out;
    for (const auto& a : pts)
      for (const auto& b : pts) {
        std::vector<double> d;
        for (std::size_t j = 0; j < a.size(); ++j) d.push_back(std::fmod(a[j] - b[j] + 1.0, 1.0));
        out.push_back(d);
      }
    std::sort(out.begin(), out.end());
    return out;
  };
  EXPECT_EQ(diffs(base), diffs(moved));
}

TEST(DigitalShift, Examples) {
  const DigitalNet net(2, {GeneratingMatrix::identity(2)});
  // Point 2 is 0.25 (0.01 in binary); shifting by 0.5 gives 0.75.
  const auto pts = digitalShift(net, std::vector<double>{0.5});
  EXPECT_EQ(net.point(2)[0], 0.25);
  EXPECT_EQ(pts[2][0], 0.75);
  const auto id = digitalShift(net, std::vector<double>{0.0});
  for (std::uint64_t i = 0; i < 4; ++i) EXPECT_EQ(id[i], net.point(i));
  EXPECT_THROW(digitalShift(net, std::vector<double>{0.125}), Error);
}

TEST(DigitalShift, Involution) {
  std::mt19937_64 rng(1);
  const auto net = randomNet(rng, 5, 3, 12);
  const std::vector<std::uint64_t> s{0x5a3, 0x0f0, 0xabc};
  const auto once = digitalShift(net, s);
  for (std::uint64_t i = 0; i < net.size(); ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto y = static_cast<std::uint64_t>(std::ldexp(once[i][static_cast<std::size_t>(j)], 12)) ^ s[static_cast<std::size_t>(j)];
      EXPECT_EQ(y, net.digits(i, j));
    }
  }
}

TEST(DigitalShift, ExhaustiveAverageIsExact) {
  // Averaged over all 2^w shifts, every point sits at (2^w - 1) / 2^(w+1).
  const int w = 8;
  const auto net = plrToNet({defaultModulus(4), {P(1), P(7)}, w});
  for (std::uint64_t i : {0ULL, 5ULL, 15ULL}) {
    for (int j = 0; j < 2; ++j) {
      double sum = 0;
      for (std::uint64_t s = 0; s < (1U << w); ++s) sum += digitsToUnit(net.digits(i, j) ^ s, w);
      EXPECT_EQ(sum / (1U << w), std::ldexp((1U << w) - 1.0, -(w + 1)));
    }
  }
}

TEST(Lms, IdentityAndSingular) {
  std::mt19937_64 rng(2);
  const auto net = randomNet(rng, 4, 2, 10);
  EXPECT_EQ(lms(net, {GeneratingMatrix::identity(10), GeneratingMatrix::identity(10)}), net);
  auto bad = GeneratingMatrix::identity(10);
  bad.set(3, 3, false);
  EXPECT_THROW(lms(net, {bad, GeneratingMatrix::identity(10)}), Error);
  auto upper = GeneratingMatrix::identity(10);
  upper.set(0, 5, true);
  EXPECT_THROW(lms(net, {upper, GeneratingMatrix::identity(10)}), Error);
}

TEST(Lms, LeadingDigitOfEachColumnKept) {
  std::mt19937_64 rng(3);
  auto stream = makeStream(1, StreamTag::LinearScramble);
  for (int it = 0; it < 20; ++it) {
    const auto net = randomNet(rng, 3, 1, 3);
    const auto out = lms(net, {randomLowerTriangular(3, stream)});
    for (int c = 0; c < 3; ++c) {
      const auto before = net.matrix(0).column(c), after = out.matrix(0).column(c);
      ASSERT_NE(before, 0U);
      EXPECT_EQ(std::bit_width(before), std::bit_width(after));
    }
  }
}

TEST(Randomizations, PreserveTValues) {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 50; ++it) {
    const int k = 1 + static_cast<int>(rng() % 6);
    const int w = k + static_cast<int>(rng() % 6);
    const auto net = randomNet(rng, k, 3, w);
    std::vector<GeneratingMatrix> ls;
    auto stream = makeStream(it, StreamTag::LinearScramble);
    for (int j = 0; j < 3; ++j) ls.push_back(randomLowerTriangular(w, stream));
    const auto scrambled = lms(net, ls);
    const auto nusd = nusDigits(net, 99, static_cast<std::uint64_t>(it));
    const auto shifted = digitalShift(net, std::vector<std::uint64_t>{rng() & GeneratingMatrix::rowMask(w), rng() & GeneratingMatrix::rowMask(w), 0});
    for (const std::vector<int>& u : {std::vector<int>{0, 1}, std::vector<int>{1, 2}, std::vector<int>{0, 1, 2}}) {
      const int t = tValue(net, u);
      EXPECT_EQ(tValue(scrambled, u), t);
      std::vector<std::vector<std::uint64_t>> nd, sd;
      for (int j : u) {
        nd.push_back(nusd[static_cast<std::size_t>(j)]);
        sd.push_back(toDigits(shifted, j, w));
      }
      EXPECT_EQ(oracleTValueBoxCount(nd, k, w), t);
      EXPECT_EQ(oracleTValueBoxCount(sd, k, w), t);
    }
  }
}

TEST(Nus, PrefixMultisetPreserved) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 20; ++it) {
    const int k = 1 + static_cast<int>(rng() % 7);
    const int w = k + 5;
    const auto net = randomNet(rng, k, 2, w);
    const auto out = nusDigits(net, 7, static_cast<std::uint64_t>(it));
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(sortedPrefixes(out[static_cast<std::size_t>(j)], k, w), sortedPrefixes(net.coordinateDigits(j), k, w));
    }
  }
  // k = 1: first bits are {0, 1} in some order.
  const DigitalNet one(1, {GeneratingMatrix::identity(8, 1)});
  const auto pts = nus(one, 3);
  EXPECT_NE(pts[0][0] < 0.5, pts[1][0] < 0.5);
}

TEST(Nus, TailDigitsVary) {
  const DigitalNet one(1, {GeneratingMatrix::identity(30, 1)});
  const auto a = nus(one, 3, 0);
  const auto b = nus(one, 3, 1);
  EXPECT_NE(a, b);
  const auto y = static_cast<std::uint64_t>(std::ldexp(a[1][0], 30));
  EXPECT_NE(y & GeneratingMatrix::rowMask(29), 0U);  // digits 2..30 drawn per point
}

TEST(Generator, StreamRangesAndDeterminism) {
  const PointSetDef base = PolynomialLatticeRule{defaultModulus(6), {P(1), P(11), P(37)}, 31};
  for (auto tag : {Randomization::Tag::None, Randomization::Tag::DigitalShift, Randomization::Tag::LmsPlusShift,
                   Randomization::Tag::Nus}) {
    const RandomizedPointSet rps{base, {tag, 42}, 3};
    const auto full = generateStream(rps);
    ASSERT_EQ(full.size(), 64U);
    auto first = generateStream(rps, 0, 20);
    const auto second = generateStream(rps, 20, 64);
    first.insert(first.end(), second.begin(), second.end());
    EXPECT_EQ(first, full);
    EXPECT_EQ(generateStream(rps), full);
    const RandomizedGenerator gen(base, {tag, 42}, 3);
    for (std::uint64_t i = 0; i < 64; ++i) EXPECT_EQ(gen.point(i), full[i]);
    if (tag != Randomization::Tag::None) {
      EXPECT_NE(generateStream(RandomizedPointSet{base, {tag, 42}, 4}), full);
    }
    EXPECT_THROW(generateStream(rps, 10, 65), Error);
  }
  const PointSetDef lat = Rank1Lattice(17, {1, 5});
  EXPECT_THROW(RandomizedGenerator(lat, {Randomization::Tag::Nus, 1}, 0), Error);
  EXPECT_THROW(RandomizedGenerator(base, {Randomization::Tag::ShiftMod1, 1}, 0), Error);
  const auto shifted = generateStream(RandomizedPointSet{lat, {Randomization::Tag::ShiftMod1, 5}, 0});
  EXPECT_EQ(shifted.size(), 17U);
}

TEST(Generator, LaterCoordinatesDoNotPerturbEarlierOnes) {
  const PointSetDef two = PolynomialLatticeRule{defaultModulus(5), {P(1), P(11)}, 31};
  const PointSetDef three = PolynomialLatticeRule{defaultModulus(5), {P(1), P(11), P(13)}, 31};
  for (auto tag : {Randomization::Tag::DigitalShift, Randomization::Tag::LmsPlusShift, Randomization::Tag::Nus}) {
    const RandomizedGenerator a(two, {tag, 8}, 0), b(three, {tag, 8}, 0);
    for (std::uint64_t i = 0; i < 32; ++i) {
      for (int j = 0; j < 2; ++j) EXPECT_EQ(a.digits(i, j), b.digits(i, j));
    }
  }
}

TEST(Generator, InterlacedRandomizesInnerThenInterlaces) {
  const PolynomialLatticeRule inner{defaultModulus(5), {P(1), P(11), P(13), P(7)}, 31};
  const PointSetDef il = InterlacedNet{inner, 2};
  const RandomizedGenerator plain(PointSetDef(inner), {Randomization::Tag::Nus, 9}, 2);
  const RandomizedGenerator gen(il, {Randomization::Tag::Nus, 9}, 2);
  EXPECT_EQ(gen.dimension(), 2);
  EXPECT_EQ(gen.outputDigits(), 62);
  for (std::uint64_t i = 0; i < 32; ++i) {
    for (int j = 0; j < 2; ++j) {
      const std::uint64_t in[2] = {plain.digits(i, 2 * j), plain.digits(i, 2 * j + 1)};
      EXPECT_EQ(gen.digits(i, j), interleaveDigits(in, 2, 31));
    }
  }
}

TEST(Iid, DeterministicUniform) {
  const auto a = iidPoints(1000, 3, 5, 0);
  EXPECT_EQ(a, iidPoints(1000, 3, 5, 0));
  EXPECT_NE(a, iidPoints(1000, 3, 5, 1));
  double sum = 0;
  for (const auto& p : a)
    for (double x : p) sum += x;
  EXPECT_NEAR(sum / 3000, 0.5, 0.03);
}
