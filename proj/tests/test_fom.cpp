#include <gtest/gtest.h>

#include <qmcforge/fom.hpp>
#include <qmcforge/objective.hpp>
#include <qmcforge/oracles.hpp>

#include <array>
#include <numbers>
#include <numeric>
#include <random>

using namespace qmcforge;

namespace {

constexpr double kPi = std::numbers::pi;

BinaryPolynomial P(std::uint64_t bits) { return BinaryPolynomial(bits); }

FomSpec fomOf(FomFamily f, double alpha = 2.0, double q = 2.0, WeightSpec w = WeightSpec::product({}, 1.0)) {
  FomSpec s;
  s.family = f;
  s.alpha = alpha;
  s.q = q;
  s.weights = std::move(w);
  return s;
}

std::vector<std::vector<double>> pointsOf(const DigitalNet& net) {
  std::vector<std::vector<double>> pts;
  for (std::uint64_t i = 0; i < net.size(); ++i) pts.push_back(net.point(i));
  return pts;
}

std::vector<std::vector<double>> pointsOf(const Rank1Lattice& lat) {
  std::vector<std::vector<double>> pts;
  for (std::uint64_t i = 0; i < lat.size(); ++i) pts.push_back(lat.point(i));
  return pts;
}

DigitalNet randomPlr(std::mt19937_64& rng, int k, int s, int w) {
  const auto q = defaultModulus(k);
  std::vector<BinaryPolynomial> gen;
  while (static_cast<int>(gen.size()) < s) {
    const auto a = P(rng() & ((std::uint64_t{1} << k) - 1));
    if (!a.isZero() && gcdPoly(a, q) == P(1)) gen.push_back(a);
  }
  return plrToNet({q, gen, w});
}

DigitalNet randomNet(std::mt19937_64& rng, int k, int s) {
  std::vector<GeneratingMatrix> mats;
  while (static_cast<int>(mats.size()) < s) {
    GeneratingMatrix m(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) m.set(r, c, rng() & 1U);
    if (rankGF2(m) == k) mats.push_back(m);
  }
  return DigitalNet(k, mats);
}

}  // namespace

TEST(Kernels, Palpha) {
  EXPECT_NEAR(kernelPalpha(0.0, 2), kPi * kPi / 3, 1e-13);
  EXPECT_NEAR(kernelPalpha(0.5, 2), -kPi * kPi / 6, 1e-13);
  for (double x = 0.01; x < 1; x += 0.013) EXPECT_NEAR(kernelPalpha(x, 2), kernelPalpha(1 - x, 2), 1e-12);
  EXPECT_THROW(kernelPalpha(0.3, 3), Error);
  // alpha = 4: -(-4 pi^2)^2 B_4(x) / 4!, B_4(0) = -1/30.
  EXPECT_NEAR(kernelPalpha(0.0, 4), 16 * std::pow(kPi, 4) / 24 / 30, 1e-10);
}

TEST(Kernels, PalphaTilde) {
  EXPECT_EQ(kernelPalphaTilde(0.0, 2), 2.0);
  EXPECT_NEAR(kernelPalphaTilde(0.0, 3), 4.0 / 3, 1e-15);
  EXPECT_EQ(kernelPalphaTilde(0.5, 2), -1.0);
  EXPECT_THROW(fomOf(FomFamily::PalphaTilde, 1.0).validate(), Error);
}

TEST(Kernels, Sobolev1) {
  EXPECT_EQ(kernelSobolev1(0.0), 1.0 / 6);
  EXPECT_DOUBLE_EQ(kernelSobolev1(0.5), -1.0 / 12);
  for (std::uint64_t i = 0; i < (1U << 20); i += 977) {
    const double x = std::ldexp(static_cast<double>(i), -20);
    EXPECT_EQ(kernelSobolev1(x) * 12, kernelPalphaTilde(x, 2));
  }
}

TEST(Kernels, R2prime) {
  FomSpec f = fomOf(FomFamily::R2prime, 2.0, 1.0);
  const CoordinateKernel phi(f, 1, 2);
  EXPECT_EQ(phi(0.0), 2.0);
  EXPECT_EQ(phi(0.5), 0.5);
  EXPECT_EQ(phi(0.25), 1.0);
  EXPECT_EQ(phi(0.125), 2.0);  // below 2^-k
  // Single point {0}, k = 2: -1 + phi_2(0) = 1.
  EXPECT_EQ(-1.0 + phi(0.0), 1.0);
}

TEST(Kernels, Interlaced) {
  FomSpec c = fomOf(FomFamily::IAlphaDc, 2.0, 2.0);
  c.d = 2;
  EXPECT_DOUBLE_EQ(CoordinateKernel(c, 1)(0.0), 1.0 / 60);
  EXPECT_EQ(*c.weightFactor(), 64.0);

  FomSpec a = fomOf(FomFamily::IAlphaDa, 2.0, 1.0);
  a.d = 2;
  for (double x : {0.0, 0.5, 0.3, 0.01}) EXPECT_EQ(CoordinateKernel(a, 1)(x), CoordinateKernel(a, 2)(x));

  FomSpec b = fomOf(FomFamily::IAlphaDb, 2.0, 1.0);
  b.d = 3;
  EXPECT_THROW(b.validate(), Error);
  b.d = 1;
  EXPECT_THROW(b.validate(), Error);
}

TEST(Merit, DualLatticeExamples) {
  const auto p2 = fomOf(FomFamily::Palpha);
  EXPECT_NEAR(evalKernelFom({{0.0}}, p2).total, kPi * kPi / 3, 1e-12);
  EXPECT_NEAR(evalKernelFom({{0.0}, {0.5}}, p2).total, kPi * kPi / 12, 1e-12);
  EXPECT_NEAR(oraclePalphaDual(Rank1Lattice(1, {0}), 2, 100000), kPi * kPi / 3, 2e-5);
  EXPECT_NEAR(oraclePalphaDual(Rank1Lattice(2, {1}), 2, 100000), kPi * kPi / 12, 2e-5);
  EXPECT_NEAR(evalKernelFom({{0.0}, {0.5}}, fomOf(FomFamily::PalphaTilde)).total, 0.5, 1e-15);
}

TEST(Merit, KernelMatchesDualOracle) {
  std::mt19937_64 rng(9);
  for (int it = 0; it < 10; ++it) {
    const std::uint64_t n = 2 + rng() % 40;
    std::vector<std::uint64_t> a{1};
    for (int j = 1; j < 2; ++j) {
      std::uint64_t c;
      do c = 1 + rng() % (n - 1);
      while (std::gcd(c, n) != 1);
      a.push_back(c);
    }
    const Rank1Lattice lat(n, a);
    const double kernel = evalKernelFom(pointsOf(lat), fomOf(FomFamily::Palpha)).total;
    const double dual = oraclePalphaDual(lat, 2, 20000);
    EXPECT_NEAR(kernel, dual, 1e-3 * kernel);
    EXPECT_NEAR(oraclePalphaDualDirect(lat, 2, 60), oraclePalphaDual(lat, 2, 60), 1e-9);
  }
}

TEST(Merit, ProductFastMatchesSubsetSum) {
  std::mt19937_64 rng(3);
  const auto w = WeightSpec::product({0.9, 0.5, 0.3, 0.7, 0.2, 0.8, 0.1, 0.6, 0.4, 0.5, 0.3, 0.2});
  for (auto fam : {FomFamily::PalphaTilde, FomFamily::Sobolev1, FomFamily::R2prime}) {
    const double q = fam == FomFamily::R2prime ? 1.0 : 2.0;
    const auto net = randomPlr(rng, 6, 12, 31);
    const auto pts = pointsOf(net);
    const auto f = fomOf(fam, 2.0, q, w);
    const double slow = evalKernelFom(pts, f).total;
    EXPECT_NEAR(evalProductWeightFast(pts, f).total, slow, 1e-12 * std::fabs(slow));
  }
  const auto lat = pointsOf(Rank1Lattice(64, {1, 19, 27}));
  const auto f = fomOf(FomFamily::Palpha, 2.0, 2.0, WeightSpec::product({0.5, 0.5, 0.5}));
  EXPECT_NEAR(evalProductWeightFast(lat, f).total, evalKernelFom(lat, f).total, 1e-12);
  const auto zero = fomOf(FomFamily::Palpha, 2.0, 2.0, WeightSpec::product({0, 0, 0}));
  EXPECT_EQ(evalProductWeightFast(lat, zero).total, 0.0);
  EXPECT_THROW(evalProductWeightFast(lat, fomOf(FomFamily::Palpha, 2, 2, WeightSpec::orderDependent({1}))), Error);
}

TEST(Merit, ProductFastSmallNetExhaustiveSubsets) {
  std::mt19937_64 rng(21);
  const auto net = randomNet(rng, 3, 3);
  const auto pts = pointsOf(net);
  const std::vector<double> g{0.3, 0.6, 0.9};
  const auto f = fomOf(FomFamily::PalphaTilde, 2.0, 2.0, WeightSpec::product(g));
  double oracle = 0;
  for (unsigned m = 1; m < 8; ++m) {
    double weight = 1, avg = 0;
    for (int j = 0; j < 3; ++j)
      if (m & (1U << j)) weight *= g[j] * g[j];
    for (const auto& p : pts) {
      double prod = 1;
      for (int j = 0; j < 3; ++j)
        if (m & (1U << j)) prod *= kernelPalphaTilde(p[j], 2);
      avg += prod / 8;
    }
    oracle += weight * avg;
  }
  EXPECT_NEAR(evalProductWeightFast(pts, f).total, oracle, 1e-13);
}

TEST(Merit, IncrementalEvaluationMatchesDirect) {
  std::mt19937_64 rng(5);
  const auto od = WeightSpec::orderDependent({0.5, 1.0, 0.25});
  for (auto fam : {FomFamily::PalphaTilde, FomFamily::Sobolev1, FomFamily::R2prime}) {
    const auto net = randomPlr(rng, 7, 5, 31);
    const auto f = fomOf(fam, 2.0, fam == FomFamily::R2prime ? 1.0 : 2.0, od);
    EXPECT_NEAR(evaluateMerit(net, f), evalKernelFom(pointsOf(net), f).total, 1e-11);
  }
  const Rank1Lattice lat(101, {1, 17, 39, 44});
  const auto f = fomOf(FomFamily::Palpha, 2.0, 2.0, od);
  EXPECT_NEAR(evaluateMerit(lat, f), evalKernelFom(pointsOf(lat), f).total, 1e-10);
}

TEST(Merit, InterlacedMatchesDirect) {
  std::mt19937_64 rng(6);
  const auto inner = randomPlr(rng, 6, 4, 31);
  for (auto fam : {FomFamily::IAlphaDa, FomFamily::IAlphaDb, FomFamily::IAlphaDc}) {
    auto f = fomOf(fam, 2.0, fam == FomFamily::IAlphaDc ? 2.0 : 1.0, WeightSpec::product({}, 0.5));
    f.d = 2;
    const PointSetDef def = InterlacedNet{inner, 2};
    EXPECT_NEAR(evaluateMerit(def, f), evalInterlacedFom(pointsOf(inner), f).total, 1e-10);
  }
  auto c1 = fomOf(FomFamily::IAlphaDc, 2.0, 2.0);
  EXPECT_NO_THROW(c1.validate());
}

TEST(Merit, DigitTruncationInvariance) {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 5; ++it) {
    const int k = 4 + it;
    const auto q = defaultModulus(k);
    std::vector<BinaryPolynomial> gen;
    while (gen.size() < 4) {
      const auto a = P(rng() & ((std::uint64_t{1} << k) - 1));
      if (!a.isZero() && gcdPoly(a, q) == P(1)) gen.push_back(a);
    }
    const auto shortNet = plrToNet({q, gen, k});
    const auto longNet = plrToNet({q, gen, 31});
    for (auto fam : {FomFamily::PalphaTilde, FomFamily::Sobolev1, FomFamily::R2prime}) {
      const auto f = fomOf(fam, 2.0, fam == FomFamily::R2prime ? 1.0 : 2.0);
      EXPECT_EQ(evaluateMerit(shortNet, f), evaluateMerit(longNet, f));
      EXPECT_EQ(evalKernelFom(pointsOf(shortNet), f).total, evalKernelFom(pointsOf(longNet), f).total);
    }
  }
}

TEST(Merit, MonotoneInWeights) {
  std::mt19937_64 rng(10);
  const auto net = randomPlr(rng, 6, 3, 31);
  const auto pts = pointsOf(net);
  const std::map<Subset, double> base{{{0}, 1}, {{1}, 1}, {{0, 1}, 1}, {{1, 2}, 1}, {{0, 1, 2}, 1}};
  const double before = evalKernelFom(pts, fomOf(FomFamily::PalphaTilde, 2, 2, WeightSpec::explicitMap(base))).total;
  for (const auto& [u, g] : base) {
    auto bigger = base;
    bigger[u] = 3.0;
    const double after = evalKernelFom(pts, fomOf(FomFamily::PalphaTilde, 2, 2, WeightSpec::explicitMap(bigger))).total;
    EXPECT_GE(after, before);
  }
}

TEST(Merit, InfiniteNormIsMaxOverProjections) {
  std::mt19937_64 rng(12);
  const auto net = randomPlr(rng, 6, 3, 31);
  const auto pts = pointsOf(net);
  const auto w = WeightSpec::explicitMap({{{0, 1}, 1.0}, {{1, 2}, 0.5}});
  const double inf = evalKernelFom(pts, fomOf(FomFamily::PalphaTilde, 2, kInfiniteNorm, w)).total;
  double expected = 0;
  for (auto [u, g] : std::vector<std::pair<std::array<int, 2>, double>>{{{0, 1}, 1.0}, {{1, 2}, 0.5}}) {
    double avg = 0;
    for (const auto& p : pts) avg += kernelPalphaTilde(p[u[0]], 2) * kernelPalphaTilde(p[u[1]], 2);
    avg /= static_cast<double>(pts.size());
    expected = std::max(expected, g * std::sqrt(std::max(avg, 0.0)));
  }
  EXPECT_NEAR(inf, expected, 1e-14);
}

TEST(Merit, ReflectionSymmetryOfP2) {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 10; ++it) {
    const std::uint64_t n = 5 + rng() % 60;
    const Rank1Lattice lat(n, {1, rng() % n, rng() % n});
    auto pts = pointsOf(lat);
    const double a = evalKernelFom(pts, fomOf(FomFamily::Palpha)).total;
    for (auto& p : pts)
      for (auto& x : p) x = x == 0 ? 0 : 1 - x;
    EXPECT_NEAR(evalKernelFom(pts, fomOf(FomFamily::Palpha)).total, a, 1e-12);
  }
}

TEST(TValue, Examples) {
  for (int k = 2; k <= 6; ++k) {
    const DigitalNet dup(k, {GeneratingMatrix::identity(k), GeneratingMatrix::identity(k)});
    EXPECT_EQ(tValue(dup, std::vector<int>{0}), 0);
    EXPECT_EQ(tValue(dup, std::vector<int>{0, 1}), k - 1);
    EXPECT_EQ(oracleTValueBoxCount(dup, std::vector<int>{0, 1}), k - 1);
  }
  EXPECT_EQ(oracleTValueBoxCount(DigitalNet(4, {GeneratingMatrix::identity(4)}), std::vector<int>{0}), 0);
}

TEST(TValue, MatchesBoxCountOracle) {
  std::mt19937_64 rng(14);
  for (int it = 0; it < 60; ++it) {
    const int k = 1 + static_cast<int>(rng() % 6);
    const int s = 1 + static_cast<int>(rng() % 3);
    const auto net = randomNet(rng, k, s);
    std::vector<int> u(static_cast<std::size_t>(s));
    std::iota(u.begin(), u.end(), 0);
    ASSERT_EQ(tValue(net, u), oracleTValueBoxCount(net, u)) << k << " " << s;
  }
}

TEST(TValue, BoundExamples) {
  EXPECT_EQ(tValueDiscrepancyBound(0, 5, 1), 1.0 / 32);
  EXPECT_EQ(tValueDiscrepancyBound(5, 5, 1), 1.0);
  EXPECT_EQ(tValueDiscrepancyBound(5, 5, 3), 1.0);
  EXPECT_EQ(tValueDiscrepancyBound(1, 5, 3), 2.0 / 32 * (1 + 4 + 6));
}

TEST(TValue, RawCriterionWithInfiniteNorm) {
  const int k = 5;
  const DigitalNet net(k, {GeneratingMatrix::identity(k), GeneratingMatrix::identity(k), GeneratingMatrix::identity(k)});
  const auto f = fomOf(FomFamily::TValueRaw, 2, kInfiniteNorm, WeightSpec::orderDependent({0, 1.0, 0.5}));
  // Pairs have t = 4, the triple t = 4 as well (weight 0.5).
  EXPECT_EQ(tValueBoundFom(net, f).total, 4.0);
  const auto sum = fomOf(FomFamily::TValueRaw, 2, 1.0, WeightSpec::orderDependent({0, 1.0, 0.5}));
  EXPECT_EQ(tValueBoundFom(net, sum).total, 3 * 4.0 + 0.5 * 4);
  EXPECT_EQ(evaluateMerit(net, sum), 3 * 4.0 + 0.5 * 4);
}
