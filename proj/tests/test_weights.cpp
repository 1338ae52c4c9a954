#include <gtest/gtest.h>

#include <qmcforge/weights.hpp>

#include <cmath>
#include <random>

using namespace qmcforge;

namespace {

std::vector<Subset> allSubsets(int s) {
  std::vector<Subset> out;
  for (unsigned m = 1; m < (1U << s); ++m) {
    Subset u;
    for (int j = 0; j < s; ++j)
      if (m & (1U << j)) u.push_back(j);
    out.push_back(u);
  }
  return out;
}

}  // namespace

TEST(Weights, Examples) {
  const auto prod = WeightSpec::product({0.5, 0.5});
  EXPECT_DOUBLE_EQ(prod.weightOf(Subset{0, 1}), 0.25);

  const auto od = WeightSpec::orderDependent({0, 10, 0.1, 0.001});
  EXPECT_EQ(od.weightOf(Subset{2, 5}), 10.0);
  EXPECT_EQ(od.weightOf(Subset{0, 1, 2}), 0.1);
  EXPECT_EQ(od.weightOf(Subset{0, 1, 2, 3, 4}), 0.0);

  const auto geo = WeightSpec::product({}, 0.7);
  EXPECT_NEAR(geo.weightOf(Subset{0, 1, 2}), 0.343, 1e-15);
}

TEST(Weights, Errors) {
  const auto prod = WeightSpec::product({0.5, 0.5});
  EXPECT_THROW(prod.weightOf(Subset{}), Error);
  EXPECT_THROW(prod.weightOf(Subset{2}), Error);
  EXPECT_THROW(WeightSpec::product({-1.0}), Error);
  EXPECT_THROW(WeightSpec::orderDependent({INFINITY}), Error);
  EXPECT_THROW(WeightSpec::explicitMap({{Subset{}, 1.0}}), Error);
}

TEST(Weights, ExplicitDefaultsToZero) {
  const auto w = WeightSpec::explicitMap({{Subset{0, 1}, 0.5}, {Subset{2}, 1.0}});
  EXPECT_EQ(w.weightOf(Subset{1, 0}), 0.5);
  EXPECT_EQ(w.weightOf(Subset{2}), 1.0);
  EXPECT_EQ(w.weightOf(Subset{0}), 0.0);
  EXPECT_EQ(w.maxOrder(5), 2);
}

TEST(Weights, ProductRecursion) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> g(0, 2);
  std::vector<double> gammas(8);
  for (auto& x : gammas) x = g(rng);
  const auto w = WeightSpec::product(gammas);
  for (const auto& u : allSubsets(8)) {
    for (int j = 0; j < 8; ++j) {
      if (std::find(u.begin(), u.end(), j) != u.end()) continue;
      Subset v = u;
      v.push_back(j);
      std::sort(v.begin(), v.end());
      EXPECT_DOUBLE_EQ(w.weightOf(v), w.weightOf(u) * gammas[j]);
    }
  }
}

TEST(Weights, PodReducesToOrderAndProduct) {
  const int s = 10;
  const std::vector<double> orders{0.3, 2.0, 0.7, 1.5, 0.1, 4, 2, 1, 0.5, 3};
  const std::vector<double> gammas{0.9, 0.8, 0.5, 0.25, 1.5, 2, 0.125, 1, 3, 0.75};
  const auto podOrder = WeightSpec::pod(orders, std::vector<double>(s, 1.0));
  const auto order = WeightSpec::orderDependent(orders);
  const auto podProd = WeightSpec::pod(std::vector<double>(s, 1.0), gammas);
  const auto prod = WeightSpec::product(gammas);
  for (const auto& u : allSubsets(s)) {
    ASSERT_EQ(podOrder.weightOf(u), order.weightOf(u));
    ASSERT_EQ(podProd.weightOf(u), prod.weightOf(u));
  }
}

TEST(Weights, TransformExamples) {
  const auto w = WeightSpec::product({}, 0.5);
  const auto same = transformWeights(w, PerOrderFactor::general([](int) { return 1.0; }));
  for (const auto& u : allSubsets(5)) EXPECT_EQ(same.weightOf(u), w.weightOf(u));

  // Interlaced factor D_{2,2} = 2^(2 max(d - alpha, 0) + (2d - 1) alpha) = 64.
  const double d22 = std::exp2(2 * std::max(2 - 2, 0) + (2 * 2 - 1) * 2);
  EXPECT_EQ(d22, 64.0);
  const auto one = WeightSpec::product({}, 1.0);
  const auto scaled = transformWeights(one, PerOrderFactor::geometric(d22));
  EXPECT_EQ(scaled.kind(), WeightSpec::Kind::Product);
  EXPECT_EQ(scaled.weightOf(Subset{0, 3}), 4096.0);

  const auto sob = transformWeights(w, PerOrderFactor::geometric(1.0 / 12));
  EXPECT_DOUBLE_EQ(sob.weightOf(Subset{2}), 0.5 / 12);
}

TEST(Weights, TransformIsMultiplicativeForEveryKind) {
  const std::vector<WeightSpec> specs{
      WeightSpec::product({0.5, 2, 0.25, 1, 3}), WeightSpec::orderDependent({1, 0.5, 0.25}, 0.1),
      WeightSpec::pod({1, 2, 3}, {0.5, 0.5, 2, 1, 1}, 1.0),
      WeightSpec::explicitMap({{Subset{0, 1}, 0.5}, {Subset{4}, 2.0}, {Subset{1, 2, 3}, 3.0}})};
  const auto f = PerOrderFactor::general([](int o) { return 1.0 + o; });
  const auto g = PerOrderFactor::geometric(3.0);
  const auto fg = PerOrderFactor::general([](int o) { return (1.0 + o) * std::pow(3.0, o); });
  for (const auto& w : specs) {
    const auto a = w.transformed(f).transformed(g);
    const auto b = w.transformed(fg);
    const auto c = w.transformed(f);
    for (const auto& u : allSubsets(5)) {
      EXPECT_DOUBLE_EQ(a.weightOf(u), b.weightOf(u));
      EXPECT_DOUBLE_EQ(c.weightOf(u), (1.0 + u.size()) * w.weightOf(u));
    }
  }
}

TEST(Weights, PoweredRaisesEachWeight) {
  const auto w = WeightSpec::pod({1, 2, 3}, {0.5, 0.5, 2, 1}, 1.0);
  const auto w2 = w.powered(2.0);
  for (const auto& u : allSubsets(4)) EXPECT_DOUBLE_EQ(w2.weightOf(u), w.weightOf(u) * w.weightOf(u));
}
