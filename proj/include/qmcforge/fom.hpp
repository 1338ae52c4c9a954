#pragma once

// Figures of merit: coordinate kernels, the weighted projection combiner,
// and t-value based criteria.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmcforge/error.hpp"
#include "qmcforge/gf2.hpp"
#include "qmcforge/pointsets.hpp"
#include "qmcforge/weights.hpp"

namespace qmcforge {

inline constexpr double kInfiniteNorm = std::numeric_limits<double>::infinity();

// Compensated (Neumaier) summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// ---------------------------------------------------------------------------
// floor(log2 x), computed without floating-point logarithms

inline constexpr int kLogOfZero = std::numeric_limits<int>::min();

inline int floorLog2(double x) {
  if (!(x >= 0.0 && x < 1.0)) throw Error("coordinate outside [0, 1)");
  if (x == 0.0) return kLogOfZero;
  int e = 0;
  std::frexp(x, &e);
  return e - 1;
}

// x = y / 2^w.
inline int floorLog2Digits(std::uint64_t y, int w) {
  if (y == 0) return kLogOfZero;
  return std::bit_width(y) - 1 - w;
}

// x = v / n with v < n.
inline int floorLog2Ratio(std::uint64_t v, std::uint64_t n) {
  if (v == 0) return kLogOfZero;
  const int e0 = std::bit_width(v) - std::bit_width(n);  // <= 0
  return (v << -e0) >= n ? e0 : e0 - 1;
}

// 2^(a*e) with the convention 2^(a*log2 0) = 0.
inline double pow2Log(double a, int e) {
  if (e == kLogOfZero) return 0.0;
  const double p = a * e;
  if (p == std::floor(p) && std::fabs(p) < 2000) return std::ldexp(1.0, static_cast<int>(p));
  return std::exp2(p);
}

// ---------------------------------------------------------------------------
// Kernels

inline double bernoulliNumber(int m) {
  static const std::vector<double> table = [] {
    // B_0..B_30 from the recurrence sum_{j<=m} C(m+1, j) B_j = 0.
    std::vector<double> b(31, 0.0);
    b[0] = 1.0;
    for (int m = 1; m <= 30; ++m) {
      double acc = 0.0;
      double binom = 1.0;  // C(m+1, j)
      for (int j = 0; j < m; ++j) {
        acc += binom * b[static_cast<std::size_t>(j)];
        binom = binom * (m + 1 - j) / (j + 1);
      }
      b[static_cast<std::size_t>(m)] = -acc / (m + 1);
    }
    return b;
  }();
  if (m < 0 || m > 30) throw Error("Bernoulli number index out of range");
  return table[static_cast<std::size_t>(m)];
}

inline double bernoulliPolynomial(int degree, double x) {
  if (degree == 2) return x * x - x + 1.0 / 6.0;
  if (degree == 4) return x * x * (x * x - 2.0 * x + 1.0) - 1.0 / 30.0;
  double sum = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= degree; ++j) {
    sum += binom * bernoulliNumber(j) * std::pow(x, degree - j);
    binom = binom * (degree - j) / (j + 1);
  }
  return sum;
}

inline bool isEvenInteger(double a) { return a >= 2 && a == std::floor(a) && static_cast<long>(a) % 2 == 0; }

inline double palphaScale(int alpha) {
  return -std::pow(-4.0 * std::numbers::pi * std::numbers::pi, alpha / 2) / std::tgamma(alpha + 1.0);
}

inline double kernelPalpha(double x, double alpha) {
  if (!isEvenInteger(alpha) || alpha > 30) {
    throw Error("the P_alpha kernel needs an even integer alpha; use oraclePalphaDual for other values");
  }
  const int a = static_cast<int>(alpha);
  return palphaScale(a) * bernoulliPolynomial(a, x);
}

inline double muAlpha(double alpha) { return 1.0 / (1.0 - std::exp2(1.0 - alpha)); }

inline double palphaTildeFromLog(int e, double alpha) {
  const double mu = muAlpha(alpha);
  if (e == kLogOfZero) return mu;
  return mu - pow2Log(alpha - 1.0, 1 + e) * (mu + 1.0);
}

inline double kernelPalphaTilde(double x, double alpha) {
  if (!(alpha > 1.0)) throw Error("P~_alpha needs alpha > 1");
  return palphaTildeFromLog(floorLog2(x), alpha);
}

inline double kernelSobolev1(double x) { return kernelPalphaTilde(x, 2.0) / 12.0; }

inline double r2primeFromLog(int e, int k) {
  if (e != kLogOfZero && e >= -k) return -e / 2.0;
  return 1.0 + k / 2.0;
}

// ---------------------------------------------------------------------------
// FomSpec

enum class FomFamily { Palpha, PalphaTilde, Sobolev1, IAlphaDa, IAlphaDb, IAlphaDc, R2prime, TValueBound, TValueRaw };

inline std::string familyName(FomFamily f) {
  switch (f) {
    case FomFamily::Palpha: return "P";
    case FomFamily::PalphaTilde: return "Ptilde";
    case FomFamily::Sobolev1: return "sobolev1";
    case FomFamily::IAlphaDa: return "IA";
    case FomFamily::IAlphaDb: return "IB";
    case FomFamily::IAlphaDc: return "IC";
    case FomFamily::R2prime: return "R2prime";
    case FomFamily::TValueBound: return "t-bound";
    case FomFamily::TValueRaw: return "t-value";
  }
  return "?";
}

struct FomSpec {
  FomFamily family = FomFamily::PalphaTilde;
  double alpha = 2.0;
  int d = 1;
  double q = 2.0;
  WeightSpec weights = WeightSpec::product({}, 1.0);

  bool hasKernel() const { return family != FomFamily::TValueBound && family != FomFamily::TValueRaw; }
  bool isInterlacedFamily() const {
    return family == FomFamily::IAlphaDa || family == FomFamily::IAlphaDb || family == FomFamily::IAlphaDc;
  }
  bool isInfinite() const { return std::isinf(q); }

  // Exponent of the per-projection quantity a kernel average stands for.
  double nativeExponent() const {
    switch (family) {
      case FomFamily::Palpha:
      case FomFamily::PalphaTilde:
      case FomFamily::Sobolev1:
      case FomFamily::IAlphaDc:
        return 2.0;
      default:
        return 1.0;
    }
  }

  void validate() const {
    if (!(q >= 1.0)) throw Error("norm exponent q must be in [1, inf]");
    if (d < 1) throw Error("interlacing factor d must be >= 1");
    if (!isInterlacedFamily() && d != 1) throw Error("interlacing factor d > 1 needs an IA, IB or IC criterion");
    const bool integral = alpha == std::floor(alpha);
    switch (family) {
      case FomFamily::Palpha:
        if (!isEvenInteger(alpha)) throw Error("P_alpha needs an even integer alpha >= 2");
        break;
      case FomFamily::PalphaTilde:
        if (!(alpha > 1.0)) throw Error("P~_alpha needs alpha > 1");
        break;
      case FomFamily::IAlphaDa:
        if (!integral || alpha < 2 || d < 2) throw Error("IA needs an integer alpha >= 2 and d > 1");
        if (q != 1.0 && !isInfinite()) throw Error("IA is defined with q = 1");
        break;
      case FomFamily::IAlphaDb:
        if (!integral || d < 2 || d > alpha) throw Error("IB needs 1 < d <= alpha");
        if (q != 1.0 && !isInfinite()) throw Error("IB is defined with q = 1");
        break;
      case FomFamily::IAlphaDc:
        if (!integral || alpha < 1) throw Error("IC needs an integer alpha >= 1");
        if (q != 2.0 && !isInfinite()) throw Error("IC is defined with q = 2");
        break;
      default:
        break;
    }
  }

  // Per-order factor turning gamma_u into the criterion's gamma~_u.
  std::optional<double> weightFactor() const {
    if (family == FomFamily::IAlphaDa) return std::exp2(alpha * (2 * d - 1) / 2.0);
    if (family == FomFamily::IAlphaDc) return std::exp2(2.0 * std::max(d - alpha, 0.0) + (2 * d - 1) * alpha);
    return std::nullopt;
  }

  // gamma~_u^q (or gamma~_u itself when q is infinite).
  WeightSpec effectiveWeights() const {
    WeightSpec w = weights;
    if (auto f = weightFactor()) w = w.transformed(PerOrderFactor::geometric(*f));
    return isInfinite() ? w : w.powered(q);
  }
};

// One-dimensional kernel phi for a given family. For interlaced families
// this is phi_{alpha,d,ell} of inner coordinate ell (1-based); `k` is the
// size exponent used by R2prime.
class CoordinateKernel {
 public:
  CoordinateKernel(const FomSpec& fom, int ell = 1, int k = 0) : family_(fom.family), alpha_(fom.alpha), k_(k) {
    if (!fom.hasKernel()) throw Error("criterion " + familyName(fom.family) + " has no kernel");
    const int d = fom.d;
    switch (family_) {
      case FomFamily::Palpha:
        if (!isEvenInteger(alpha_)) throw Error("P_alpha needs an even integer alpha");
        scale_ = palphaScale(static_cast<int>(alpha_));
        break;
      case FomFamily::IAlphaDa: {
        const double m = std::min<double>(alpha_, d);
        a_ = m - 1;
        b_ = std::exp2(m) - 1;
        scale_ = 1.0 / (std::exp2((alpha_ + 2) / 2.0) * (std::exp2(m - 1) - 1));
        break;
      }
      case FomFamily::IAlphaDb:
        a_ = d - 1;
        b_ = std::exp2(d) - 1;
        scale_ = std::exp2(d - 1) / (std::exp2(ell) * (std::exp2(d - 1) - 1));
        break;
      case FomFamily::IAlphaDc: {
        const double m = std::min<double>(alpha_, d);
        a_ = 2 * m;
        b_ = std::exp2(2 * m + 1) - 1;
        scale_ = 1.0 / (std::exp2(alpha_) * (std::exp2(2 * m) - 1));
        break;
      }
      default:
        break;
    }
  }

  bool dependsOnValue() const { return family_ == FomFamily::Palpha; }

  // Kernel as a function of e = floor(log2 x) (kLogOfZero for x = 0).
  double fromLog(int e) const {
    switch (family_) {
      case FomFamily::PalphaTilde: return palphaTildeFromLog(e, alpha_);
      case FomFamily::Sobolev1: return palphaTildeFromLog(e, 2.0) / 12.0;
      case FomFamily::R2prime: return r2primeFromLog(e, k_);
      case FomFamily::IAlphaDa:
      case FomFamily::IAlphaDb:
      case FomFamily::IAlphaDc: return scale_ * (1.0 - pow2Log(a_, e) * b_);
      default: throw Error("kernel depends on more than floor(log2 x)");
    }
  }

  double operator()(double x) const {
    if (family_ == FomFamily::Palpha) {
      if (!(x >= 0.0 && x < 1.0)) throw Error("coordinate outside [0, 1)");
      return scale_ * bernoulliPolynomial(static_cast<int>(alpha_), x);
    }
    return fromLog(floorLog2(x));
  }

  // x = y / 2^w.
  double fromDigits(std::uint64_t y, int w) const {
    if (family_ == FomFamily::Palpha) return (*this)(digitsToUnit(y, w));
    return fromLog(floorLog2Digits(y, w));
  }

  // x = v / n. P_alpha uses min(v, n - v) so the value is exactly
  // reflection symmetric.
  double fromRatio(std::uint64_t v, std::uint64_t n) const {
    if (family_ == FomFamily::Palpha) {
      const std::uint64_t r = v == 0 ? 0 : std::min(v, n - v);
      return scale_ * bernoulliPolynomial(static_cast<int>(alpha_), static_cast<double>(r) / static_cast<double>(n));
    }
    return fromLog(floorLog2Ratio(v, n));
  }

  // Table of fromDigits indexed by bit_width(y), valid when !dependsOnValue().
  std::vector<double> digitTable(int w) const {
    std::vector<double> t(static_cast<std::size_t>(w) + 1);
    t[0] = fromLog(kLogOfZero);
    for (int b = 1; b <= w; ++b) t[static_cast<std::size_t>(b)] = fromLog(b - 1 - w);
    return t;
  }

 private:
  FomFamily family_;
  double alpha_;
  int k_;
  double scale_ = 1.0;
  double a_ = 0.0;
  double b_ = 0.0;
};

struct MeritValue {
  double total = 0.0;
  std::optional<std::map<Subset, double>> perProjection;
};

// Combines per-projection quantities D_u (kernel averages, or t-based values
// already raised to q) with weights g_u (already gamma~^q, or gamma~ for q = inf).
inline double combineProjection(double accumulated, double weight, double du, const FomSpec& fom) {
  if (fom.isInfinite()) return std::max(accumulated, weight * std::pow(std::max(0.0, du), 1.0 / fom.nativeExponent()));
  return accumulated + weight * du;
}

// ---------------------------------------------------------------------------
// Direct evaluation on explicit point lists

namespace detail {

inline void checkPoints(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw Error("empty point set");
  const std::size_t s = points.front().size();
  if (s == 0) throw Error("points have no coordinates");
  for (const auto& p : points) {
    if (p.size() != s) throw Error("points have inconsistent dimensions");
    for (double x : p) {
      if (!(x >= 0.0 && x < 1.0)) throw Error("coordinate outside [0, 1)");
    }
  }
}

inline int sizeExponentOf(std::size_t n) {
  if (!std::has_single_bit(n)) throw Error("R2prime needs a power-of-two number of points");
  return std::countr_zero(n);
}

// Sum over nonempty subsets of (weight, average of products) using cols[j][i].
inline MeritValue subsetSumMerit(const std::vector<std::vector<double>>& cols, const FomSpec& fom, double offset,
                                 bool keepProjections) {
  const int s = static_cast<int>(cols.size());
  if (s > 20) throw Error("subset enumeration limited to 20 coordinates");
  const std::size_t n = cols.front().size();
  const std::size_t masks = std::size_t{1} << s;
  std::vector<CompensatedSum> sums(masks);
  std::vector<double> prod(masks);
  prod[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t m = 1; m < masks; ++m) {
      const int low = std::countr_zero(m);
      prod[m] = prod[m & (m - 1)] * cols[static_cast<std::size_t>(low)][i];
      sums[m].add(prod[m]);
    }
  }
  const WeightSpec w = fom.effectiveWeights();
  MeritValue out;
  if (keepProjections) out.perProjection.emplace();
  double total = 0.0;
  CompensatedSum acc;
  for (std::size_t m = 1; m < masks; ++m) {
    Subset u;
    for (int j = 0; j < s; ++j) {
      if ((m >> j) & 1U) u.push_back(j);
    }
    const double du = sums[m].value() / static_cast<double>(n) - offset;
    if (out.perProjection) (*out.perProjection)[u] = du;
    const double g = w.weightOf(u);
    if (fom.isInfinite()) {
      total = combineProjection(total, g, du, fom);
    } else {
      acc.add(g * du);
    }
  }
  out.total = fom.isInfinite() ? total : acc.value();
  return out;
}

}  // namespace detail

// D^q = sum_u gamma~_u^q (1/n) sum_i prod_{j in u} phi(u_ij), by explicit
// enumeration of all 2^s - 1 projections (s <= 20). Interlaced families take
// the inner s*d-dimensional points.
inline MeritValue evalInterlacedFom(const std::vector<std::vector<double>>& innerPoints, const FomSpec& fom);

inline MeritValue evalKernelFom(const std::vector<std::vector<double>>& points, const FomSpec& fom) {
  fom.validate();
  if (!fom.hasKernel()) throw Error("criterion " + familyName(fom.family) + " has no kernel");
  if (fom.isInterlacedFamily()) return evalInterlacedFom(points, fom);
  detail::checkPoints(points);
  const std::size_t s = points.front().size();
  const int k = fom.family == FomFamily::R2prime ? detail::sizeExponentOf(points.size()) : 0;
  const CoordinateKernel phi(fom, 1, k);
  std::vector<std::vector<double>> cols(s, std::vector<double>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < s; ++j) cols[j][i] = phi(points[i][j]);
  }
  return detail::subsetSumMerit(cols, fom, fom.family == FomFamily::R2prime ? 1.0 : 0.0, true);
}

inline MeritValue evalInterlacedFom(const std::vector<std::vector<double>>& innerPoints, const FomSpec& fom) {
  fom.validate();
  if (!fom.isInterlacedFamily()) throw Error("evalInterlacedFom needs an IA, IB or IC criterion");
  detail::checkPoints(innerPoints);
  const std::size_t sd = innerPoints.front().size();
  const auto d = static_cast<std::size_t>(fom.d);
  if (sd % d != 0) throw Error("inner dimension " + std::to_string(sd) + " is not a multiple of d");
  const std::size_t s = sd / d;
  std::vector<CoordinateKernel> phis;
  for (std::size_t l = 0; l < d; ++l) phis.emplace_back(fom, static_cast<int>(l) + 1);
  std::vector<std::vector<double>> cols(s, std::vector<double>(innerPoints.size()));
  for (std::size_t i = 0; i < innerPoints.size(); ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      if (d == 1) {
        cols[j][i] = phis[0](innerPoints[i][j]);
        continue;
      }
      double p = 1.0;
      for (std::size_t l = 0; l < d; ++l) p *= 1.0 + phis[l](innerPoints[i][j * d + l]);
      cols[j][i] = p - 1.0;
    }
  }
  return detail::subsetSumMerit(cols, fom, 0.0, true);
}

// -1 + (1/n) sum_i prod_j (1 + gamma_j^q phi(u_ij)) for product weights.
inline MeritValue evalProductWeightFast(const std::vector<std::vector<double>>& points, const FomSpec& fom) {
  fom.validate();
  if (fom.weights.kind() != WeightSpec::Kind::Product) throw Error("evalProductWeightFast needs product weights");
  if (fom.isInfinite()) throw Error("evalProductWeightFast needs a finite q");
  if (fom.isInterlacedFamily() || !fom.hasKernel()) throw Error("evalProductWeightFast needs a plain kernel criterion");
  detail::checkPoints(points);
  const std::size_t s = points.front().size();
  const int k = fom.family == FomFamily::R2prime ? detail::sizeExponentOf(points.size()) : 0;
  const CoordinateKernel phi(fom, 1, k);
  const WeightSpec w = fom.effectiveWeights();
  std::vector<double> g(s);
  for (std::size_t j = 0; j < s; ++j) g[j] = w.coordinateWeight(static_cast<int>(j));
  CompensatedSum acc;
  for (const auto& p : points) {
    double prod = 1.0;
    for (std::size_t j = 0; j < s; ++j) prod *= 1.0 + g[j] * phi(p[j]);
    acc.add(prod - 1.0);
  }
  double total = acc.value() / static_cast<double>(points.size());
  if (fom.family == FomFamily::R2prime) {
    double all = 1.0;
    for (double gj : g) all *= 1.0 + gj;
    total -= all - 1.0;
  }
  return {total, std::nullopt};
}

// R'_2 with weights gamma_u on points of a net with 2^k points.
inline MeritValue evalR2prime(const std::vector<std::vector<double>>& points, const WeightSpec& weights) {
  FomSpec fom;
  fom.family = FomFamily::R2prime;
  fom.q = 1.0;
  fom.weights = weights;
  return evalKernelFom(points, fom);
}

// ---------------------------------------------------------------------------
// t-values

namespace detail {

// True when every choice of q_j >= 0 rows with sum q_j = m, taken from the
// top of each matrix, gives linearly independent rows (restricted to k bits).
inline bool allCompositionsIndependent(const std::vector<const GeneratingMatrix*>& mats, std::size_t idx, int m,
                                       std::uint64_t mask, const Gf2Basis& basis) {
  const GeneratingMatrix& c = *mats[idx];
  if (idx + 1 == mats.size()) {
    if (m > c.rows()) return false;
    Gf2Basis b = basis;
    for (int r = 0; r < m; ++r) {
      if (!b.insert(c.row(r) & mask)) return false;
    }
    return true;
  }
  Gf2Basis b = basis;
  for (int q = 0; q <= m; ++q) {
    if (!allCompositionsIndependent(mats, idx + 1, m - q, mask, b)) return false;
    if (q == m) break;
    if (q >= c.rows() || !b.insert(c.row(q) & mask)) return false;
  }
  return true;
}

}  // namespace detail

// t-value of the projection on the given matrices, for the first 2^k points
// (columns beyond k are ignored).
inline int tValueOfMatrices(const std::vector<const GeneratingMatrix*>& mats, int k) {
  if (mats.empty()) throw Error("t-value of an empty projection");
  if (k < 0 || k > 63) throw Error("k out of range");
  const std::uint64_t mask = k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  for (int m = k; m > 0; --m) {
    if (detail::allCompositionsIndependent(mats, 0, m, mask, Gf2Basis{})) return k - m;
  }
  return k;
}

inline int tValue(const DigitalNet& net, std::span<const int> u) {
  if (u.empty()) throw Error("t-value of an empty projection");
  std::vector<const GeneratingMatrix*> mats;
  for (int j : u) {
    if (j < 0 || j >= net.dimension()) throw Error("coordinate index out of range");
    mats.push_back(&net.matrix(j));
  }
  return tValueOfMatrices(mats, net.k());
}

// Star-discrepancy bound (2^t / n) sum_{j=0}^{min(|u|-1, k-t)} C(k-t, j).
inline double tValueDiscrepancyBound(int t, int k, int order) {
  double sum = 0.0;
  double binom = 1.0;
  const int top = std::min(order - 1, k - t);
  for (int j = 0; j <= top; ++j) {
    sum += binom;
    binom = binom * (k - t - j) / (j + 1);
  }
  return std::ldexp(sum, t - k);
}

// Calls fn(subset) for every nonempty subset of {0..s-1} with a possibly
// nonzero weight, in order of size then lexicographically.
template <class Fn>
void forEachWeightedSubset(const WeightSpec& w, int s, Fn&& fn, std::uint64_t guard = std::uint64_t{1} << 22) {
  if (w.kind() == WeightSpec::Kind::Explicit) {
    std::vector<Subset> subsets;
    for (const auto& [u, g] : w.explicitWeights()) {
      if (g != 0.0 && u.back() < s) subsets.push_back(u);
    }
    std::stable_sort(subsets.begin(), subsets.end(), [](const Subset& a, const Subset& b) { return a.size() < b.size(); });
    for (const auto& u : subsets) fn(u);
    return;
  }
  const int maxOrder = w.maxOrder(s);
  double count = 0.0;
  for (int r = 1; r <= maxOrder; ++r) {
    double c = 1.0;
    for (int i = 0; i < r; ++i) c = c * (s - i) / (i + 1);
    count += c;
  }
  if (count > static_cast<double>(guard)) {
    throw Error("projection enumeration over " + std::to_string(static_cast<long double>(count)) + " subsets exceeds the guard");
  }
  for (int r = 1; r <= maxOrder; ++r) {
    Subset u(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) u[static_cast<std::size_t>(i)] = i;
    for (;;) {
      fn(static_cast<const Subset&>(u));
      int i = r - 1;
      while (i >= 0 && u[static_cast<std::size_t>(i)] == s - r + i) --i;
      if (i < 0) break;
      ++u[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < r; ++j) u[static_cast<std::size_t>(j)] = u[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

// Per-projection value of the t-based criteria.
inline double tProjectionValue(const FomSpec& fom, int t, int k, int order) {
  const double du = fom.family == FomFamily::TValueRaw ? t : tValueDiscrepancyBound(t, k, order);
  return fom.isInfinite() ? du : std::pow(du, fom.q);
}

// Weighted t-value criterion: TValueBound uses the star-discrepancy bound per
// projection, TValueRaw uses t_u itself.
inline MeritValue tValueBoundFom(const DigitalNet& net, const FomSpec& fom) {
  fom.validate();
  if (fom.hasKernel()) throw Error("tValueBoundFom needs a t-value criterion");
  const WeightSpec w = fom.effectiveWeights();
  MeritValue out;
  out.perProjection.emplace();
  double total = 0.0;
  CompensatedSum acc;
  forEachWeightedSubset(fom.weights, net.dimension(), [&](const Subset& u) {
    const double g = w.weightOf(u);
    const int t = tValue(net, u);
    (*out.perProjection)[u] = t;
    const double v = tProjectionValue(fom, t, net.k(), static_cast<int>(u.size()));
    if (fom.isInfinite()) {
      total = std::max(total, g * v);
    } else {
      acc.add(g * v);
    }
  });
  out.total = fom.isInfinite() ? total : acc.value();
  return out;
}

}  // namespace qmcforge
