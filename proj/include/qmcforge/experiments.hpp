#pragma once

// Test integrands, variance identities and desk-scale studies: merit
// quantiles over random constructions, RQMC variance convergence and
// t-value histograms.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qmcforge/error.hpp"
#include "qmcforge/fom.hpp"
#include "qmcforge/objective.hpp"
#include "qmcforge/pointsets.hpp"
#include "qmcforge/randomize.hpp"
#include "qmcforge/rng.hpp"
#include "qmcforge/search.hpp"

namespace qmcforge {

// ---------------------------------------------------------------------------
// Test integrands

// prod_j (1 + c_j (u_j - 1/2)); integral 1.
inline double evalProdLinear(const std::vector<double>& c, const std::vector<double>& u) {
  if (c.size() != u.size()) throw Error("prodLinear: dimension mismatch");
  double p = 1.0;
  for (std::size_t j = 0; j < c.size(); ++j) p *= 1.0 + c[j] * (u[j] - 0.5);
  return p;
}

inline constexpr double kPsiOffset = 0.05;

inline double psiFunction(double x) { return 1.0 / ((x - 0.5) * (x - 0.5) + kPsiOffset); }

// E[psi(U)] by the arctan antiderivative.
inline double psiMean() {
  const double r = std::sqrt(kPsiOffset);
  return 2.0 / r * std::atan(0.5 / r);
}

// prod_{j<5} (psi(u_j) - mu) + prod_{5<=j<10} (psi(u_j) - mu); integral 0.
inline double evalAnovaPsi(const std::vector<double>& u) {
  if (u.size() != 10) throw Error("anovaPsi needs a 10-dimensional point");
  const double mu = psiMean();
  double a = 1.0, b = 1.0;
  for (int j = 0; j < 5; ++j) a *= psiFunction(u[static_cast<std::size_t>(j)]) - mu;
  for (int j = 5; j < 10; ++j) b *= psiFunction(u[static_cast<std::size_t>(j)]) - mu;
  return a + b;
}

// Finite Fourier series sum_h fhat(h) exp(2 pi i h.u); the real part is used.
using TrigPoly = std::map<std::vector<std::int64_t>, std::complex<double>>;

inline double evalTrigPoly(const TrigPoly& f, const std::vector<double>& u) {
  std::complex<double> sum = 0.0;
  for (const auto& [h, c] : f) {
    if (h.size() != u.size()) throw Error("trigPoly: dimension mismatch");
    double phase = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) phase += static_cast<double>(h[j]) * u[j];
    sum += c * std::polar(1.0, 2.0 * std::numbers::pi * phase);
  }
  return sum.real();
}

struct TestIntegrand {
  enum class Kind { ProdLinear, AnovaPsi, TrigPoly, Constant };
  Kind kind = Kind::ProdLinear;
  std::vector<double> c;  // prodLinear coefficients, or {value} for constant
  TrigPoly trig;

  static TestIntegrand prodLinear(std::vector<double> c) { return {Kind::ProdLinear, std::move(c), {}}; }
  static TestIntegrand anovaPsi() { return {Kind::AnovaPsi, {}, {}}; }
  static TestIntegrand trigPoly(TrigPoly f) { return {Kind::TrigPoly, {}, std::move(f)}; }
  static TestIntegrand constant(double v) { return {Kind::Constant, {v}, {}}; }

  int dimension() const {
    switch (kind) {
      case Kind::ProdLinear: return static_cast<int>(c.size());
      case Kind::AnovaPsi: return 10;
      case Kind::TrigPoly: return trig.empty() ? 0 : static_cast<int>(trig.begin()->first.size());
      case Kind::Constant: return 0;
    }
    return 0;
  }

  double operator()(const std::vector<double>& u) const {
    switch (kind) {
      case Kind::ProdLinear: return evalProdLinear(c, u);
      case Kind::AnovaPsi: return evalAnovaPsi(u);
      case Kind::TrigPoly: return evalTrigPoly(trig, u);
      case Kind::Constant: return c.at(0);
    }
    return 0.0;
  }

  double exactIntegral() const {
    switch (kind) {
      case Kind::ProdLinear: return 1.0;
      case Kind::AnovaPsi: return 0.0;
      case Kind::TrigPoly: {
        const auto it = trig.find(std::vector<std::int64_t>(static_cast<std::size_t>(dimension()), 0));
        return it == trig.end() ? 0.0 : it->second.real();
      }
      case Kind::Constant: return c.at(0);
    }
    return 0.0;
  }
};

// ---------------------------------------------------------------------------
// Variance identities for randomly shifted lattices

struct DualVarianceReport {
  double dualSum = 0.0;       // sum over nonzero dual h of |fhat(h)|^2
  double characterSum = 0.0;  // variance from the point set's character sums
  double difference = 0.0;
};

// (a) membership test h.a = 0 mod n; (b) the shifted estimator equals
// sum_h fhat(h) S(h) e(h.Delta) with S(h) = (1/n) sum_i e(h.x_i), so its
// variance is sum_{h != 0} |fhat(h) S(h)|^2.
inline DualVarianceReport dualVarianceIdentityCheck(const Rank1Lattice& lat, const TrigPoly& f) {
  if (f.empty()) throw Error("trigonometric polynomial has empty support");
  const std::uint64_t n = lat.size();
  const auto& a = lat.generator();
  CompensatedSum dual, chars;
  for (const auto& [h, c] : f) {
    if (h.size() != a.size()) throw Error("trigPoly dimension differs from the lattice");
    const bool zero = std::all_of(h.begin(), h.end(), [](std::int64_t x) { return x == 0; });
    if (zero) continue;
    const auto nn = static_cast<std::int64_t>(n);
    std::int64_t dot = 0;
    for (std::size_t j = 0; j < h.size(); ++j) dot = (dot + (h[j] % nn + nn) % nn * static_cast<std::int64_t>(a[j] % n)) % nn;
    if (dot == 0) dual.add(std::norm(c));

    std::complex<double> s = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto p = lat.point(i);
      double phase = 0.0;
      for (std::size_t j = 0; j < h.size(); ++j) phase += static_cast<double>(h[j]) * p[j];
      s += std::polar(1.0, 2.0 * std::numbers::pi * phase);
    }
    s /= static_cast<double>(n);
    chars.add(std::norm(c * s));
  }
  DualVarianceReport r{dual.value(), chars.value(), 0.0};
  r.difference = std::fabs(r.dualSum - r.characterSum);
  return r;
}

// Exact variance of the randomly shifted lattice estimator of prodLinear:
// (1/n) sum_i prod_j (1 + c_j^2 B_2(x_ij) / 2) - 1.
inline double prodLinearShiftVariance(const Rank1Lattice& lat, const std::vector<double>& c) {
  if (c.size() != static_cast<std::size_t>(lat.dimension())) throw Error("prodLinear: dimension mismatch");
  CompensatedSum sum;
  for (std::uint64_t i = 0; i < lat.size(); ++i) {
    const auto p = lat.point(i);
    double prod = 1.0;
    for (std::size_t j = 0; j < c.size(); ++j) prod *= 1.0 + c[j] * c[j] * bernoulliPolynomial(2, p[j]) / 2.0;
    sum.add(prod);
  }
  return sum.value() / static_cast<double>(lat.size()) - 1.0;
}

// ---------------------------------------------------------------------------
// Merit quantiles over random constructions

// Type-7 (linear interpolation) empirical quantile of sorted data.
inline double quantileSorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw Error("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw Error("quantile level must lie in [0, 1]");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

struct QuantileRow {
  int k = 0;
  std::vector<double> quantiles;
  std::optional<double> reference;  // CBC merit for comparison
};

struct QuantileStudy {
  std::vector<double> levels;
  std::vector<QuantileRow> rows;

  std::string toTsv() const {
    std::ostringstream out;
    out.precision(10);
    out << "k";
    for (double p : levels) out << "\tq" << p;
    out << "\tcbc\n";
    for (const auto& r : rows) {
      out << r.k;
      for (double q : r.quantiles) out << '\t' << q;
      out << '\t';
      if (r.reference) out << *r.reference;
      else out << "nan";
      out << '\n';
    }
    return out.str();
  }
};

struct QuantileStudySpec {
  Construction construction = Construction::Polynomial;  // Polynomial, Sobol or Explicit
  FomSpec fom;
  int s = 6;
  std::vector<int> kGrid;
  std::uint64_t sampleSize = 100;
  std::vector<double> levels{0.1, 0.5, 0.9};
  std::uint64_t seed = 0;
  bool reference = true;
  int threads = 1;
};

// Merit of sampleSize i.i.d. uniform constructions per k; sample i of k
// draws coordinate t from stream (seed, Sampling, k * 2^32 + i, t).
inline QuantileStudy fomQuantileStudy(const QuantileStudySpec& spec) {
  if (spec.sampleSize < 1) throw Error("sample size must be >= 1");
  if (spec.construction == Construction::OrdinaryLattice || spec.construction == Construction::HigherOrderPolynomial) {
    throw Error("quantile study samples polynomial lattice rules, Sobol' nets or explicit matrices");
  }
  spec.fom.validate();
  QuantileStudy study{spec.levels, {}};
  for (int k : spec.kGrid) {
    SearchSpec ss;
    ss.construction = spec.construction;
    ss.k = k;
    ss.s = spec.s;
    ss.fom = spec.fom;
    ss.seed = spec.seed;
    ss.threads = spec.threads;
    const detail::CandidateSpace space(ss);
    std::vector<double> merits(spec.sampleSize);
    detail::parallelFor(merits.size(), spec.threads, [&](std::size_t i) {
      std::vector<Candidate> choice;
      for (int t = 0; t < spec.s; ++t) {
        auto rng = makeStream(spec.seed, StreamTag::Sampling, (static_cast<std::uint64_t>(k) << 32) + i, static_cast<std::uint64_t>(t));
        choice.push_back(space.random(t, rng));
      }
      merits[i] = evaluateMerit(space.build(choice), spec.fom);
    });
    std::sort(merits.begin(), merits.end());
    QuantileRow row{k, {}, std::nullopt};
    for (double p : spec.levels) row.quantiles.push_back(quantileSorted(merits, p));
    if (spec.reference) {
      ss.method = ExplorationMethod::fastCbc();
      try {
        row.reference = runSearch(ss).merit.total;
      } catch (const UnsupportedError&) {
        ss.method = ExplorationMethod::fullCbc();
        try {
          row.reference = runSearch(ss).merit.total;
        } catch (const Error&) {
          row.reference = std::nullopt;
        }
      }
    }
    study.rows.push_back(std::move(row));
  }
  return study;
}

// ---------------------------------------------------------------------------
// RQMC variance convergence

// Points of replicate r of the size-2^k point set.
using ReplicateGenerator = std::function<std::vector<std::vector<double>>(int k, std::uint64_t replicate)>;

// definitionFor is called once per k.
inline ReplicateGenerator rqmcGenerator(std::function<PointSetDef(int k)> definitionFor, Randomization rnd) {
  struct Cache {
    std::mutex mutex;
    std::map<int, PointSetDef> defs;
  };
  auto cache = std::make_shared<Cache>();
  return [definitionFor = std::move(definitionFor), rnd, cache](int k, std::uint64_t replicate) {
    std::optional<PointSetDef> def;
    {
      std::lock_guard<std::mutex> lock(cache->mutex);
      auto it = cache->defs.find(k);
      if (it == cache->defs.end()) it = cache->defs.emplace(k, definitionFor(k)).first;
      def = it->second;
    }
    return generateStream(RandomizedPointSet{*def, rnd, replicate});
  };
}

inline ReplicateGenerator iidGenerator(int s, std::uint64_t seed) {
  return [s, seed](int k, std::uint64_t replicate) {
    return iidPoints(std::uint64_t{1} << k, s, seed, (static_cast<std::uint64_t>(k) << 40) + replicate);
  };
}

struct VarianceRow {
  std::uint64_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased, over the m replicate averages
  double seconds = 0.0;   // point generation time, informative only
};

struct VarianceReport {
  std::vector<std::uint64_t> nGrid;
  std::vector<VarianceRow> rows;
  int m = 0;
  double fitSlope = std::numeric_limits<double>::quiet_NaN();

  std::string toTsv() const {
    std::ostringstream out;
    out.precision(12);
    out << "n\tlog2n\tmean\tvariance\tlog2variance\tseconds\n";
    for (const auto& r : rows) {
      out << r.n << '\t' << std::log2(static_cast<double>(r.n)) << '\t' << r.mean << '\t' << r.variance << '\t'
          << (r.variance > 0 ? std::log2(r.variance) : -std::numeric_limits<double>::infinity()) << '\t' << r.seconds << '\n';
    }
    out << "# slope\t" << fitSlope << '\n';
    return out.str();
  }
};

// Ordinary least-squares slope of y on x.
inline double olsSlope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("slope fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw Error("slope fit needs distinct abscissae");
  return sxy / sxx;
}

inline VarianceReport varianceStudy(const ReplicateGenerator& generator, const TestIntegrand& f, int m, const std::vector<int>& kGrid,
                                    int threads = 1) {
  if (m < 2) throw Error("variance study needs m >= 2 replicates");
  if (kGrid.empty()) throw Error("empty size grid");
  for (std::size_t i = 1; i < kGrid.size(); ++i) {
    if (kGrid[i] <= kGrid[i - 1]) throw Error("size grid must be strictly increasing");
  }
  VarianceReport rep;
  rep.m = m;
  std::vector<double> xs, ys;
  for (int k : kGrid) {
    std::vector<double> averages(static_cast<std::size_t>(m));
    std::vector<double> seconds(static_cast<std::size_t>(m));
    detail::parallelFor(averages.size(), threads, [&](std::size_t r) {
      const auto start = std::chrono::steady_clock::now();
      const auto pts = generator(k, r);
      seconds[r] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      CompensatedSum sum;
      for (const auto& p : pts) sum.add(f(p));
      averages[r] = sum.value() / static_cast<double>(pts.size());
    });
    CompensatedSum mean, time;
    for (std::size_t r = 0; r < averages.size(); ++r) {
      mean.add(averages[r]);
      time.add(seconds[r]);
    }
    VarianceRow row;
    row.n = std::uint64_t{1} << k;
    row.mean = mean.value() / m;
    CompensatedSum ss;
    for (double a : averages) ss.add((a - row.mean) * (a - row.mean));
    row.variance = ss.value() / (m - 1);
    row.seconds = time.value();
    rep.nGrid.push_back(row.n);
    rep.rows.push_back(row);
    if (row.variance > 0) {
      xs.push_back(k);
      ys.push_back(std::log2(row.variance));
    }
  }
  if (xs.size() >= 2 && xs.size() == kGrid.size()) rep.fitSlope = olsSlope(xs, ys);
  return rep;
}

// ---------------------------------------------------------------------------
// t-value histograms

struct TValueHistogram {
  int order = 0;
  std::map<int, std::uint64_t> counts;  // t -> number of projections
  double mean = 0.0;
  std::uint64_t total = 0;
};

inline std::vector<TValueHistogram> tValueHistogram(const DigitalNet& net, const std::vector<int>& orders = {2, 3},
                                                    std::uint64_t guard = 2'000'000) {
  const int s = net.dimension();
  std::vector<TValueHistogram> out;
  for (int order : orders) {
    if (order < 1) throw Error("projection order must be >= 1");
    TValueHistogram h;
    h.order = order;
    if (order > s) {
      out.push_back(h);
      continue;
    }
    double binom = 1.0;
    for (int i = 0; i < order; ++i) binom = binom * (s - i) / (i + 1);
    if (binom > static_cast<double>(guard)) throw Error("too many projections of order " + std::to_string(order));
    std::vector<int> u(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) u[static_cast<std::size_t>(i)] = i;
    std::uint64_t sum = 0;
    for (;;) {
      const int t = tValue(net, u);
      ++h.counts[t];
      sum += static_cast<std::uint64_t>(t);
      ++h.total;
      int i = order - 1;
      while (i >= 0 && u[static_cast<std::size_t>(i)] == s - order + i) --i;
      if (i < 0) break;
      ++u[static_cast<std::size_t>(i)];
      for (int l = i + 1; l < order; ++l) u[static_cast<std::size_t>(l)] = u[static_cast<std::size_t>(l - 1)] + 1;
    }
    h.mean = static_cast<double>(sum) / static_cast<double>(h.total);
    out.push_back(std::move(h));
  }
  return out;
}

inline std::string tValueHistogramTsv(const std::vector<TValueHistogram>& hs) {
  std::ostringstream out;
  out << "order\tt\tcount\n";
  for (const auto& h : hs) {
    for (const auto& [t, c] : h.counts) out << h.order << '\t' << t << '\t' << c << '\n';
  }
  for (const auto& h : hs) out << "# mean order " << h.order << '\t' << h.mean << '\n';
  return out.str();
}

}  // namespace qmcforge
