#pragma once

// Incremental figure-of-merit evaluation over coordinates.
//
// An Objective is fed one (inner) coordinate at a time. After begin(t) the
// merit of the point set made of the committed coordinates plus a candidate
// for coordinate t can be queried for any number of candidates; merit() is
// const and safe to call concurrently. Whole point sets are evaluated the
// same way, so search results and direct evaluation agree bit for bit.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmcforge/error.hpp"
#include "qmcforge/fom.hpp"
#include "qmcforge/gf2.hpp"
#include "qmcforge/pointsets.hpp"
#include "qmcforge/weights.hpp"

namespace qmcforge {

// Point-set family the objective evaluates: a rank-1 lattice with n points,
// or a digital net with 2^k points and w output digits.
struct Geometry {
  bool lattice = false;
  std::uint64_t n = 0;
  int k = 0;
  int w = 0;

  static Geometry forLattice(std::uint64_t n) { return {true, n, std::has_single_bit(n) ? std::countr_zero(n) : -1, 0}; }
  static Geometry forNet(int k, int w) { return {false, std::uint64_t{1} << k, k, w}; }
};

// Embedded sizes n_l = 2^kMin, ..., 2^kMax, combined by weighted sum or max.
struct MultiLevelSpec {
  enum class Combiner { Sum, Max };
  int kMin = 0;
  int kMax = 0;
  std::vector<double> weights;  // one per level; empty means all 1
  Combiner combiner = Combiner::Sum;

  int levels() const { return kMax - kMin + 1; }
  double weight(int l) const { return weights.empty() ? 1.0 : weights.at(static_cast<std::size_t>(l)); }

  void validate() const {
    if (kMin < 0 || kMax < kMin) throw Error("multilevel range needs 0 <= kMin <= kMax");
    if (!weights.empty() && static_cast<int>(weights.size()) != levels()) throw Error("one multilevel weight per level is required");
    for (double w : weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw Error("multilevel weights must be finite and >= 0");
    }
  }
};

// The candidate value of one coordinate: a lattice component or a matrix.
struct CoordinateData {
  std::uint64_t a = 0;
  const GeneratingMatrix* matrix = nullptr;
};

class Objective {
 public:
  virtual ~Objective() = default;
  virtual std::unique_ptr<Objective> clone() const = 0;
  // Prepares for inner coordinate t; t must equal the number of commits.
  virtual void begin(int t) = 0;
  virtual double merit(const CoordinateData& c) const = 0;
  virtual void commit(const CoordinateData& c) = 0;

  int committed() const { return committed_; }

 protected:
  int committed_ = 0;
};

namespace detail {

struct LevelInfo {
  std::uint64_t n = 0;  // points at this level
  int k = 0;            // size exponent (nets, or power-of-two lattices)
  double weight = 1.0;
};

inline std::vector<LevelInfo> makeLevels(const Geometry& g, const std::optional<MultiLevelSpec>& ml) {
  if (!ml) return {{g.n, g.k, 1.0}};
  ml->validate();
  if (g.k < 0) throw Error("multilevel criteria need a power-of-two number of points");
  if (ml->kMax != g.k) throw Error("multilevel kMax must equal the size exponent k");
  std::vector<LevelInfo> out;
  for (int l = 0; l < ml->levels(); ++l) {
    const int k = ml->kMin + l;
    out.push_back({std::uint64_t{1} << k, k, ml->weight(l)});
  }
  return out;
}

inline double combineLevels(const std::vector<LevelInfo>& levels, const std::vector<double>& merits,
                            const std::optional<MultiLevelSpec>& ml) {
  if (!ml) return merits.front();
  double out = 0.0;
  CompensatedSum acc;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const double v = levels[l].weight * merits[l];
    if (ml->combiner == MultiLevelSpec::Combiner::Max) {
      out = l == 0 ? v : std::max(out, v);
    } else {
      acc.add(v);
    }
  }
  return ml->combiner == MultiLevelSpec::Combiner::Max ? out : acc.value();
}

// Nonempty subsets of {0..j} containing j with a nonzero weight.
inline std::vector<Subset> subsetsEndingAt(const WeightSpec& w, int j, std::uint64_t guard = std::uint64_t{1} << 20) {
  std::vector<Subset> out;
  if (w.kind() == WeightSpec::Kind::Explicit) {
    for (const auto& [u, g] : w.explicitWeights()) {
      if (g != 0.0 && u.back() == j) out.push_back(u);
    }
    return out;
  }
  const int maxOrder = w.maxOrder(j + 1);
  double count = 0.0;
  for (int r = 0; r < maxOrder; ++r) {
    double c = 1.0;
    for (int i = 0; i < r; ++i) c = c * (j - i) / (i + 1);
    count += c;
  }
  if (count > static_cast<double>(guard)) throw Error("too many projections to enumerate for coordinate " + std::to_string(j + 1));
  for (int r = 0; r < maxOrder; ++r) {
    if (r > j) break;
    Subset u(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) u[static_cast<std::size_t>(i)] = i;
    for (;;) {
      Subset full = u;
      full.push_back(j);
      if (w.weightOf(full) != 0.0) out.push_back(std::move(full));
      int i = r - 1;
      while (i >= 0 && u[static_cast<std::size_t>(i)] == j - r + i) --i;
      if (i < 0) break;
      ++u[static_cast<std::size_t>(i)];
      for (int m = i + 1; m < r; ++m) u[static_cast<std::size_t>(m)] = u[static_cast<std::size_t>(m - 1)] + 1;
    }
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Kernel criteria with finite q (and the q = inf projection maximum)

class KernelObjective : public Objective {
 public:
  // innerDims = s * d coordinates are fed, d inner coordinates per output.
  KernelObjective(const FomSpec& fom, const Geometry& geometry, int innerDims,
                  const std::optional<MultiLevelSpec>& multiLevel = std::nullopt)
      : fom_(fom), geometry_(geometry), d_(fom.isInterlacedFamily() ? fom.d : 1), multiLevel_(multiLevel) {
    fom.validate();
    if (!fom.hasKernel()) throw Error("criterion " + familyName(fom.family) + " has no kernel");
    if (innerDims < 1 || innerDims % d_ != 0) throw Error("inner dimension must be a positive multiple of d");
    outputs_ = innerDims / d_;
    if (geometry.lattice && fom.family == FomFamily::R2prime) throw Error("R2prime is defined for digital nets");
    levels_ = detail::makeLevels(geometry, multiLevel);
    weights_ = fom.effectiveWeights();
    phantom_ = fom.family == FomFamily::R2prime;
    infinite_ = fom.isInfinite();
    if (!infinite_) {
      const auto kind = weights_.kind();
      mode_ = kind == WeightSpec::Kind::Product ? Mode::Product
              : kind == WeightSpec::Kind::Explicit ? Mode::Explicit
                                                   : Mode::Esp;
      if (mode_ == Mode::Esp) maxOrder_ = weights_.maxOrder(outputs_);
    } else {
      mode_ = Mode::Max;
    }
    for (const auto& lv : levels_) states_.push_back(makeState(lv));
  }

  std::unique_ptr<Objective> clone() const override { return std::make_unique<KernelObjective>(*this); }

  int interlacing() const { return d_; }
  int outputs() const { return outputs_; }
  const Geometry& geometry() const { return geometry_; }
  const FomSpec& fom() const { return fom_; }

  void begin(int t) override {
    if (t != committed_) throw Error("coordinates must be fed in order");
    if (t >= outputs_ * d_) throw Error("coordinate index beyond the declared dimension");
    current_ = t;
    const int j = t / d_;
    for (auto& st : states_) prepare(st, j);
  }

  double merit(const CoordinateData& c) const override {
    std::vector<double> perLevel(levels_.size());
    for (std::size_t l = 0; l < levels_.size(); ++l) perLevel[l] = levelMerit(l, c);
    return detail::combineLevels(levels_, perLevel, multiLevel_);
  }

  void commit(const CoordinateData& c) override {
    const int t = committed_;
    if (t != current_) throw Error("commit without begin");
    const bool completes = (t % d_) == d_ - 1;
    const int j = t / d_;
    for (std::size_t l = 0; l < levels_.size(); ++l) {
      auto& st = states_[l];
      const auto psi = column(l, t, c);
      const std::size_t N = psi.size();
      if (!completes) {
        for (std::size_t i = 0; i < N; ++i) st.partial[i] *= 1.0 + psi[i];
        continue;
      }
      std::vector<double> phi(N);
      for (std::size_t i = 0; i < N; ++i) phi[i] = d_ == 1 ? psi[i] : st.partial[i] * (1.0 + psi[i]) - 1.0;
      pushOutput(st, j, phi);
      std::fill(st.partial.begin(), st.partial.end(), 1.0);
    }
    ++committed_;
    current_ = -1;
  }

  // Linear form of the current step at level 0: merit = sum_i c_i (A_i + B_i psi_i)
  // where psi is the candidate's inner kernel column; c_i = 1/n, or -1 for
  // the phantom entry (index n) when present.
  struct LinearForm {
    const std::vector<double>* A;
    const std::vector<double>* B;
    std::uint64_t n;
    bool phantom;
  };
  LinearForm linearForm() const {
    if (mode_ == Mode::Max) throw Error("q = inf has no linear form");
    if (levels_.size() != 1) throw Error("multilevel criteria have no single linear form");
    return {&states_[0].A, &states_[0].B, levels_[0].n, phantom_};
  }

  // Kernel for inner coordinate t at level l.
  CoordinateKernel kernel(std::size_t l, int t) const { return CoordinateKernel(fom_, t % d_ + 1, levels_[l].k); }

  // Inner kernel column psi for a candidate at level l (with the phantom entry).
  std::vector<double> column(std::size_t l, int t, const CoordinateData& c) const {
    const auto& lv = levels_[l];
    const std::size_t N = lv.n + (phantom_ ? 1 : 0);
    std::vector<double> psi(N, 1.0);
    forEachKernelValue(l, t, c, [&](std::uint64_t i, double v) { psi[i] = v; });
    return psi;
  }

 private:
  enum class Mode { Product, Esp, Explicit, Max };

  struct State {
    std::vector<double> partial;  // interlacing product over inner coords of the current output
    std::vector<double> A, B;     // linear form of the current step
    // Product mode.
    std::vector<double> prod;
    // Esp mode: esp[r][i], r = 0..maxOrder.
    std::vector<std::vector<double>> esp;
    // Explicit mode: running sum over completed subsets, and output columns.
    std::vector<double> done;
    std::vector<std::vector<double>> cols;
    // Max mode: fixed maximum over completed projections, and per-step
    // subsets with their partial product columns.
    double fixedMax = 0.0;
    std::vector<double> stepWeights;
    std::vector<std::vector<double>> stepProducts;
  };

  State makeState(const detail::LevelInfo& lv) const {
    const std::size_t N = lv.n + (phantom_ ? 1 : 0);
    State st;
    st.partial.assign(N, 1.0);
    if (mode_ == Mode::Product) st.prod.assign(N, 1.0);
    if (mode_ == Mode::Esp) {
      st.esp.assign(static_cast<std::size_t>(maxOrder_) + 1, std::vector<double>(N, 0.0));
      st.esp[0].assign(N, 1.0);
    }
    if (mode_ == Mode::Explicit) st.done.assign(N, 0.0);
    return st;
  }

  // Output weight factor g_j for product / POD modes.
  double coordinateWeight(int j) const {
    if (weights_.kind() == WeightSpec::Kind::OrderDependent) return 1.0;
    return weights_.coordinateWeight(j);
  }

  // Sum over explicit subsets u with max element j of gamma_u prod_{u \ j} phi.
  std::vector<double> explicitGradient(const State& st, int j, std::size_t N) const {
    std::vector<double> G(N, 0.0);
    for (const auto& [u, g] : weights_.explicitWeights()) {
      if (g == 0.0 || u.back() != j) continue;
      for (std::size_t i = 0; i < N; ++i) {
        double p = g;
        for (std::size_t m = 0; m + 1 < u.size(); ++m) p *= st.cols[static_cast<std::size_t>(u[m])][i];
        G[i] += p;
      }
    }
    return G;
  }

  void prepare(State& st, int j) const {
    const std::size_t N = st.partial.size();
    if (mode_ == Mode::Max) {
      st.stepWeights.clear();
      st.stepProducts.clear();
      for (const auto& u : detail::subsetsEndingAt(weights_, j)) {
        std::vector<double> p(N, 1.0);
        for (std::size_t m = 0; m + 1 < u.size(); ++m) {
          const auto& col = st.cols[static_cast<std::size_t>(u[m])];
          for (std::size_t i = 0; i < N; ++i) p[i] *= col[i];
        }
        st.stepWeights.push_back(weights_.weightOf(u));
        st.stepProducts.push_back(std::move(p));
      }
      return;
    }
    st.A.assign(N, 0.0);
    st.B.assign(N, 0.0);
    std::vector<double> base(N), grad(N);
    switch (mode_) {
      case Mode::Product: {
        const double g = coordinateWeight(j);
        for (std::size_t i = 0; i < N; ++i) {
          base[i] = st.prod[i] - 1.0;
          grad[i] = st.prod[i] * g;
        }
        break;
      }
      case Mode::Esp: {
        const double g = coordinateWeight(j);
        std::vector<double> gamma(static_cast<std::size_t>(maxOrder_) + 1, 0.0);
        for (int r = 1; r <= maxOrder_; ++r) gamma[static_cast<std::size_t>(r)] = weights_.orderWeight(r);
        for (std::size_t i = 0; i < N; ++i) {
          double a = 0.0;
          double b = 0.0;
          for (int r = 1; r <= maxOrder_; ++r) {
            a += gamma[static_cast<std::size_t>(r)] * st.esp[static_cast<std::size_t>(r)][i];
            b += gamma[static_cast<std::size_t>(r)] * st.esp[static_cast<std::size_t>(r - 1)][i];
          }
          base[i] = a;
          grad[i] = b * g;
        }
        break;
      }
      case Mode::Explicit: {
        grad = explicitGradient(st, j, N);
        base = st.done;
        break;
      }
      case Mode::Max:
        break;
    }
    // phi_out = (R - 1) + R psi for interlacing, phi_out = psi otherwise.
    for (std::size_t i = 0; i < N; ++i) {
      if (d_ == 1) {
        st.A[i] = base[i];
        st.B[i] = grad[i];
      } else {
        st.A[i] = base[i] + grad[i] * (st.partial[i] - 1.0);
        st.B[i] = grad[i] * st.partial[i];
      }
    }
  }

  void pushOutput(State& st, int j, const std::vector<double>& phi) {
    const std::size_t N = phi.size();
    switch (mode_) {
      case Mode::Product: {
        const double g = coordinateWeight(j);
        for (std::size_t i = 0; i < N; ++i) st.prod[i] *= 1.0 + g * phi[i];
        break;
      }
      case Mode::Esp: {
        const double g = coordinateWeight(j);
        for (int r = maxOrder_; r >= 1; --r) {
          auto& er = st.esp[static_cast<std::size_t>(r)];
          const auto& prev = st.esp[static_cast<std::size_t>(r - 1)];
          for (std::size_t i = 0; i < N; ++i) er[i] += g * phi[i] * prev[i];
        }
        break;
      }
      case Mode::Explicit: {
        const auto G = explicitGradient(st, j, N);
        for (std::size_t i = 0; i < N; ++i) st.done[i] += G[i] * phi[i];
        st.cols.push_back(phi);
        break;
      }
      case Mode::Max: {
        st.fixedMax = maxStep(st, [&](std::size_t i) { return phi[i]; }, phi.size() - (phantom_ ? 1 : 0));
        st.cols.push_back(phi);
        break;
      }
    }
  }

  template <class PhiAt>
  double maxStep(const State& st, PhiAt&& phiAt, std::uint64_t n) const {
    double best = st.fixedMax;
    for (std::size_t s = 0; s < st.stepProducts.size(); ++s) {
      const auto& p = st.stepProducts[s];
      CompensatedSum acc;
      for (std::uint64_t i = 0; i < n; ++i) acc.add(p[i] * phiAt(i));
      double du = acc.value() / static_cast<double>(n);
      if (phantom_) du -= p[n] * phiAt(n);
      best = combineProjection(best, st.stepWeights[s], du, fom_);
    }
    return best;
  }

  // Calls fn(i, psi_i) for every point index of level l (and the phantom).
  template <class Fn>
  void forEachKernelValue(std::size_t l, int t, const CoordinateData& c, Fn&& fn) const {
    const auto& lv = levels_[l];
    const CoordinateKernel phi = kernel(l, t);
    if (geometry_.lattice) {
      const std::uint64_t n = lv.n;
      const std::uint64_t a = c.a % n;
      std::uint64_t v = 0;
      for (std::uint64_t i = 0; i < n; ++i) {
        fn(i, phi.fromRatio(v, n));
        v += a;
        if (v >= n) v -= n;
      }
    } else {
      if (c.matrix == nullptr) throw Error("net coordinate without a matrix");
      const GeneratingMatrix& m = *c.matrix;
      const int w = m.rows();
      if (m.cols() < lv.k) throw Error("matrix has fewer than k columns");
      const bool byTable = !phi.dependsOnValue();
      const std::vector<double> table = byTable ? phi.digitTable(w) : std::vector<double>{};
      auto value = [&](std::uint64_t y) { return byTable ? table[static_cast<std::size_t>(std::bit_width(y))] : phi.fromDigits(y, w); };
      // Gray-code order: index g(i) = i ^ (i >> 1).
      std::uint64_t y = 0;
      fn(0, value(0));
      for (std::uint64_t i = 1; i < lv.n; ++i) {
        y ^= m.column(std::countr_zero(i));
        fn(i ^ (i >> 1), value(y));
      }
    }
    if (phantom_) fn(lv.n, 1.0);
  }

  double levelMerit(std::size_t l, const CoordinateData& c) const {
    const auto& st = states_[l];
    const std::uint64_t n = levels_[l].n;
    if (mode_ == Mode::Max) {
      const auto psi = column(l, current_, c);
      return maxStep(st, [&](std::size_t i) { return d_ == 1 ? psi[i] : st.partial[i] * (1.0 + psi[i]) - 1.0; }, n);
    }
    CompensatedSum acc;
    double phantomTerm = 0.0;
    forEachKernelValue(l, current_, c, [&](std::uint64_t i, double psi) {
      const double term = st.A[i] + st.B[i] * psi;
      if (i == n) {
        phantomTerm = term;
      } else {
        acc.add(term);
      }
    });
    return acc.value() / static_cast<double>(n) - phantomTerm;
  }

  FomSpec fom_;
  Geometry geometry_;
  int d_;
  std::optional<MultiLevelSpec> multiLevel_;
  int outputs_ = 0;
  std::vector<detail::LevelInfo> levels_;
  WeightSpec weights_ = WeightSpec::product({}, 1.0);
  bool phantom_ = false;
  bool infinite_ = false;
  Mode mode_ = Mode::Product;
  int maxOrder_ = 0;
  std::vector<State> states_;
  int current_ = -1;
};

// ---------------------------------------------------------------------------
// t-value criteria

class TValueObjective : public Objective {
 public:
  TValueObjective(const FomSpec& fom, const Geometry& geometry, int dims,
                  const std::optional<MultiLevelSpec>& multiLevel = std::nullopt)
      : fom_(fom), multiLevel_(multiLevel) {
    fom.validate();
    if (fom.hasKernel()) throw Error("TValueObjective needs a t-value criterion");
    if (geometry.lattice) throw Error("t-values are defined for digital nets");
    if (dims < 1) throw Error("dimension must be >= 1");
    levels_ = detail::makeLevels(geometry, multiLevel);
    weights_ = fom.effectiveWeights();
    fixed_.assign(levels_.size(), 0.0);
  }

  std::unique_ptr<Objective> clone() const override { return std::make_unique<TValueObjective>(*this); }

  void begin(int t) override {
    if (t != committed_) throw Error("coordinates must be fed in order");
    current_ = t;
    subsets_ = detail::subsetsEndingAt(fom_.weights, t);
  }

  double merit(const CoordinateData& c) const override {
    std::vector<double> perLevel(levels_.size());
    for (std::size_t l = 0; l < levels_.size(); ++l) perLevel[l] = levelMerit(l, c);
    return detail::combineLevels(levels_, perLevel, multiLevel_);
  }

  void commit(const CoordinateData& c) override {
    if (c.matrix == nullptr) throw Error("net coordinate without a matrix");
    for (std::size_t l = 0; l < levels_.size(); ++l) fixed_[l] = levelMerit(l, c);
    matrices_.push_back(*c.matrix);
    ++committed_;
  }

 private:
  double levelMerit(std::size_t l, const CoordinateData& c) const {
    if (c.matrix == nullptr) throw Error("net coordinate without a matrix");
    const int k = levels_[l].k;
    double best = fixed_[l];
    CompensatedSum acc;
    acc.add(fixed_[l]);
    for (const auto& u : subsets_) {
      std::vector<const GeneratingMatrix*> mats;
      for (std::size_t m = 0; m + 1 < u.size(); ++m) mats.push_back(&matrices_[static_cast<std::size_t>(u[m])]);
      mats.push_back(c.matrix);
      const int t = tValueOfMatrices(mats, k);
      const double v = weights_.weightOf(u) * tProjectionValue(fom_, t, k, static_cast<int>(u.size()));
      if (fom_.isInfinite()) {
        best = std::max(best, v);
      } else {
        acc.add(v);
      }
    }
    return fom_.isInfinite() ? best : acc.value();
  }

  FomSpec fom_;
  std::optional<MultiLevelSpec> multiLevel_;
  std::vector<detail::LevelInfo> levels_;
  WeightSpec weights_ = WeightSpec::product({}, 1.0);
  std::vector<double> fixed_;
  std::vector<GeneratingMatrix> matrices_;
  std::vector<Subset> subsets_;
  int current_ = -1;
};

inline std::unique_ptr<Objective> makeObjective(const FomSpec& fom, const Geometry& geometry, int innerDims,
                                                const std::optional<MultiLevelSpec>& multiLevel = std::nullopt) {
  if (fom.hasKernel()) return std::make_unique<KernelObjective>(fom, geometry, innerDims, multiLevel);
  if (fom.isInterlacedFamily() || fom.d != 1) throw UnsupportedError("t-value criteria on interlaced nets are not supported");
  return std::make_unique<TValueObjective>(fom, geometry, innerDims, multiLevel);
}

// ---------------------------------------------------------------------------
// Evaluation of whole point-set definitions

namespace detail {

struct Decomposed {
  Geometry geometry;
  std::vector<std::uint64_t> lattice;
  std::vector<GeneratingMatrix> matrices;
  int innerDims = 0;
};

// Splits a definition into the coordinates an Objective consumes. For
// interlaced criteria nets are taken as inner nets.
inline Decomposed decompose(const PointSetDef& def, const FomSpec& fom) {
  Decomposed out;
  if (const auto* lat = std::get_if<Rank1Lattice>(&def)) {
    if (fom.isInterlacedFamily()) throw Error("interlaced criteria need a digital net");
    out.geometry = Geometry::forLattice(lat->size());
    out.lattice = lat->generator();
    out.innerDims = lat->dimension();
    return out;
  }
  DigitalNet net = [&] {
    if (const auto* il = std::get_if<InterlacedNet>(&def)) {
      if (fom.isInterlacedFamily()) {
        if (il->d != fom.d) throw Error("interlacing factor of the point set differs from the criterion's d");
        return toDigitalNet(il->inner);
      }
      return toDigitalNet(def);
    }
    return toDigitalNet(def);
  }();
  out.geometry = Geometry::forNet(net.k(), net.w());
  out.matrices = net.matrices();
  out.innerDims = net.dimension();
  return out;
}

}  // namespace detail

// Merit of a definition under fom, optionally over embedded levels. This
// uses the same incremental path as the searches.
inline double evaluateMerit(const PointSetDef& def, const FomSpec& fom,
                            const std::optional<MultiLevelSpec>& multiLevel = std::nullopt) {
  const auto parts = detail::decompose(def, fom);
  auto obj = makeObjective(fom, parts.geometry, parts.innerDims, multiLevel);
  double value = 0.0;
  for (int t = 0; t < parts.innerDims; ++t) {
    CoordinateData c;
    if (parts.geometry.lattice) c.a = parts.lattice[static_cast<std::size_t>(t)];
    else c.matrix = &parts.matrices[static_cast<std::size_t>(t)];
    obj->begin(t);
    if (t + 1 == parts.innerDims) {
      value = obj->merit(c);
    } else {
      obj->commit(c);
    }
  }
  return value;
}

inline MeritValue evaluate(const PointSetDef& def, const FomSpec& fom) { return {evaluateMerit(def, fom), std::nullopt}; }

// Weighted sum or maximum of the merits of the first n_l points, n_l = 2^kMin..2^kMax.
inline double multiLevelMerit(const PointSetDef& def, const FomSpec& fom, const MultiLevelSpec& levels) {
  return evaluateMerit(def, fom, levels);
}

}  // namespace qmcforge
