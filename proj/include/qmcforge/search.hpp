#pragma once

// Search over construction parameters: exhaustive, random, CBC variants,
// fast CBC, Korobov and mixed strategies.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qmcforge/error.hpp"
#include "qmcforge/fom.hpp"
#include "qmcforge/gf2.hpp"
#include "qmcforge/objective.hpp"
#include "qmcforge/pointsets.hpp"
#include "qmcforge/rng.hpp"

namespace qmcforge {

enum class Construction { OrdinaryLattice, Polynomial, Sobol, Explicit, HigherOrderPolynomial };

struct ExplorationMethod {
  enum class Tag { Exhaustive, Random, FullCbc, FastCbc, RandomCbc, Korobov, RandomKorobov, MixedCbc };
  Tag tag = Tag::FullCbc;
  std::uint64_t r = 0;  // sample count for the random variants
  int pivot = 0;        // first randomly searched coordinate (1-based) for mixed CBC

  static ExplorationMethod exhaustive() { return {Tag::Exhaustive}; }
  static ExplorationMethod random(std::uint64_t r) { return {Tag::Random, r}; }
  static ExplorationMethod fullCbc() { return {Tag::FullCbc}; }
  static ExplorationMethod fastCbc() { return {Tag::FastCbc}; }
  static ExplorationMethod randomCbc(std::uint64_t r) { return {Tag::RandomCbc, r}; }
  static ExplorationMethod korobov() { return {Tag::Korobov}; }
  static ExplorationMethod randomKorobov(std::uint64_t r) { return {Tag::RandomKorobov, r}; }
  static ExplorationMethod mixedCbc(std::uint64_t r, int pivot) { return {Tag::MixedCbc, r, pivot}; }
};

struct SearchSpec {
  Construction construction = Construction::Polynomial;
  std::uint64_t n = 0;  // ordinary lattices
  int k = 0;            // nets: n = 2^k
  int w = 0;            // output digits; 0 picks the construction default
  std::optional<BinaryPolynomial> modulus;  // polynomial constructions; default: smallest irreducible
  int hoplrOrder = 2;   // alpha of higher-order rules (modulus degree alpha*k)
  int interlacing = 1;  // d
  int s = 1;
  FomSpec fom;
  ExplorationMethod method;
  std::uint64_t seed = 0;
  std::optional<MultiLevelSpec> multiLevel;
  int threads = 1;
  std::uint64_t guard = std::uint64_t{1} << 24;
};

using Candidate = std::vector<std::uint64_t>;

struct SearchResult {
  PointSetDef best;
  MeritValue merit;
  std::uint64_t evaluations = 0;
  std::vector<double> perCoordinateMerits;
  std::vector<Candidate> choice;  // per inner coordinate
};

// ---------------------------------------------------------------------------
// Candidate spaces

namespace detail {

inline std::uint64_t gcdU(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

// A coordinate's materialized value.
struct Materialized {
  std::uint64_t a = 0;
  std::optional<GeneratingMatrix> matrix;
  CoordinateData data() const { return {a, matrix ? &*matrix : nullptr}; }
};

class CandidateSpace {
 public:
  CandidateSpace(const SearchSpec& spec) : spec_(spec) {
    if (spec.s < 1) throw Error("dimension must be >= 1");
    if (spec.interlacing < 1) throw Error("interlacing factor must be >= 1");
    innerDims_ = spec.s * spec.interlacing;
    switch (spec.construction) {
      case Construction::OrdinaryLattice:
        if (spec.n < 1) throw Error("lattice size n must be >= 1");
        if (spec.interlacing != 1) throw Error("interlacing applies to digital nets");
        geometry_ = Geometry::forLattice(spec.n);
        symmetric_ = spec.fom.family == FomFamily::Palpha && spec.multiLevel == std::nullopt;
        break;
      case Construction::Polynomial:
      case Construction::HigherOrderPolynomial: {
        checkK();
        const int order = spec.construction == Construction::Polynomial ? 1 : spec.hoplrOrder;
        if (order < 1) throw Error("higher-order rules need alpha >= 1");
        const int degree = order * spec.k;
        if (degree > 62) throw Error("modulus degree alpha*k exceeds 62");
        modulus_ = spec.modulus ? *spec.modulus : defaultModulus(degree);
        if (modulus_.degree() != degree) throw Error("modulus degree must be " + std::to_string(degree));
        irreducible_ = isIrreducible(modulus_);
        w_ = spec.w != 0 ? spec.w : std::max(kDefaultOutputDigits, order == 1 ? spec.k : 0);
        if (order == 1 && w_ < spec.k) throw Error("output digits w must be >= k");
        if (w_ < spec.k || w_ > 63) throw Error("output digits w must satisfy k <= w <= 63");
        geometry_ = Geometry::forNet(spec.k, w_);
        break;
      }
      case Construction::Sobol:
      case Construction::Explicit:
        checkK();
        w_ = spec.w != 0 ? spec.w : spec.k;
        if (w_ < spec.k || w_ > 63) throw Error("output digits w must satisfy k <= w <= 63");
        geometry_ = Geometry::forNet(spec.k, w_);
        if (spec.construction == Construction::Sobol) {
          polys_ = SobolSpec::standardPolynomials(static_cast<std::size_t>(innerDims_));
        }
        break;
    }
  }

  const Geometry& geometry() const { return geometry_; }
  int innerDims() const { return innerDims_; }
  BinaryPolynomial modulus() const { return modulus_; }
  bool irreducibleModulus() const { return irreducible_; }
  int w() const { return w_; }

  // Number of indices of coordinate t (admissible or not), saturating.
  std::uint64_t indexCount(int t) const {
    switch (spec_.construction) {
      case Construction::OrdinaryLattice:
        if (t == 0) return 1;
        return symmetric_ ? std::max<std::uint64_t>(spec_.n / 2, 1) : std::max<std::uint64_t>(spec_.n - 1, 1);
      case Construction::Polynomial:
      case Construction::HigherOrderPolynomial:
        if (t == 0) return 1;
        return (std::uint64_t{1} << modulus_.degree()) - 1;
      case Construction::Sobol: {
        if (t == 0) return 1;
        const int c = freeCount(t);
        const int bits = c * (c - 1) / 2;
        return bits >= 63 ? std::numeric_limits<std::uint64_t>::max() : std::uint64_t{1} << bits;
      }
      case Construction::Explicit: {
        const int bits = w_ * spec_.k;
        return bits >= 63 ? std::numeric_limits<std::uint64_t>::max() : std::uint64_t{1} << bits;
      }
    }
    return 0;
  }

  // Candidate with canonical index `index`, or nothing when inadmissible.
  std::optional<Candidate> at(int t, std::uint64_t index) const {
    switch (spec_.construction) {
      case Construction::OrdinaryLattice: {
        if (t == 0) return Candidate{1 % spec_.n};
        const std::uint64_t a = index + 1;
        if (spec_.n == 1) return Candidate{0};
        if (gcdU(a, spec_.n) != 1) return std::nullopt;
        return Candidate{a};
      }
      case Construction::Polynomial:
      case Construction::HigherOrderPolynomial: {
        if (t == 0) return Candidate{1};
        const std::uint64_t b = index + 1;
        if (!irreducible_ && gcdPoly(BinaryPolynomial(b), modulus_) != BinaryPolynomial(1)) return std::nullopt;
        return Candidate{b};
      }
      case Construction::Sobol: {
        if (t == 0) return Candidate{};
        const int c = freeCount(t);
        Candidate m(static_cast<std::size_t>(c), 1);
        std::uint64_t rest = index;
        for (int i = c - 1; i >= 0; --i) {
          const int bits = i;  // m_{i+1} has i free bits
          const std::uint64_t digit = bits == 0 ? 0 : rest & ((std::uint64_t{1} << bits) - 1);
          rest = bits == 0 ? rest : rest >> bits;
          m[static_cast<std::size_t>(i)] = 2 * digit + 1;
        }
        return m;
      }
      case Construction::Explicit: {
        Candidate cols(static_cast<std::size_t>(spec_.k));
        std::uint64_t rest = index;
        const std::uint64_t mask = GeneratingMatrix::rowMask(w_);
        for (int c = spec_.k - 1; c >= 0; --c) {
          cols[static_cast<std::size_t>(c)] = rest & mask;
          rest = w_ >= 64 ? 0 : rest >> w_;
        }
        if (!isProjectionRegular(GeneratingMatrix::fromColumns(w_, cols))) return std::nullopt;
        return cols;
      }
    }
    return std::nullopt;
  }

  // Uniform admissible candidate for coordinate t.
  Candidate random(int t, CounterStream& rng) const {
    if (spec_.construction == Construction::Sobol && t > 0) {
      const int c = freeCount(t);
      Candidate m(static_cast<std::size_t>(c), 1);
      for (int i = 1; i < c; ++i) m[static_cast<std::size_t>(i)] = 2 * rng.bits(i) + 1;
      return m;
    }
    if (spec_.construction == Construction::Explicit) {
      for (;;) {
        Candidate cols(static_cast<std::size_t>(spec_.k));
        for (auto& col : cols) col = rng.bits(w_);
        if (isProjectionRegular(GeneratingMatrix::fromColumns(w_, cols))) return cols;
      }
    }
    const std::uint64_t count = indexCount(t);
    for (int attempt = 0; attempt < 1000000; ++attempt) {
      if (auto c = at(t, rng.below(count))) return *c;
    }
    throw Error("no admissible candidate found by sampling");
  }

  Materialized materialize(int t, const Candidate& c) const {
    Materialized m;
    switch (spec_.construction) {
      case Construction::OrdinaryLattice:
        m.a = c.at(0);
        break;
      case Construction::Polynomial:
        m.matrix = expansionMatrix(BinaryPolynomial(c.at(0)), modulus_, w_);
        break;
      case Construction::HigherOrderPolynomial:
        m.matrix = detail::hankelColumns(BinaryPolynomial(c.at(0)), modulus_, w_, spec_.k);
        break;
      case Construction::Sobol:
        if (t == 0) {
          m.matrix = GeneratingMatrix::identity(w_, spec_.k);
        } else {
          m.matrix = sobolMatrix(sobolDirectionSequence(polys_[static_cast<std::size_t>(t - 1)], c, spec_.k), spec_.k, w_);
        }
        break;
      case Construction::Explicit:
        m.matrix = GeneratingMatrix::fromColumns(w_, c);
        break;
    }
    return m;
  }

  PointSetDef build(const std::vector<Candidate>& choice) const {
    const int d = spec_.interlacing;
    auto wrap = [&](InnerNetDef inner) -> PointSetDef {
      if (d == 1) {
        return std::visit([](auto&& x) -> PointSetDef { return x; }, std::move(inner));
      }
      return InterlacedNet{std::move(inner), d};
    };
    switch (spec_.construction) {
      case Construction::OrdinaryLattice: {
        std::vector<std::uint64_t> a;
        for (const auto& c : choice) a.push_back(c.at(0));
        return Rank1Lattice(spec_.n, a);
      }
      case Construction::Polynomial: {
        PolynomialLatticeRule plr{modulus_, {}, w_};
        for (const auto& c : choice) plr.gen.emplace_back(c.at(0));
        return wrap(plr);
      }
      case Construction::HigherOrderPolynomial: {
        HigherOrderPlr h{{modulus_, {}, w_}, spec_.k};
        for (const auto& c : choice) h.rule.gen.emplace_back(c.at(0));
        return wrap(h);
      }
      case Construction::Sobol: {
        SobolSpec sp;
        for (std::size_t t = 1; t < choice.size(); ++t) sp.directionNumbers.push_back(choice[t]);
        return wrap(SobolNet{sp, static_cast<int>(choice.size()), spec_.k, w_});
      }
      case Construction::Explicit: {
        std::vector<GeneratingMatrix> mats;
        for (const auto& c : choice) mats.push_back(GeneratingMatrix::fromColumns(w_, c));
        return wrap(DigitalNet(spec_.k, std::move(mats)));
      }
    }
    throw Error("unknown construction");
  }

 private:
  void checkK() const {
    if (spec_.k < 1 || spec_.k > kMaxSizeExponent) throw Error("size exponent k must be in [1, 30]");
  }
  int polynomialDegree(int t) const { return polys_[static_cast<std::size_t>(t - 1)].degree(); }
  int freeCount(int t) const { return std::min(polynomialDegree(t), spec_.k); }

  SearchSpec spec_;
  Geometry geometry_;
  int innerDims_ = 0;
  int w_ = 0;
  bool symmetric_ = false;
  BinaryPolynomial modulus_;
  bool irreducible_ = false;
  std::vector<BinaryPolynomial> polys_;
};

// Runs fn(i) for i in [0, count) over `threads` workers; fn must only write
// to its own slot.
template <class Fn>
void parallelFor(std::size_t count, int threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t wkr = 0; wkr < workers; ++wkr) {
    pool.emplace_back([&, wkr] {
      try {
        for (std::size_t i = wkr; i < count; i += workers) fn(i);
      } catch (...) {
        errors[wkr] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct Best {
  double merit = std::numeric_limits<double>::infinity();
  Candidate candidate;
  bool found = false;

  // Lower merit wins; equal merits go to the canonically smaller candidate.
  void offer(double m, const Candidate& c) {
    if (std::isnan(m)) return;
    if (!found || m < merit || (m == merit && c < candidate)) {
      merit = m;
      candidate = c;
      found = true;
    }
  }
};

// Evaluates obj.merit for each candidate of coordinate t.
inline void scoreCandidates(const Objective& obj, const CandidateSpace& space, int t, const std::vector<Candidate>& cands,
                            int threads, Best& best, std::uint64_t& evaluations) {
  std::vector<double> merits(cands.size());
  parallelFor(cands.size(), threads, [&](std::size_t i) {
    const auto m = space.materialize(t, cands[i]);
    merits[i] = obj.merit(m.data());
  });
  for (std::size_t i = 0; i < cands.size(); ++i) best.offer(merits[i], cands[i]);
  evaluations += cands.size();
}

// Minimizes over all admissible candidates of coordinate t.
inline Best scanCoordinate(const Objective& obj, const CandidateSpace& space, int t, int threads,
                           std::uint64_t& evaluations) {
  const std::uint64_t count = space.indexCount(t);
  Best best;
  std::vector<Candidate> chunk;
  constexpr std::size_t kChunk = 4096;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    if (auto c = space.at(t, idx)) chunk.push_back(std::move(*c));
    if (chunk.size() == kChunk || idx + 1 == count) {
      scoreCandidates(obj, space, t, chunk, threads, best, evaluations);
      chunk.clear();
    }
  }
  if (!best.found) throw Error("no admissible candidate for coordinate " + std::to_string(t + 1));
  return best;
}

inline Best sampleCoordinate(const Objective& obj, const CandidateSpace& space, int t, std::uint64_t r,
                             std::uint64_t seed, int threads, std::uint64_t& evaluations) {
  if (r < 1) throw Error("sample count r must be >= 1");
  auto rng = makeStream(seed, StreamTag::RandomCbc, static_cast<std::uint64_t>(t));
  Best best;
  std::vector<Candidate> chunk;
  for (std::uint64_t i = 0; i < r; ++i) {
    chunk.push_back(space.random(t, rng));
    if (chunk.size() == 4096 || i + 1 == r) {
      scoreCandidates(obj, space, t, chunk, threads, best, evaluations);
      chunk.clear();
    }
  }
  return best;
}

inline std::unique_ptr<Objective> objectiveFor(const SearchSpec& spec, const CandidateSpace& space) {
  FomSpec fom = spec.fom;
  if (spec.interlacing > 1 && !fom.isInterlacedFamily()) {
    throw UnsupportedError("searching interlaced nets needs an IA, IB or IC criterion");
  }
  if (fom.isInterlacedFamily() && fom.d != spec.interlacing) {
    throw Error("criterion interlacing factor d differs from the construction's");
  }
  return makeObjective(fom, space.geometry(), space.innerDims(), spec.multiLevel);
}

inline SearchResult finish(const SearchSpec& spec, const CandidateSpace& space, std::vector<Candidate> choice,
                           std::uint64_t evaluations, std::vector<double> trace) {
  SearchResult res{space.build(choice), {}, evaluations, std::move(trace), std::move(choice)};
  res.merit.total = evaluateMerit(res.best, spec.fom, spec.multiLevel);
  return res;
}

inline void checkGuard(std::uint64_t count, const SearchSpec& spec, int t) {
  if (count > spec.guard) {
    throw Error("candidate space of coordinate " + std::to_string(t + 1) + " has " + std::to_string(count) +
                " elements, above the guard of " + std::to_string(spec.guard));
  }
}

// CBC where coordinates t < fullUntil are fully scanned and the rest sampled.
inline SearchResult cbcCore(const SearchSpec& spec, int fullUntil, std::uint64_t r) {
  const CandidateSpace space(spec);
  auto obj = objectiveFor(spec, space);
  std::vector<Candidate> choice;
  std::vector<double> trace;
  std::uint64_t evals = 0;
  for (int t = 0; t < space.innerDims(); ++t) {
    obj->begin(t);
    Best best;
    if (t < fullUntil) {
      const std::uint64_t count = space.indexCount(t);
      if (spec.construction == Construction::Sobol && count > (std::uint64_t{1} << 20)) {
        best = sampleCoordinate(*obj, space, t, std::uint64_t{1} << 20, spec.seed, spec.threads, evals);
      } else {
        checkGuard(count, spec, t);
        best = scanCoordinate(*obj, space, t, spec.threads, evals);
      }
    } else {
      best = sampleCoordinate(*obj, space, t, r, spec.seed, spec.threads, evals);
    }
    const auto m = space.materialize(t, best.candidate);
    obj->commit(m.data());
    choice.push_back(best.candidate);
    trace.push_back(best.merit);
  }
  return finish(spec, space, std::move(choice), evals, std::move(trace));
}

// Full merit of a complete candidate vector.
inline double fullMerit(const Objective& base, const CandidateSpace& space, const std::vector<Candidate>& choice) {
  auto obj = base.clone();
  double value = 0.0;
  for (int t = 0; t < static_cast<int>(choice.size()); ++t) {
    const auto m = space.materialize(t, choice[static_cast<std::size_t>(t)]);
    obj->begin(t);
    if (t + 1 == static_cast<int>(choice.size())) {
      value = obj->merit(m.data());
    } else {
      obj->commit(m.data());
    }
  }
  return value;
}

inline std::vector<std::uint64_t> flatten(const std::vector<Candidate>& v) {
  std::vector<std::uint64_t> out;
  for (const auto& c : v) {
    out.push_back(c.size());
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

// Minimizes over a list of complete candidate vectors.
inline std::vector<Candidate> bestOfVectors(const Objective& base, const CandidateSpace& space,
                                            const std::vector<std::vector<Candidate>>& vectors, int threads,
                                            std::uint64_t& evaluations) {
  std::vector<double> merits(vectors.size());
  parallelFor(vectors.size(), threads, [&](std::size_t i) { merits[i] = fullMerit(base, space, vectors[i]); });
  evaluations += vectors.size();
  std::size_t best = 0;
  for (std::size_t i = 1; i < vectors.size(); ++i) {
    if (merits[i] < merits[best] || (merits[i] == merits[best] && vectors[i] < vectors[best])) best = i;
  }
  return vectors.at(best);
}

inline std::uint64_t primitiveRoot(std::uint64_t p) {
  if (p == 2) return 1;
  const auto factors = primeFactors(p - 1);
  auto powmod = [](std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1, x = b % m;
    while (e) {
      if (e & 1U) r = r * x % m;
      x = x * x % m;
      e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
  };
  for (std::uint64_t g = 2; g < p; ++g) {
    if (std::all_of(factors.begin(), factors.end(), [&](std::uint64_t q) { return powmod(g, (p - 1) / q, p) != 1; })) return g;
  }
  throw Error("no primitive root");
}

inline bool isPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

// c[p] = sum_r b[r] f[(r + p) mod N], by FFT.
inline std::vector<double> cyclicCorrelation(const std::vector<double>& b, const std::vector<double>& f) {
  const std::size_t N = b.size();
  if (N <= 2) {
    std::vector<double> c(N, 0.0);
    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t r = 0; r < N; ++r) c[p] += b[r] * f[(r + p) % N];
    }
    return c;
  }
  const std::size_t H = N / 2 + 1;
  std::vector<double> in(N), out(N);
  auto* fb = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * H));
  auto* ff = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * H));
  static std::mutex planMutex;  // FFTW planning is not thread safe
  fftw_plan pb, pf, pc;
  {
    std::lock_guard<std::mutex> lock(planMutex);
    pb = fftw_plan_dft_r2c_1d(static_cast<int>(N), in.data(), fb, FFTW_ESTIMATE);
    pf = fftw_plan_dft_r2c_1d(static_cast<int>(N), in.data(), ff, FFTW_ESTIMATE);
    pc = fftw_plan_dft_c2r_1d(static_cast<int>(N), fb, out.data(), FFTW_ESTIMATE);
  }
  std::copy(b.begin(), b.end(), in.begin());
  fftw_execute(pb);
  std::copy(f.begin(), f.end(), in.begin());
  fftw_execute(pf);
  for (std::size_t h = 0; h < H; ++h) {
    // conj(B) * F
    const double re = fb[h][0] * ff[h][0] + fb[h][1] * ff[h][1];
    const double im = fb[h][0] * ff[h][1] - fb[h][1] * ff[h][0];
    fb[h][0] = re;
    fb[h][1] = im;
  }
  fftw_execute(pc);
  {
    std::lock_guard<std::mutex> lock(planMutex);
    fftw_destroy_plan(pb);
    fftw_destroy_plan(pf);
    fftw_destroy_plan(pc);
  }
  fftw_free(fb);
  fftw_free(ff);
  for (auto& x : out) x /= static_cast<double>(N);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Search methods

inline SearchResult cbcSearch(const SearchSpec& spec) { return detail::cbcCore(spec, spec.s * spec.interlacing, 0); }

inline SearchResult randomCbcSearch(const SearchSpec& spec, std::uint64_t r) {
  if (r < 1) throw Error("sample count r must be >= 1");
  return detail::cbcCore(spec, 0, r);
}

// Coordinates 1..pivot-1 fully, pivot..s by r-sample random CBC.
inline SearchResult mixedCbcSearch(const SearchSpec& spec, std::uint64_t r, int pivot) {
  const int dims = spec.s * spec.interlacing;
  if (pivot < 1 || pivot > dims + 1) throw Error("mixed-CBC pivot must be in [1, s+1]");
  if (r < 1) throw Error("sample count r must be >= 1");
  return detail::cbcCore(spec, pivot - 1, r);
}

inline SearchResult exhaustiveSearch(const SearchSpec& spec) {
  const detail::CandidateSpace space(spec);
  auto obj = detail::objectiveFor(spec, space);
  const int dims = space.innerDims();
  double total = 1.0;
  for (int t = 0; t < dims; ++t) total *= static_cast<double>(space.indexCount(t));
  if (total > static_cast<double>(spec.guard)) {
    throw Error("exhaustive search space has " + std::to_string(static_cast<long double>(total)) +
                " candidates, above the guard of " + std::to_string(spec.guard));
  }
  std::uint64_t evals = 0;
  detail::Best best;
  std::vector<Candidate> bestChoice;
  std::vector<Candidate> prefix;
  // Depth-first in canonical (lexicographic) order; strict improvement keeps
  // the smallest vector among ties.
  std::function<void(Objective&, int)> recurse = [&](Objective& o, int t) {
    o.begin(t);
    if (t + 1 == dims) {
      detail::Best last = detail::scanCoordinate(o, space, t, spec.threads, evals);
      if (!best.found || last.merit < best.merit) {
        best = last;
        bestChoice = prefix;
        bestChoice.push_back(last.candidate);
      }
      return;
    }
    const std::uint64_t count = space.indexCount(t);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      auto c = space.at(t, idx);
      if (!c) continue;
      auto next = o.clone();
      const auto m = space.materialize(t, *c);
      next->commit(m.data());
      prefix.push_back(*c);
      recurse(*next, t + 1);
      prefix.pop_back();
    }
  };
  recurse(*obj, 0);
  if (!best.found) throw Error("no admissible candidate");
  return detail::finish(spec, space, std::move(bestChoice), evals, {});
}

inline SearchResult randomSearch(const SearchSpec& spec, std::uint64_t r) {
  if (r < 1) throw Error("sample count r must be >= 1");
  const detail::CandidateSpace space(spec);
  auto obj = detail::objectiveFor(spec, space);
  std::vector<std::vector<Candidate>> samples;
  for (std::uint64_t i = 0; i < r; ++i) {
    std::vector<Candidate> v;
    for (int t = 0; t < space.innerDims(); ++t) {
      auto rng = makeStream(spec.seed, StreamTag::RandomSearch, i, static_cast<std::uint64_t>(t));
      v.push_back(space.random(t, rng));
    }
    samples.push_back(std::move(v));
  }
  std::uint64_t evals = 0;
  auto best = detail::bestOfVectors(*obj, space, samples, spec.threads, evals);
  return detail::finish(spec, space, std::move(best), evals, {});
}

// Korobov vectors (1, a, a^2, ...) over all units a (random = false), or r
// seeded samples of a.
inline SearchResult korobovSearch(const SearchSpec& spec, bool random = false, std::uint64_t r = 0) {
  if (spec.construction != Construction::OrdinaryLattice) throw Error("Korobov search needs an ordinary lattice");
  const detail::CandidateSpace space(spec);
  auto obj = detail::objectiveFor(spec, space);
  const std::uint64_t n = spec.n;
  std::vector<std::uint64_t> as;
  if (random) {
    if (r < 1) throw Error("sample count r must be >= 1");
    auto rng = makeStream(spec.seed, StreamTag::RandomKorobov);
    for (std::uint64_t i = 0; i < r; ++i) {
      for (;;) {
        const std::uint64_t a = n == 1 ? 0 : 1 + rng.below(n - 1);
        if (n == 1 || std::gcd(a, n) == 1) {
          as.push_back(a);
          break;
        }
      }
    }
  } else {
    if (n - 1 > spec.guard) throw Error("Korobov space above the guard");
    for (std::uint64_t a = 1; a < std::max<std::uint64_t>(n, 2); ++a) {
      if (n == 1 || std::gcd(a, n) == 1) as.push_back(n == 1 ? 0 : a);
    }
  }
  std::vector<std::vector<Candidate>> vectors;
  for (auto a : as) {
    std::vector<Candidate> v;
    if (n == 1) {
      v.assign(static_cast<std::size_t>(spec.s), Candidate{0});
    } else {
      for (auto x : korobovVector(a, spec.s, n)) v.push_back(Candidate{x});
    }
    vectors.push_back(std::move(v));
  }
  std::uint64_t evals = 0;
  auto best = detail::bestOfVectors(*obj, space, vectors, spec.threads, evals);
  return detail::finish(spec, space, std::move(best), evals, {});
}

// CBC with all candidates of a coordinate evaluated at once by cyclic
// correlation over the unit group (prime n, or irreducible modulus).
inline SearchResult fastCbcSearch(const SearchSpec& spec) {
  const detail::CandidateSpace space(spec);
  const FomSpec& fom = spec.fom;
  if (!fom.hasKernel() || fom.isInfinite()) {
    throw UnsupportedError("fast CBC needs a kernel criterion with finite q; use full-CBC");
  }
  if (spec.multiLevel) throw UnsupportedError("fast CBC does not support multilevel criteria; use full-CBC");
  const bool lattice = spec.construction == Construction::OrdinaryLattice;
  if (lattice) {
    if (!detail::isPrime(spec.n)) throw UnsupportedError("fast CBC for ordinary lattices needs a prime n; use full-CBC");
  } else if (spec.construction == Construction::Polynomial) {
    if (!space.irreducibleModulus()) throw UnsupportedError("fast CBC needs an irreducible modulus; use full-CBC");
  } else {
    throw UnsupportedError("fast CBC supports ordinary and polynomial lattice rules; use full-CBC");
  }
  auto objPtr = detail::objectiveFor(spec, space);
  auto& obj = dynamic_cast<KernelObjective&>(*objPtr);

  // Group elements g^r, r = 0..N-1, as integers (lattice) or encodings (PLR).
  const std::uint64_t n = space.geometry().n;
  const std::uint64_t N = n - 1;
  std::vector<std::uint64_t> elem(N);
  if (lattice) {
    const std::uint64_t g = detail::primitiveRoot(n);
    std::uint64_t x = 1;
    for (std::uint64_t r = 0; r < N; ++r) {
      elem[r] = x;
      x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * g % n);
    }
  } else {
    const BinaryPolynomial q = space.modulus();
    const BinaryPolynomial g = multiplicativeGenerator(q);
    BinaryPolynomial x(1);
    for (std::uint64_t r = 0; r < N; ++r) {
      elem[r] = x.bits();
      x = polyMulMod(x, g, q);
    }
  }
  // Output digits of b/Q for every group element b.
  std::vector<std::uint64_t> digitsOf;
  if (!lattice) {
    const auto base = expansionMatrix(BinaryPolynomial(1), space.modulus(), space.w());
    digitsOf.resize(N);
    for (std::uint64_t r = 0; r < N; ++r) digitsOf[r] = base.apply(elem[r]);
  }

  std::vector<Candidate> choice;
  std::vector<double> trace;
  std::uint64_t evals = 0;
  for (int t = 0; t < space.innerDims(); ++t) {
    obj.begin(t);
    detail::Best best;
    if (t == 0 || N <= 1) {
      const Candidate c = *space.at(t, 0);
      const auto m = space.materialize(t, c);
      best.offer(obj.merit(m.data()), c);
      ++evals;
    } else {
      const auto form = obj.linearForm();
      const auto& A = *form.A;
      const auto& B = *form.B;
      const CoordinateKernel phi = obj.kernel(0, t);
      std::vector<double> f(N), b(N);
      for (std::uint64_t r = 0; r < N; ++r) {
        f[r] = lattice ? phi.fromRatio(elem[r], n) : phi.fromDigits(digitsOf[r], space.w());
        b[r] = B[elem[r]];
      }
      const auto corr = detail::cyclicCorrelation(b, f);
      // Terms independent of the candidate.
      CompensatedSum fixed;
      double scale = 0.0;
      for (std::uint64_t i = 0; i < n; ++i) {
        fixed.add(A[i]);
        scale += std::fabs(B[i]);
      }
      const double psi0 = lattice ? phi.fromRatio(0, n) : phi.fromDigits(0, space.w());
      fixed.add(B[0] * psi0);
      const double phantom = form.phantom ? A[n] + B[n] : 0.0;
      double fmax = 0.0;
      for (double v : f) fmax = std::max(fmax, std::fabs(v));
      std::vector<double> approx(N);
      double lo = std::numeric_limits<double>::infinity();
      for (std::uint64_t p = 0; p < N; ++p) {
        approx[p] = (fixed.value() + corr[p]) / static_cast<double>(n) - phantom;
        lo = std::min(lo, approx[p]);
      }
      const double tol = 1e-9 * (std::fabs(lo) + std::fabs(fixed.value()) / static_cast<double>(n) +
                                 scale * std::max(fmax, std::fabs(psi0)) / static_cast<double>(n)) +
                         1e-300;
      // Exact re-evaluation of the near-minimal candidates.
      std::vector<Candidate> near;
      for (std::uint64_t p = 0; p < N; ++p) {
        if (approx[p] <= lo + tol) near.push_back(Candidate{elem[p]});
      }
      evals += N;
      std::sort(near.begin(), near.end());
      std::uint64_t extra = 0;
      detail::scoreCandidates(obj, space, t, near, spec.threads, best, extra);
    }
    const auto m = space.materialize(t, best.candidate);
    obj.commit(m.data());
    choice.push_back(best.candidate);
    trace.push_back(best.merit);
  }
  return detail::finish(spec, space, std::move(choice), evals, std::move(trace));
}

// Dispatches on spec.method.
inline SearchResult runSearch(const SearchSpec& spec) {
  spec.fom.validate();
  const auto& m = spec.method;
  switch (m.tag) {
    case ExplorationMethod::Tag::Exhaustive: return exhaustiveSearch(spec);
    case ExplorationMethod::Tag::Random: return randomSearch(spec, m.r);
    case ExplorationMethod::Tag::FullCbc: return cbcSearch(spec);
    case ExplorationMethod::Tag::FastCbc: return fastCbcSearch(spec);
    case ExplorationMethod::Tag::RandomCbc: return randomCbcSearch(spec, m.r);
    case ExplorationMethod::Tag::Korobov: return korobovSearch(spec, false);
    case ExplorationMethod::Tag::RandomKorobov: return korobovSearch(spec, true, m.r);
    case ExplorationMethod::Tag::MixedCbc: return mixedCbcSearch(spec, m.r, m.pivot);
  }
  throw Error("unknown exploration method");
}

}  // namespace qmcforge
