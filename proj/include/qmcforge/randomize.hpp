#pragma once

// Randomizations of point sets (random shift, digital shift, left matrix
// scramble plus shift, nested uniform scramble) and point streaming.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmcforge/error.hpp"
#include "qmcforge/gf2.hpp"
#include "qmcforge/pointsets.hpp"
#include "qmcforge/rng.hpp"

namespace qmcforge {

struct Randomization {
  enum class Tag { None, ShiftMod1, DigitalShift, LmsPlusShift, Nus };
  Tag tag = Tag::None;
  std::uint64_t seed = 0;
};

inline const char* randomizationName(Randomization::Tag t) {
  switch (t) {
    case Randomization::Tag::None: return "none";
    case Randomization::Tag::ShiftMod1: return "shift";
    case Randomization::Tag::DigitalShift: return "digital-shift";
    case Randomization::Tag::LmsPlusShift: return "LMS";
    case Randomization::Tag::Nus: return "NUS";
  }
  return "?";
}

struct RandomizedPointSet {
  PointSetDef base;
  Randomization randomization;
  std::uint64_t replicateIndex = 0;
};

// ---------------------------------------------------------------------------
// Elementary operations

// Point i coordinate j = (i a_j / n + u_j) mod 1.
inline std::vector<std::vector<double>> shiftLattice(const Rank1Lattice& lat, const std::vector<double>& u) {
  if (u.size() != static_cast<std::size_t>(lat.dimension())) throw Error("shift dimension mismatch");
  for (double x : u) {
    if (!(x >= 0.0 && x < 1.0)) throw Error("shift components must lie in [0, 1)");
  }
  std::vector<std::vector<double>> pts(lat.size());
  for (std::uint64_t i = 0; i < lat.size(); ++i) {
    auto p = lat.point(i);
    for (std::size_t j = 0; j < p.size(); ++j) {
      p[j] += u[j];
      if (p[j] >= 1.0) p[j] -= 1.0;
    }
    pts[i] = std::move(p);
  }
  return pts;
}

// Digits of every point XORed with the per-coordinate w-digit shifts.
inline std::vector<std::vector<double>> digitalShift(const DigitalNet& net, const std::vector<std::uint64_t>& shiftDigits) {
  if (shiftDigits.size() != static_cast<std::size_t>(net.dimension())) throw Error("shift dimension mismatch");
  const std::uint64_t mask = GeneratingMatrix::rowMask(net.w());
  for (auto s : shiftDigits) {
    if (s & ~mask) throw Error("shift has nonzero digits beyond w");
  }
  std::vector<std::vector<double>> pts(net.size(), std::vector<double>(shiftDigits.size()));
  for (int j = 0; j < net.dimension(); ++j) {
    const auto y = net.coordinateDigits(j);
    for (std::uint64_t i = 0; i < net.size(); ++i) pts[i][static_cast<std::size_t>(j)] = digitsToUnit(y[i] ^ shiftDigits[static_cast<std::size_t>(j)], net.w());
  }
  return pts;
}

// Shift given as reals in [0,1); digits beyond w must be zero.
inline std::vector<std::vector<double>> digitalShift(const DigitalNet& net, const std::vector<double>& u) {
  std::vector<std::uint64_t> digits;
  for (double x : u) {
    if (!(x >= 0.0 && x < 1.0)) throw Error("shift components must lie in [0, 1)");
    const double scaled = std::ldexp(x, net.w());
    if (scaled != std::floor(scaled)) throw Error("shift has nonzero digits beyond w");
    digits.push_back(static_cast<std::uint64_t>(scaled));
  }
  return digitalShift(net, digits);
}

inline bool isUnitLowerTriangular(const GeneratingMatrix& l) {
  if (l.rows() != l.cols()) return false;
  for (int r = 0; r < l.rows(); ++r) {
    if (!l.get(r, r)) return false;
    for (int c = r + 1; c < l.cols(); ++c) {
      if (l.get(r, c)) return false;
    }
  }
  return true;
}

// Matrices replaced by L_j C_j.
inline DigitalNet lms(const DigitalNet& net, const std::vector<GeneratingMatrix>& lowerTriangulars) {
  if (lowerTriangulars.size() != static_cast<std::size_t>(net.dimension())) throw Error("need one scrambling matrix per coordinate");
  std::vector<GeneratingMatrix> mats;
  for (int j = 0; j < net.dimension(); ++j) {
    const auto& l = lowerTriangulars[static_cast<std::size_t>(j)];
    if (l.rows() != net.w() || l.cols() != net.w()) throw Error("scrambling matrix must be w x w");
    if (!isUnitLowerTriangular(l)) throw Error("scrambling matrix " + std::to_string(j + 1) + " is not nonsingular lower-triangular");
    mats.push_back(multiply(l, net.matrix(j)));
  }
  return DigitalNet(net.k(), std::move(mats), NetCheck::ShapeOnly);
}

// w x w unit lower-triangular matrix with uniform strictly-lower bits.
inline GeneratingMatrix randomLowerTriangular(int w, CounterStream& rng) {
  GeneratingMatrix l = GeneratingMatrix::identity(w);
  for (int r = 1; r < w; ++r) {
    const std::uint64_t bits = rng.bits(r);
    for (int c = 0; c < r; ++c) l.set(r, c, (bits >> c) & 1U);
  }
  return l;
}

namespace detail {

// Nested uniform scramble of one coordinate: flip tree over the first k
// digits, uniform digits k+1..w per point. Node and tail bits are hashed
// from the counter stream, so nothing is stored.
class NestedScrambler {
 public:
  NestedScrambler(std::uint64_t seed, std::uint64_t replicate, std::uint64_t coordinate, int k, int w)
      : stream_(seed, streamId({static_cast<std::uint64_t>(StreamTag::NestedScramble), replicate, coordinate})), k_(k), w_(w) {}

  std::uint64_t operator()(std::uint64_t y, std::uint64_t pointIndex) const {
    std::uint64_t out = 0;
    for (int l = 0; l < k_; ++l) {
      const int shift = w_ - 1 - l;
      const std::uint64_t prefix = l == 0 ? 0 : y >> (w_ - l);
      const std::uint64_t node = (std::uint64_t{1} << l) | prefix;
      const std::uint64_t flip = stream_.wordAt(node) & 1U;
      out |= (((y >> shift) & 1U) ^ flip) << shift;
    }
    if (w_ > k_) {
      out |= stream_.wordAt((std::uint64_t{1} << 40) + pointIndex) & GeneratingMatrix::rowMask(w_ - k_);
    }
    return out;
  }

 private:
  CounterStream stream_;
  int k_;
  int w_;
};

}  // namespace detail

// Nested uniform scramble of every point of the net.
inline std::vector<std::vector<std::uint64_t>> nusDigits(const DigitalNet& net, std::uint64_t seed, std::uint64_t replicate = 0) {
  std::vector<std::vector<std::uint64_t>> out(static_cast<std::size_t>(net.dimension()));
  for (int j = 0; j < net.dimension(); ++j) {
    const detail::NestedScrambler scr(seed, replicate, static_cast<std::uint64_t>(j), net.k(), net.w());
    const auto y = net.coordinateDigits(j);
    auto& col = out[static_cast<std::size_t>(j)];
    col.resize(y.size());
    for (std::uint64_t i = 0; i < y.size(); ++i) col[i] = scr(y[i], i);
  }
  return out;
}

inline std::vector<std::vector<double>> nus(const DigitalNet& net, std::uint64_t seed, std::uint64_t replicate = 0) {
  const auto digits = nusDigits(net, seed, replicate);
  std::vector<std::vector<double>> pts(net.size(), std::vector<double>(digits.size()));
  for (std::size_t j = 0; j < digits.size(); ++j) {
    for (std::uint64_t i = 0; i < net.size(); ++i) pts[i][j] = digitsToUnit(digits[j][i], net.w());
  }
  return pts;
}

// ---------------------------------------------------------------------------
// Prepared generator

// A randomized point set with all random draws made; point(i) is pure.
class RandomizedGenerator {
 public:
  RandomizedGenerator(const PointSetDef& base, const Randomization& rnd, std::uint64_t replicate) : tag_(rnd.tag) {
    if (const auto* lat = std::get_if<Rank1Lattice>(&base)) {
      if (tag_ != Randomization::Tag::None && tag_ != Randomization::Tag::ShiftMod1) {
        throw Error(std::string(randomizationName(tag_)) + " applies to digital nets, not lattices");
      }
      lattice_ = *lat;
      n_ = lat->size();
      dims_ = lat->dimension();
      if (tag_ == Randomization::Tag::ShiftMod1) {
        for (int j = 0; j < dims_; ++j) shift_.push_back(makeStream(rnd.seed, StreamTag::Shift, replicate, static_cast<std::uint64_t>(j)).uniform());
      }
      return;
    }
    if (tag_ == Randomization::Tag::ShiftMod1) throw Error("shift mod 1 applies to lattices, not digital nets");
    if (const auto* il = std::get_if<InterlacedNet>(&base)) {
      net_ = toDigitalNet(il->inner);
      d_ = il->d;
      if (net_->dimension() % d_ != 0) throw Error("inner dimension is not divisible by d");
    } else {
      net_ = toDigitalNet(base);
    }
    n_ = net_->size();
    dims_ = net_->dimension() / d_;
    const int w = net_->w();
    const int inner = net_->dimension();
    if (tag_ == Randomization::Tag::LmsPlusShift) {
      std::vector<GeneratingMatrix> ls;
      for (int j = 0; j < inner; ++j) {
        auto rng = makeStream(rnd.seed, StreamTag::LinearScramble, replicate, static_cast<std::uint64_t>(j));
        ls.push_back(randomLowerTriangular(w, rng));
      }
      net_ = lms(*net_, ls);
    }
    if (tag_ == Randomization::Tag::DigitalShift || tag_ == Randomization::Tag::LmsPlusShift) {
      for (int j = 0; j < inner; ++j) {
        digitShift_.push_back(makeStream(rnd.seed, StreamTag::DigitalShift, replicate, static_cast<std::uint64_t>(j)).bits(w));
      }
    }
    if (tag_ == Randomization::Tag::Nus) {
      for (int j = 0; j < inner; ++j) scramblers_.emplace_back(rnd.seed, replicate, static_cast<std::uint64_t>(j), net_->k(), w);
    }
  }

  std::uint64_t size() const { return n_; }
  int dimension() const { return dims_; }
  bool isNet() const { return net_.has_value(); }
  // Binary digits per output coordinate (nets only).
  int outputDigits() const { return d_ == 1 ? net_->w() : std::min(d_ * net_->w(), 63); }

  // Output digits of point i, coordinate j (nets only).
  std::uint64_t digits(std::uint64_t i, int j) const {
    if (d_ == 1) return innerDigits(i, j);
    std::vector<std::uint64_t> in(static_cast<std::size_t>(d_));
    for (int l = 0; l < d_; ++l) in[static_cast<std::size_t>(l)] = innerDigits(i, j * d_ + l);
    return interleaveDigits(in.data(), d_, net_->w());
  }

  std::vector<double> point(std::uint64_t i) const {
    std::vector<double> u(static_cast<std::size_t>(dims_));
    if (lattice_) {
      u = lattice_->point(i);
      for (std::size_t j = 0; j < shift_.size(); ++j) {
        u[j] += shift_[j];
        if (u[j] >= 1.0) u[j] -= 1.0;
      }
      return u;
    }
    const int digitsOut = outputDigits();
    for (int j = 0; j < dims_; ++j) u[static_cast<std::size_t>(j)] = digitsToUnit(digits(i, j), digitsOut);
    return u;
  }

 private:
  std::uint64_t innerDigits(std::uint64_t i, int j) const {
    std::uint64_t y = net_->digits(i, j);
    if (!digitShift_.empty()) y ^= digitShift_[static_cast<std::size_t>(j)];
    if (!scramblers_.empty()) y = scramblers_[static_cast<std::size_t>(j)](y, i);
    return y;
  }

  Randomization::Tag tag_;
  std::optional<Rank1Lattice> lattice_;
  std::optional<DigitalNet> net_;
  int d_ = 1;
  std::uint64_t n_ = 0;
  int dims_ = 0;
  std::vector<double> shift_;
  std::vector<std::uint64_t> digitShift_;
  std::vector<detail::NestedScrambler> scramblers_;
};

// Points [begin, end) of the randomized set.
inline std::vector<std::vector<double>> generateStream(const RandomizedPointSet& rps, std::uint64_t begin, std::uint64_t end) {
  const RandomizedGenerator gen(rps.base, rps.randomization, rps.replicateIndex);
  if (begin > end || end > gen.size()) throw Error("point range out of bounds");
  std::vector<std::vector<double>> pts;
  pts.reserve(end - begin);
  for (std::uint64_t i = begin; i < end; ++i) pts.push_back(gen.point(i));
  return pts;
}

inline std::vector<std::vector<double>> generateStream(const RandomizedPointSet& rps) {
  return generateStream(rps, 0, pointCount(rps.base));
}

// n i.i.d. uniform points (Monte Carlo baseline).
inline std::vector<std::vector<double>> iidPoints(std::uint64_t n, int s, std::uint64_t seed, std::uint64_t replicate) {
  auto rng = makeStream(seed, StreamTag::IidPoints, replicate);
  std::vector<std::vector<double>> pts(n, std::vector<double>(static_cast<std::size_t>(s)));
  for (auto& p : pts) {
    for (auto& x : p) x = rng.uniform();
  }
  return pts;
}

}  // namespace qmcforge
