#pragma once

// Point-set constructions: rank-1 lattices, digital nets in base 2,
// polynomial lattice rules, Sobol' nets, higher-order PLRs and interlacing.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <type_traits>
#include <string>
#include <variant>
#include <vector>

#include "qmcforge/error.hpp"
#include "qmcforge/gf2.hpp"

namespace qmcforge {

inline constexpr int kDefaultOutputDigits = 31;
inline constexpr int kMaxSizeExponent = 30;

// Dyadic value digits * 2^-w as a double strictly below 1.
inline double digitsToUnit(std::uint64_t digits, int w) {
  if (w > 53) {
    digits >>= (w - 53);
    w = 53;
  }
  return std::ldexp(static_cast<double>(digits), -w);
}

// ---------------------------------------------------------------------------
// Rank-1 lattice rules

class Rank1Lattice {
 public:
  Rank1Lattice(std::uint64_t n, std::vector<std::uint64_t> gen) : n_(n), gen_(std::move(gen)) {
    if (n_ < 1) throw Error("lattice size must be >= 1");
    if (gen_.empty()) throw Error("lattice needs at least one coordinate");
    for (auto& a : gen_) {
      if (a >= n_) throw Error("generating vector component " + std::to_string(a) + " not in Z_n");
    }
  }

  std::uint64_t size() const { return n_; }
  int dimension() const { return static_cast<int>(gen_.size()); }
  const std::vector<std::uint64_t>& generator() const { return gen_; }

  std::vector<double> point(std::uint64_t i) const {
    if (i >= n_) throw Error("point index " + std::to_string(i) + " out of range");
    std::vector<double> u;
    u.reserve(gen_.size());
    for (auto a : gen_) u.push_back(static_cast<double>(mulmod(i, a, n_)) / static_cast<double>(n_));
    return u;
  }

  // i * a_j mod n for i = 0..n-1.
  std::vector<std::uint64_t> numerators(int j) const { return latticeNumerators(gen_.at(static_cast<std::size_t>(j)), n_); }

  static std::vector<std::uint64_t> latticeNumerators(std::uint64_t a, std::uint64_t n) {
    std::vector<std::uint64_t> v(n);
    std::uint64_t x = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      v[i] = x;
      x += a;
      if (x >= n) x -= n;
    }
    return v;
  }

  friend bool operator==(const Rank1Lattice&, const Rank1Lattice&) = default;

 private:
  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
  }

  std::uint64_t n_;
  std::vector<std::uint64_t> gen_;
};

// (1, a, a^2 mod n, ..., a^(s-1) mod n)
inline std::vector<std::uint64_t> korobovVector(std::uint64_t a, int s, std::uint64_t n) {
  if (a < 1 || a >= n) throw Error("Korobov parameter must lie in [1, n)");
  std::vector<std::uint64_t> v(static_cast<std::size_t>(s));
  std::uint64_t x = 1 % n;
  for (auto& c : v) {
    c = x;
    x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * a) % n);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Digital nets in base 2

enum class NetCheck { Regular, ShapeOnly };

class DigitalNet {
 public:
  // All matrices must be w x k with the same w. With NetCheck::Regular every
  // matrix must have an invertible top k x k block.
  DigitalNet(int k, std::vector<GeneratingMatrix> matrices, NetCheck check = NetCheck::Regular)
      : k_(k), matrices_(std::move(matrices)) {
    if (k_ < 0 || k_ > kMaxSizeExponent) throw Error("net size exponent k out of range");
    if (matrices_.empty()) throw Error("digital net needs at least one coordinate");
    w_ = matrices_.front().rows();
    for (std::size_t j = 0; j < matrices_.size(); ++j) {
      const auto& m = matrices_[j];
      if (m.cols() != k_ || m.rows() != w_) throw Error("generating matrix " + std::to_string(j + 1) + " has wrong shape");
      if (check == NetCheck::Regular && !isProjectionRegular(m)) {
        throw Error("generating matrix " + std::to_string(j + 1) + " is not of rank k in its top k rows");
      }
    }
  }

  int k() const { return k_; }
  int w() const { return w_; }
  std::uint64_t size() const { return std::uint64_t{1} << k_; }
  int dimension() const { return static_cast<int>(matrices_.size()); }
  const GeneratingMatrix& matrix(int j) const { return matrices_.at(static_cast<std::size_t>(j)); }
  const std::vector<GeneratingMatrix>& matrices() const { return matrices_; }

  std::uint64_t digits(std::uint64_t i, int j) const {
    if (i >= size()) throw Error("point index " + std::to_string(i) + " out of range");
    return matrix(j).apply(i);
  }

  std::vector<double> point(std::uint64_t i) const {
    std::vector<double> u;
    u.reserve(matrices_.size());
    for (int j = 0; j < dimension(); ++j) u.push_back(digitsToUnit(digits(i, j), w_));
    return u;
  }

  // Output digits of coordinate j for every point, in index order.
  std::vector<std::uint64_t> coordinateDigits(int j) const { return columnDigits(matrix(j), k_); }

  static std::vector<std::uint64_t> columnDigits(const GeneratingMatrix& m, int k) {
    const std::size_t n = std::size_t{1} << k;
    std::vector<std::uint64_t> v(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
      v[i] = v[i & (i - 1)] ^ m.column(std::countr_zero(i));
    }
    return v;
  }

  friend bool operator==(const DigitalNet&, const DigitalNet&) = default;

 private:
  int k_;
  int w_ = 0;
  std::vector<GeneratingMatrix> matrices_;
};

// ---------------------------------------------------------------------------
// Polynomial lattice rules

struct PolynomialLatticeRule {
  BinaryPolynomial modulus;
  std::vector<BinaryPolynomial> gen;
  int w = kDefaultOutputDigits;

  int k() const { return modulus.degree(); }
  int dimension() const { return static_cast<int>(gen.size()); }

  void validate() const {
    if (modulus.isZero() || modulus.degree() < 1) throw Error("polynomial modulus must have degree >= 1");
    if (k() > kMaxSizeExponent) throw Error("polynomial modulus degree exceeds " + std::to_string(kMaxSizeExponent));
    if (gen.empty()) throw Error("polynomial lattice rule needs at least one coordinate");
    if (w < k() || w > GeneratingMatrix::kMaxRows) throw Error("output digits w must satisfy k <= w <= 63");
    for (std::size_t j = 0; j < gen.size(); ++j) {
      if (!gen[j].isZero() && gen[j].degree() >= k()) throw Error("generating polynomial " + std::to_string(j + 1) + " has degree >= k");
      if (gen[j].isZero() || gcdPoly(gen[j], modulus) != BinaryPolynomial(1)) {
        throw Error("generating polynomial " + std::to_string(j + 1) + " shares a factor with the modulus");
      }
    }
  }

  friend bool operator==(const PolynomialLatticeRule&, const PolynomialLatticeRule&) = default;
};

inline DigitalNet plrToNet(const PolynomialLatticeRule& plr) {
  plr.validate();
  std::vector<GeneratingMatrix> mats;
  mats.reserve(plr.gen.size());
  for (auto a : plr.gen) mats.push_back(expansionMatrix(a, plr.modulus, plr.w));
  return DigitalNet(plr.k(), std::move(mats));
}

namespace detail {
// First `cols` columns of the Hankel matrix of a/q with w rows; no rank or
// w >= deg(q) requirement (used for truncated higher-order rules).
inline GeneratingMatrix hankelColumns(BinaryPolynomial a, BinaryPolynomial q, int w, int cols) {
  const auto y = expansionDigits(a, q, static_cast<std::size_t>(w + cols));
  GeneratingMatrix m(w, cols);
  for (int l = 0; l < w; ++l) {
    for (int c = 0; c < cols; ++c) m.set(l, c, y[static_cast<std::size_t>(l + c)] != 0);
  }
  return m;
}
}  // namespace detail

// Higher-order PLR: modulus of degree alpha*k, only the first 2^k points.
struct HigherOrderPlr {
  PolynomialLatticeRule rule;  // modulus of degree alpha * k
  int k = 0;

  int order() const { return k > 0 ? rule.modulus.degree() / k : 0; }

  void validate() const {
    const int big = rule.modulus.degree();
    if (k < 1 || big < k || big % k != 0) throw Error("higher-order modulus degree must be a multiple alpha*k of k");
    if (big > 62) throw Error("higher-order modulus degree exceeds 62");
    if (rule.w < k || rule.w > GeneratingMatrix::kMaxRows) throw Error("output digits w must satisfy k <= w <= 63");
    for (auto a : rule.gen) {
      if (a.isZero() || a.degree() >= big || gcdPoly(a, rule.modulus) != BinaryPolynomial(1)) {
        throw Error("higher-order generating polynomial is not admissible");
      }
    }
  }

  friend bool operator==(const HigherOrderPlr&, const HigherOrderPlr&) = default;
};

inline DigitalNet hoplrToNet(const HigherOrderPlr& h) {
  h.validate();
  std::vector<GeneratingMatrix> mats;
  for (auto a : h.rule.gen) mats.push_back(detail::hankelColumns(a, h.rule.modulus, h.rule.w, h.k));
  return DigitalNet(h.k, std::move(mats), NetCheck::ShapeOnly);
}

inline std::vector<std::vector<double>> hoplrPoints(BinaryPolynomial modulus, std::vector<BinaryPolynomial> gen, int k,
                                                    int w = kDefaultOutputDigits) {
  const DigitalNet net = hoplrToNet(HigherOrderPlr{{modulus, std::move(gen), w}, k});
  std::vector<std::vector<double>> pts;
  pts.reserve(net.size());
  for (std::uint64_t i = 0; i < net.size(); ++i) pts.push_back(net.point(i));
  return pts;
}

// ---------------------------------------------------------------------------
// Sobol' nets

struct SobolSpec {
  // directionNumbers[t] holds m_{j,1}, m_{j,2}, ... for coordinate j = t + 2.
  std::vector<std::vector<std::uint64_t>> directionNumbers;
  // Primitive polynomial per coordinate j >= 2 (same indexing); empty means
  // the standard ordering by degree then encoding.
  std::vector<BinaryPolynomial> polynomials;

  int coordinates() const { return static_cast<int>(directionNumbers.size()) + 1; }

  BinaryPolynomial polynomial(std::size_t t) const {
    if (!polynomials.empty()) return polynomials.at(t);
    return standardPolynomials(t + 1)[t];
  }

  static const std::vector<BinaryPolynomial>& standardPolynomials(std::size_t count) {
    static thread_local std::vector<BinaryPolynomial> cache;
    if (cache.size() < count) cache = primitivePolynomials(std::max<std::size_t>(count, 2 * cache.size()));
    return cache;
  }

  void validate() const {
    for (std::size_t t = 0; t < directionNumbers.size(); ++t) {
      for (std::size_t c = 0; c < directionNumbers[t].size(); ++c) {
        const auto m = directionNumbers[t][c];
        if (m % 2 == 0) throw Error("direction number m_{" + std::to_string(t + 2) + "," + std::to_string(c + 1) + "} is even");
        if (c + 1 < 64 && m >= (std::uint64_t{1} << (c + 1))) {
          throw Error("direction number m_{" + std::to_string(t + 2) + "," + std::to_string(c + 1) + "} exceeds 2^c");
        }
      }
    }
  }

  friend bool operator==(const SobolSpec&, const SobolSpec&) = default;
};

// m_{j,1..k} extended by the recurrence of the primitive polynomial p.
inline std::vector<std::uint64_t> sobolDirectionSequence(BinaryPolynomial p, const std::vector<std::uint64_t>& initial,
                                                         int k) {
  const int e = p.degree();
  const int given = std::min(e, k);
  if (static_cast<int>(initial.size()) < given) throw Error("missing direction numbers for polynomial " + p.toString());
  std::vector<std::uint64_t> m(static_cast<std::size_t>(k));
  for (int c = 0; c < given; ++c) m[static_cast<std::size_t>(c)] = initial[static_cast<std::size_t>(c)];
  for (int c = e; c < k; ++c) {
    std::uint64_t v = m[static_cast<std::size_t>(c - e)] ^ (m[static_cast<std::size_t>(c - e)] << e);
    for (int i = 1; i < e; ++i) {
      if (p.coefficient(e - i)) v ^= m[static_cast<std::size_t>(c - i)] << i;
    }
    m[static_cast<std::size_t>(c)] = v;
  }
  return m;
}

// k x k (or w x k) upper-triangular Sobol' matrix from direction numbers m_1..m_k.
inline GeneratingMatrix sobolMatrix(const std::vector<std::uint64_t>& m, int k, int w) {
  std::vector<std::uint64_t> cols(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) cols[static_cast<std::size_t>(c)] = m[static_cast<std::size_t>(c)] << (w - (c + 1));
  return GeneratingMatrix::fromColumns(w, std::move(cols));
}

inline DigitalNet sobolNet(const SobolSpec& spec, int s, int k, int w = 0) {
  spec.validate();
  if (w == 0) w = k;
  if (k < 1 || w < k || w > GeneratingMatrix::kMaxRows) throw Error("Sobol' net requires 1 <= k <= w <= 63");
  if (s < 1) throw Error("dimension must be >= 1");
  if (s > spec.coordinates()) throw Error("missing direction numbers for coordinate " + std::to_string(spec.coordinates() + 1));
  std::vector<GeneratingMatrix> mats;
  mats.push_back(GeneratingMatrix::identity(w, k));
  for (int j = 2; j <= s; ++j) {
    const auto t = static_cast<std::size_t>(j - 2);
    mats.push_back(sobolMatrix(sobolDirectionSequence(spec.polynomial(t), spec.directionNumbers[t], k), k, w));
  }
  return DigitalNet(k, std::move(mats));
}

struct SobolNet {
  SobolSpec spec;
  int s = 1;
  int k = 1;
  int w = 0;  // 0 means w = k
  friend bool operator==(const SobolNet&, const SobolNet&) = default;
};

// ---------------------------------------------------------------------------
// Interlacing

// Row m*d + l of output matrix j is row m of inner matrix j*d + l (0-based);
// the output keeps min(w, d*k) rows, capped at 63.
inline DigitalNet interlace(const DigitalNet& inner, int d) {
  if (d < 1) throw Error("interlacing factor must be >= 1");
  if (inner.dimension() % d != 0) throw Error("inner dimension " + std::to_string(inner.dimension()) + " is not divisible by d");
  if (d == 1) return inner;
  const int k = inner.k();
  const int rows = std::min({inner.w(), d * k, GeneratingMatrix::kMaxRows});
  std::vector<GeneratingMatrix> mats;
  for (int j = 0; j < inner.dimension() / d; ++j) {
    GeneratingMatrix out(rows, k);
    for (int r = 0; r < rows; ++r) {
      const auto& src = inner.matrix(j * d + r % d);
      for (int c = 0; c < k; ++c) out.set(r, c, src.get(r / d, c));
    }
    mats.push_back(std::move(out));
  }
  return DigitalNet(k, std::move(mats), NetCheck::ShapeOnly);
}

// Interleave the digits of d inner coordinates into one output coordinate:
// output digit m*d + l is digit m of inner value l. Output has min(d*w, 63) digits.
inline std::uint64_t interleaveDigits(const std::uint64_t* inner, int d, int w) {
  const int outDigits = std::min(d * w, 63);
  std::uint64_t out = 0;
  for (int r = 0; r < outDigits; ++r) {
    const std::uint64_t bit = (inner[r % d] >> (w - 1 - r / d)) & 1U;
    out |= bit << (outDigits - 1 - r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tagged union of definitions

using InnerNetDef = std::variant<DigitalNet, PolynomialLatticeRule, SobolNet, HigherOrderPlr>;

struct InterlacedNet {
  InnerNetDef inner;
  int d = 1;
  friend bool operator==(const InterlacedNet&, const InterlacedNet&) = default;
};

using PointSetDef = std::variant<Rank1Lattice, DigitalNet, PolynomialLatticeRule, SobolNet, HigherOrderPlr, InterlacedNet>;

inline DigitalNet toDigitalNet(const InnerNetDef& def) {
  return std::visit(
      [](const auto& x) -> DigitalNet {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DigitalNet>) return x;
        else if constexpr (std::is_same_v<T, PolynomialLatticeRule>) return plrToNet(x);
        else if constexpr (std::is_same_v<T, SobolNet>) return sobolNet(x.spec, x.s, x.k, x.w);
        else return hoplrToNet(x);
      },
      def);
}

inline bool isNet(const PointSetDef& def) { return !std::holds_alternative<Rank1Lattice>(def); }

// The s-dimensional digital net of any net-type definition (interlaced ones
// are interlaced).
inline DigitalNet toDigitalNet(const PointSetDef& def) {
  return std::visit(
      [](const auto& x) -> DigitalNet {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rank1Lattice>) throw Error("a rank-1 lattice is not a digital net");
        else if constexpr (std::is_same_v<T, InterlacedNet>) return interlace(toDigitalNet(x.inner), x.d);
        else return toDigitalNet(InnerNetDef(x));
      },
      def);
}

inline std::uint64_t pointCount(const PointSetDef& def) {
  if (const auto* lat = std::get_if<Rank1Lattice>(&def)) return lat->size();
  if (const auto* p = std::get_if<PolynomialLatticeRule>(&def)) return std::uint64_t{1} << p->k();
  if (const auto* h = std::get_if<HigherOrderPlr>(&def)) return std::uint64_t{1} << h->k;
  if (const auto* s = std::get_if<SobolNet>(&def)) return std::uint64_t{1} << s->k;
  return toDigitalNet(def).size();
}

inline int dimension(const PointSetDef& def) {
  return std::visit(
      [](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SobolNet>) return x.s;
        else if constexpr (std::is_same_v<T, HigherOrderPlr>) return x.rule.dimension();
        else if constexpr (std::is_same_v<T, InterlacedNet>) {
          return std::visit(
                     [](const auto& in) -> int {
                       using U = std::decay_t<decltype(in)>;
                       if constexpr (std::is_same_v<U, SobolNet>) return in.s;
                       else if constexpr (std::is_same_v<U, HigherOrderPlr>) return in.rule.dimension();
                       else return in.dimension();
                     },
                     x.inner) /
                 x.d;
        } else return x.dimension();
      },
      def);
}

}  // namespace qmcforge
