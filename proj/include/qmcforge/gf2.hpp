#pragma once

// Arithmetic in Z2[z] and binary linear algebra.
//
// A polynomial is stored as a 64-bit word: the coefficient of z^i is bit i,
// so the integer encoding used in parameter files is simply the word value.

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "qmcforge/error.hpp"

namespace qmcforge {

class BinaryPolynomial {
 public:
  // Degree of the zero polynomial.
  static constexpr int kMinusInfinity = std::numeric_limits<int>::min();

  constexpr BinaryPolynomial() = default;
  constexpr explicit BinaryPolynomial(std::uint64_t bits) : bits_(bits) {}

  static constexpr BinaryPolynomial monomial(int power) {
    if (power < 0 || power > 63) throw Error("monomial power out of range");
    return BinaryPolynomial(std::uint64_t{1} << power);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool isZero() const { return bits_ == 0; }
  constexpr int degree() const { return bits_ == 0 ? kMinusInfinity : 63 - std::countl_zero(bits_); }
  constexpr bool coefficient(int i) const { return i >= 0 && i < 64 && ((bits_ >> i) & 1U); }

  friend constexpr BinaryPolynomial operator+(BinaryPolynomial a, BinaryPolynomial b) {
    return BinaryPolynomial(a.bits_ ^ b.bits_);
  }
  friend constexpr bool operator==(BinaryPolynomial, BinaryPolynomial) = default;
  friend constexpr auto operator<=>(BinaryPolynomial a, BinaryPolynomial b) { return a.bits_ <=> b.bits_; }

  // "z^4+z+1" style rendering, for messages and tests.
  std::string toString() const {
    if (bits_ == 0) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      if (!coefficient(i)) continue;
      if (!out.empty()) out += "+";
      if (i == 0) out += "1";
      else if (i == 1) out += "z";
      else out += "z^" + std::to_string(i);
    }
    return out;
  }

 private:
  std::uint64_t bits_ = 0;
};

// Quotient and remainder of a / q.
inline std::pair<BinaryPolynomial, BinaryPolynomial> polyDivMod(BinaryPolynomial a, BinaryPolynomial q) {
  if (q.isZero()) throw Error("zero modulus");
  const int dq = q.degree();
  std::uint64_t rem = a.bits();
  std::uint64_t quo = 0;
  while (rem != 0) {
    const int dr = 63 - std::countl_zero(rem);
    if (dr < dq) break;
    quo |= std::uint64_t{1} << (dr - dq);
    rem ^= q.bits() << (dr - dq);
  }
  return {BinaryPolynomial(quo), BinaryPolynomial(rem)};
}

inline BinaryPolynomial polyMod(BinaryPolynomial a, BinaryPolynomial q) { return polyDivMod(a, q).second; }

// Plain product; the result must fit in degree 63.
inline BinaryPolynomial polyMul(BinaryPolynomial a, BinaryPolynomial b) {
  if (a.isZero() || b.isZero()) return {};
  if (a.degree() + b.degree() > 63) throw Error("polynomial product exceeds degree 63");
  std::uint64_t out = 0;
  std::uint64_t bb = b.bits();
  for (int i = 0; bb != 0; ++i, bb >>= 1) {
    if (bb & 1U) out ^= a.bits() << i;
  }
  return BinaryPolynomial(out);
}

// (a*b) mod q, for any q of degree <= 63.
inline BinaryPolynomial polyMulMod(BinaryPolynomial a, BinaryPolynomial b, BinaryPolynomial q) {
  if (q.isZero()) throw Error("zero modulus");
  const int dq = q.degree();
  if (dq == 0) return {};
  const std::uint64_t top = std::uint64_t{1} << dq;
  const std::uint64_t am = polyMod(a, q).bits();
  const std::uint64_t bm = polyMod(b, q).bits();
  std::uint64_t acc = 0;
  for (int i = dq - 1; i >= 0; --i) {
    acc <<= 1;
    if (acc & top) acc ^= q.bits();
    if ((bm >> i) & 1U) acc ^= am;
  }
  return BinaryPolynomial(acc);
}

inline BinaryPolynomial polyPowMod(BinaryPolynomial base, std::uint64_t exponent, BinaryPolynomial q) {
  BinaryPolynomial result = polyMod(BinaryPolynomial(1), q);
  BinaryPolynomial b = polyMod(base, q);
  while (exponent != 0) {
    if (exponent & 1U) result = polyMulMod(result, b, q);
    b = polyMulMod(b, b, q);
    exponent >>= 1;
  }
  return result;
}

// Monic gcd. Over Z2 every nonzero polynomial is monic.
inline BinaryPolynomial gcdPoly(BinaryPolynomial a, BinaryPolynomial b) {
  if (a.isZero() && b.isZero()) throw Error("gcd of two zero polynomials");
  while (!b.isZero()) {
    BinaryPolynomial r = polyMod(a, b);
    a = b;
    b = r;
  }
  return a;
}

// Ben-Or test: q is irreducible iff gcd(z^(2^i) - z, q) = 1 for i <= deg(q)/2.
inline bool isIrreducible(BinaryPolynomial q) {
  const int d = q.degree();
  if (d < 1) throw Error("irreducibility is defined for degree >= 1, got " + q.toString());
  if (d == 1) return true;
  const BinaryPolynomial z(2);
  BinaryPolynomial power = z;
  for (int i = 1; i <= d / 2; ++i) {
    power = polyMulMod(power, power, q);
    if (gcdPoly(q, power + z) != BinaryPolynomial(1)) return false;
  }
  return true;
}

// Distinct prime factors by trial division (inputs here are at most 2^63).
inline std::vector<std::uint64_t> primeFactors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// True iff g has multiplicative order `order` modulo q, given the prime
// factors of `order`.
inline bool hasOrder(BinaryPolynomial g, std::uint64_t order, const std::vector<std::uint64_t>& factors,
                     BinaryPolynomial q) {
  const BinaryPolynomial one(1);
  if (polyPowMod(g, order, q) != one) return false;
  return std::none_of(factors.begin(), factors.end(),
                      [&](std::uint64_t p) { return polyPowMod(g, order / p, q) == one; });
}

inline bool isPrimitive(BinaryPolynomial q) {
  const int d = q.degree();
  if (d < 1 || !isIrreducible(q)) return false;
  if (d == 1) return true;  // z and z+1; the unit group of GF(2) is trivial
  const std::uint64_t order = (std::uint64_t{1} << d) - 1;
  return hasOrder(BinaryPolynomial(2), order, primeFactors(order), q);
}

// Smallest irreducible polynomial of degree k under the integer encoding.
inline BinaryPolynomial defaultModulus(int k) {
  if (k < 1 || k > 62) throw Error("modulus degree must be in [1, 62]");
  const std::uint64_t lo = std::uint64_t{1} << k;
  for (std::uint64_t v = lo; v < (lo << 1); ++v) {
    if (isIrreducible(BinaryPolynomial(v))) return BinaryPolynomial(v);
  }
  throw Error("no irreducible polynomial found");  // unreachable
}

// A generator of the multiplicative group of Z2[z]/q for irreducible q,
// the smallest one under the integer encoding.
inline BinaryPolynomial multiplicativeGenerator(BinaryPolynomial q) {
  const int d = q.degree();
  if (d < 1 || !isIrreducible(q)) throw Error("multiplicative generator requires an irreducible modulus");
  if (d == 1) return BinaryPolynomial(1);
  const std::uint64_t order = (std::uint64_t{1} << d) - 1;
  const auto factors = primeFactors(order);
  for (std::uint64_t v = 2; v < (std::uint64_t{1} << d); ++v) {
    if (hasOrder(BinaryPolynomial(v), order, factors, q)) return BinaryPolynomial(v);
  }
  throw Error("no generator found");  // unreachable for irreducible q
}

// The first `count` primitive polynomials ordered by degree, then encoding.
// This is the usual ordering for Sobol' coordinates 2, 3, ...
inline std::vector<BinaryPolynomial> primitivePolynomials(std::size_t count) {
  std::vector<BinaryPolynomial> out;
  for (int d = 1; out.size() < count; ++d) {
    if (d > 31) throw Error("primitive polynomial table exhausted");
    const std::uint64_t lo = std::uint64_t{1} << d;
    for (std::uint64_t v = lo | 1U; v < (lo << 1) && out.size() < count; v += 2) {
      if (isPrimitive(BinaryPolynomial(v))) out.emplace_back(v);
    }
  }
  return out;
}

// Digits x_1..x_count of the formal Laurent expansion of a(z)/q(z) in z^-1,
// for deg(a) < deg(q). Digit l is out[l-1].
inline std::vector<std::uint8_t> expansionDigits(BinaryPolynomial a, BinaryPolynomial q, std::size_t count) {
  const int k = q.degree();
  if (k < 1) throw Error("expansion requires a modulus of degree >= 1");
  if (!a.isZero() && a.degree() >= k) throw Error("deg(a) must be smaller than deg(q)");
  std::vector<std::uint8_t> y(count + 1, 0);
  for (std::size_t r = 1; r <= count; ++r) {
    const long lead = static_cast<long>(k) - static_cast<long>(r);
    unsigned v = lead >= 0 ? (a.coefficient(static_cast<int>(lead)) ? 1U : 0U) : 0U;
    for (int m = 0; m < k; ++m) {
      const long idx = static_cast<long>(r) - k + m;
      if (idx >= 1 && q.coefficient(m)) v ^= y[static_cast<std::size_t>(idx)];
    }
    y[r] = static_cast<std::uint8_t>(v);
  }
  y.erase(y.begin());
  return y;
}

// A w x k matrix over Z2, w, k <= 63. Column c is held as a w-bit integer
// whose most significant bit is row 0, i.e. column value = sum_l bit(l,c) 2^(w-1-l)
// with l 0-based. This is exactly the integer written to net parameter files.
class GeneratingMatrix {
 public:
  static constexpr int kMaxRows = 63;
  static constexpr int kMaxCols = 63;

  GeneratingMatrix() = default;
  GeneratingMatrix(int rows, int cols) : rows_(rows), cols_(cols), columns_(static_cast<std::size_t>(cols), 0) {
    if (rows < 1 || rows > kMaxRows || cols < 1 || cols > kMaxCols) {
      throw Error("matrix shape " + std::to_string(rows) + "x" + std::to_string(cols) + " out of range");
    }
  }

  static GeneratingMatrix identity(int size) { return identity(size, size); }
  // Top block identity, zero below.
  static GeneratingMatrix identity(int rows, int cols) {
    GeneratingMatrix m(rows, cols);
    for (int i = 0; i < std::min(rows, cols); ++i) m.set(i, i, true);
    return m;
  }

  static GeneratingMatrix fromColumns(int rows, std::vector<std::uint64_t> columns) {
    GeneratingMatrix m(rows, static_cast<int>(columns.size()));
    const std::uint64_t mask = rowMask(rows);
    for (auto c : columns) {
      if ((c & ~mask) != 0) throw Error("column integer exceeds " + std::to_string(rows) + " bits");
    }
    m.columns_ = std::move(columns);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool get(int r, int c) const { return (columns_[idx(c)] >> shift(r)) & 1U; }
  void set(int r, int c, bool bit) {
    const std::uint64_t m = std::uint64_t{1} << shift(r);
    if (bit) columns_[idx(c)] |= m;
    else columns_[idx(c)] &= ~m;
  }

  std::uint64_t column(int c) const { return columns_[idx(c)]; }
  const std::vector<std::uint64_t>& columns() const { return columns_; }

  // Row r as a k-bit vector, bit c = entry (r, c).
  std::uint64_t row(int r) const {
    std::uint64_t out = 0;
    for (int c = 0; c < cols_; ++c) out |= static_cast<std::uint64_t>(get(r, c)) << c;
    return out;
  }

  // Matrix-vector product with the digit vector of `index` (bit c = digit c),
  // returned as a w-bit output integer (most significant bit = first digit).
  std::uint64_t apply(std::uint64_t index) const {
    std::uint64_t out = 0;
    for (int c = 0; c < cols_ && index != 0; ++c, index >>= 1) {
      if (index & 1U) out ^= columns_[static_cast<std::size_t>(c)];
    }
    return out;
  }

  // First `rows` rows and `cols` columns.
  GeneratingMatrix truncated(int rows, int cols) const {
    if (rows > rows_ || cols > cols_) throw Error("truncation larger than matrix");
    GeneratingMatrix m(rows, cols);
    for (int c = 0; c < cols; ++c) m.columns_[idx(c)] = columns_[idx(c)] >> (rows_ - rows);
    return m;
  }

  friend bool operator==(const GeneratingMatrix&, const GeneratingMatrix&) = default;

  static std::uint64_t rowMask(int rows) {
    return rows >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rows) - 1;
  }

 private:
  std::size_t idx(int c) const {
    if (c < 0 || c >= cols_) throw Error("column index out of range");
    return static_cast<std::size_t>(c);
  }
  int shift(int r) const {
    if (r < 0 || r >= rows_) throw Error("row index out of range");
    return rows_ - 1 - r;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint64_t> columns_;
};

// Incremental xor basis of bit vectors; insertion reports linear dependence.
class Gf2Basis {
 public:
  bool insert(std::uint64_t v) {
    while (v != 0) {
      const int p = 63 - std::countl_zero(v);
      if (pivots_[static_cast<std::size_t>(p)] == 0) {
        pivots_[static_cast<std::size_t>(p)] = v;
        ++size_;
        return true;
      }
      v ^= pivots_[static_cast<std::size_t>(p)];
    }
    return false;
  }
  int size() const { return size_; }

 private:
  std::array<std::uint64_t, 64> pivots_{};
  int size_ = 0;
};

inline int rankGF2(const GeneratingMatrix& m) {
  Gf2Basis basis;
  for (int r = 0; r < m.rows(); ++r) basis.insert(m.row(r));
  return basis.size();
}

// Rank of the top k x k block equals k.
inline bool isProjectionRegular(const GeneratingMatrix& m) {
  if (m.rows() < m.cols()) return false;
  Gf2Basis basis;
  for (int r = 0; r < m.cols(); ++r) {
    if (!basis.insert(m.row(r))) return false;
  }
  return true;
}

// Product a*b over Z2 (a is a x b.rows()).
inline GeneratingMatrix multiply(const GeneratingMatrix& a, const GeneratingMatrix& b) {
  if (a.cols() != b.rows()) throw Error("matrix shapes do not conform");
  GeneratingMatrix out(a.rows(), b.cols());
  std::vector<std::uint64_t> aRows(static_cast<std::size_t>(a.rows()));
  for (int r = 0; r < a.rows(); ++r) aRows[static_cast<std::size_t>(r)] = a.row(r);
  for (int c = 0; c < b.cols(); ++c) {
    // Column c of b as a vector indexed by row of b (bit i = entry (i, c)).
    std::uint64_t col = 0;
    for (int i = 0; i < b.rows(); ++i) col |= static_cast<std::uint64_t>(b.get(i, c)) << i;
    for (int r = 0; r < a.rows(); ++r) {
      out.set(r, c, std::popcount(aRows[static_cast<std::size_t>(r)] & col) & 1);
    }
  }
  return out;
}

// Generating matrix of the polynomial lattice coordinate a(z)/q(z): entry
// (l, c) is digit l+1 of the expansion of z^c a(z)/q(z), so the matrix is
// Hankel (row l+1 is row l shifted left by one).
inline GeneratingMatrix expansionMatrix(BinaryPolynomial a, BinaryPolynomial q, int w) {
  const int k = q.degree();
  if (k < 1) throw Error("modulus must have degree >= 1");
  if (!a.isZero() && a.degree() >= k) throw Error("deg(a) must be smaller than deg(q)");
  if (w < k) throw Error("w must be at least deg(q)");
  const auto y = expansionDigits(a, q, static_cast<std::size_t>(w + k));
  GeneratingMatrix m(w, k);
  for (int l = 0; l < w; ++l) {
    for (int c = 0; c < k; ++c) m.set(l, c, y[static_cast<std::size_t>(l + c)] != 0);
  }
  return m;
}

}  // namespace qmcforge
