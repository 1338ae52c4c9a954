#pragma once

// Brute-force reference computations used to check the fast paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "qmcforge/error.hpp"
#include "qmcforge/fom.hpp"
#include "qmcforge/pointsets.hpp"

namespace qmcforge {

// Sum over nonzero h in the dual lattice with max |h_j| <= H of
// prod_j max(1, |h_j|)^-alpha. Integer vectors are grouped by their residues
// mod n, and a residue vector r is in the dual iff r . a = 0 mod n; the
// enumeration is over the n^s residue vectors.
inline double oraclePalphaDual(const Rank1Lattice& lat, double alpha, std::int64_t truncation) {
  if (truncation < 1) throw Error("truncation H must be >= 1");
  if (!(alpha > 1.0)) throw Error("alpha must be > 1");
  const std::uint64_t n = lat.size();
  const int s = lat.dimension();
  double guard = 1.0;
  for (int j = 0; j < s; ++j) guard *= static_cast<double>(n);
  if (guard > 1e8) throw Error("dual-lattice oracle limited to n^s <= 1e8");

  // W[r] = sum over |h| <= H with h = r mod n of max(1, |h|)^-alpha.
  std::vector<CompensatedSum> acc(n);
  acc[0].add(1.0);
  for (std::int64_t h = truncation; h >= 1; --h) {
    const double term = std::pow(static_cast<double>(h), -alpha);
    const auto r = static_cast<std::uint64_t>(h) % n;
    acc[r].add(term);
    acc[(n - r) % n].add(term);
  }
  std::vector<double> weight(n);
  for (std::uint64_t r = 0; r < n; ++r) weight[r] = acc[r].value();

  const auto& a = lat.generator();
  CompensatedSum total;
  std::vector<std::uint64_t> r(static_cast<std::size_t>(s), 0);
  for (;;) {
    std::uint64_t dot = 0;
    double prod = 1.0;
    for (int j = 0; j < s; ++j) {
      dot = (dot + (r[static_cast<std::size_t>(j)] * (a[static_cast<std::size_t>(j)] % n)) % n) % n;
      prod *= weight[r[static_cast<std::size_t>(j)]];
    }
    if (dot == 0) total.add(prod);
    int j = 0;
    while (j < s && ++r[static_cast<std::size_t>(j)] == n) r[static_cast<std::size_t>(j++)] = 0;
    if (j == s) break;
  }
  return total.value() - 1.0;  // drop h = 0
}

// Direct enumeration of h in [-H, H]^s with the membership test h . a = 0
// mod n (tiny H only).
inline double oraclePalphaDualDirect(const Rank1Lattice& lat, double alpha, std::int64_t truncation) {
  const std::int64_t n = static_cast<std::int64_t>(lat.size());
  const int s = lat.dimension();
  if (std::pow(2.0 * truncation + 1, s) > 1e8) throw Error("direct dual enumeration too large");
  std::vector<std::int64_t> h(static_cast<std::size_t>(s), -truncation);
  CompensatedSum total;
  for (;;) {
    std::int64_t dot = 0;
    bool zero = true;
    double prod = 1.0;
    for (int j = 0; j < s; ++j) {
      const std::int64_t hj = h[static_cast<std::size_t>(j)];
      dot = ((dot + hj * static_cast<std::int64_t>(lat.generator()[static_cast<std::size_t>(j)])) % n + n) % n;
      zero = zero && hj == 0;
      prod *= std::pow(std::max<double>(1.0, static_cast<double>(std::llabs(hj))), -alpha);
    }
    if (!zero && dot == 0) total.add(prod);
    int j = 0;
    while (j < s && ++h[static_cast<std::size_t>(j)] > truncation) h[static_cast<std::size_t>(j++)] = -truncation;
    if (j == s) break;
  }
  return total.value();
}

// Smallest t such that every dyadic box of volume 2^(t-k) with side lengths
// 2^-q_j (sum q_j = k - t) holds exactly 2^t of the 2^k points. digits[j][i]
// holds the w leading binary digits of coordinate j of point i.
inline int oracleTValueBoxCount(const std::vector<std::vector<std::uint64_t>>& digits, int k, int w) {
  const int r = static_cast<int>(digits.size());
  if (r < 1) throw Error("empty projection");
  if (k > 12 || r > 4) throw Error("box-count oracle limited to k <= 12 and |u| <= 4");
  if (w < k) throw Error("need at least k digits");
  const std::uint64_t n = std::uint64_t{1} << k;
  for (const auto& col : digits) {
    if (col.size() != n) throw Error("digit array size differs from 2^k");
  }

  auto allBoxesBalanced = [&](int m) {
    std::vector<int> q(static_cast<std::size_t>(r), 0);
    q[static_cast<std::size_t>(r - 1)] = m;
    std::vector<std::uint64_t> counts(std::size_t{1} << m);
    for (;;) {
      std::fill(counts.begin(), counts.end(), 0);
      for (std::uint64_t i = 0; i < n; ++i) {
        std::uint64_t box = 0;
        for (int j = 0; j < r; ++j) {
          const int qj = q[static_cast<std::size_t>(j)];
          if (qj == 0) continue;
          box = (box << qj) | (digits[static_cast<std::size_t>(j)][i] >> (w - qj));
        }
        ++counts[box];
      }
      const std::uint64_t expected = n >> m;
      for (auto c : counts) {
        if (c != expected) return false;
      }
      // Next composition of m into r parts.
      int j = r - 1;
      while (j > 0 && q[static_cast<std::size_t>(j)] == 0) --j;
      if (j == 0) return true;
      const int tail = q[static_cast<std::size_t>(j)];
      q[static_cast<std::size_t>(j)] = 0;
      ++q[static_cast<std::size_t>(j - 1)];
      q[static_cast<std::size_t>(r - 1)] = tail - 1;
    }
  };

  for (int t = 0; t < k; ++t) {
    if (allBoxesBalanced(k - t)) return t;
  }
  return k;
}

inline int oracleTValueBoxCount(const DigitalNet& net, std::span<const int> u) {
  std::vector<std::vector<std::uint64_t>> digits;
  for (int j : u) digits.push_back(net.coordinateDigits(j));
  return oracleTValueBoxCount(digits, net.k(), net.w());
}

}  // namespace qmcforge
