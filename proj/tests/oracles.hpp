#pragma once

// Reference computations that share no code with the library. Each oracle
// takes the slow, obvious route to a quantity the library computes cleverly.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "charvar/quaternion.hpp"

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;

// SU(2) as 2x2 complex matrices, w + xi + yj + zk -> [[w+xi, y+zi], [-y+zi, w-xi]].
struct Mat2 {
  cplx a, b, c, d;
  static Mat2 of(const charvar::UnitQuaternion& q) {
    return {{q.w(), q.x()}, {q.y(), q.z()}, {-q.y(), q.z()}, {q.w(), -q.x()}};
  }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
            c * o.b + d * o.d};
  }
  Mat2 inverse() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
  cplx trace() const { return a + d; }
  double distance(const Mat2& o) const {
    return std::sqrt(std::norm(a - o.a) + std::norm(b - o.b) + std::norm(c - o.c) +
                     std::norm(d - o.d));
  }
};

inline std::int64_t det(std::vector<std::vector<std::int64_t>> m) {
  // Laplace expansion; only used on tiny matrices.
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  std::int64_t total = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(row);
    }
    const std::int64_t sign = col % 2 == 0 ? 1 : -1;
    total += sign * m[0][col] * det(minor);
  }
  return total;
}

inline void choose(int n, int k, int start, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors from determinantal divisors: d_k = gcd of k x k minors,
// factor_k = d_k / d_{k-1}.
inline std::vector<std::int64_t> invariant_factors(
    const std::vector<std::vector<std::int64_t>>& m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  std::vector<std::int64_t> divisors{1};
  for (int k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<int>> rs, cs;
    std::vector<int> cur;
    choose(rows, k, 0, cur, rs);
    choose(cols, k, 0, cur, cs);
    std::int64_t g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<std::int64_t>> sub(k, std::vector<std::int64_t>(k));
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
        g = std::gcd(g, std::llabs(det(sub)));
      }
    divisors.push_back(g);
  }
  std::vector<std::int64_t> factors;
  for (std::size_t k = 1; k < divisors.size(); ++k)
    factors.push_back(divisors[k - 1] == 0 ? 0 : divisors[k] / divisors[k - 1]);
  return factors;
}

// p-th roots of 1 in SU(2): B = exp(2 pi k/p * u), classified
// by k in [0, p/2]. Central ones (k = 0, k = p/2) are points, the rest 2-spheres.
struct LensCensus {
  int isolated = 0;
  int spheres = 0;
  std::vector<double> traces;
};

inline LensCensus su2_lens(int p) {
  LensCensus c;
  for (int k = 0; 2 * k <= p; ++k) {
    c.traces.push_back(2.0 * std::cos(2.0 * kPi * k / p));
    if (k == 0 || 2 * k == p)
      ++c.isolated;
    else
      ++c.spheres;
  }
  return c;
}

// Multisets {k_1 <= ... <= k_r} in Z/p with sum 0 mod p: the conjugacy classes
// of SU(r) elements B with B^p = 1. Returns the trace of each class.
inline std::vector<cplx> sur_root_classes(int r, int p) {
  std::vector<cplx> out;
  std::vector<int> ks(r, 0);
  auto rec = [&](auto&& self, int pos, int lo) -> void {
    if (pos == r) {
      int s = 0;
      for (int k : ks) s += k;
      if (s % p != 0) return;
      cplx t = 0;
      for (int k : ks) t += std::polar(1.0, 2.0 * kPi * k / p);
      out.push_back(t);
      return;
    }
    for (int k = lo; k < p; ++k) {
      ks[pos] = k;
      self(self, pos + 1, k);
    }
  };
  rec(rec, 0, 0);
  return out;
}

// dim of the conjugacy class of a diagonal matrix with eigenvalue
// multiplicities m_1, ..., m_s: r^2 - sum m_i^2.
inline int class_dimension(const std::vector<int>& multiplicities) {
  int r = 0, sq = 0;
  for (int m : multiplicities) {
    r += m;
    sq += m * m;
  }
  return r * r - sq;
}

// Dimension of M_{g, r+1} counted as 2g dim SU(r) + (r+1) class dims - 2 dim
// SU(r) (relation and conjugation), with the j-label classes of multiplicity
// (j, r-j) at every one of the r+1 punctures.
inline int moduli_dimension_count(int r, int j, int g) {
  const int group = r * r - 1;
  return 2 * g * group + (r + 1) * class_dimension({j, r - j}) - 2 * group;
}

inline charvar::UnitQuaternion haar(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  const double w = n(rng), x = n(rng), y = n(rng), z = n(rng);
  return charvar::UnitQuaternion::normalized({w, x, y, z});
}

}  // namespace oracle
