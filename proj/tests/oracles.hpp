#pragma once

// Brute-force reference computations used only by the tests. Nothing here
// calls into the normal-form, Hom/Ext or mutation code paths it checks.

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "clusterforge/quiver.hpp"
#include "clusterforge/zlinalg.hpp"

namespace oracle {

using clusterforge::Integer;
using clusterforge::IntMatrix;
using clusterforge::IntVector;

// Laplace expansion; only for tiny matrices.
inline Integer det_laplace(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = m(i, k);
    Integer term = m(0, j) * det_laplace(minor);
    d += (j % 2 == 0) ? term : Integer(-term);
  }
  return d;
}

inline void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == k) {
      fn(pick);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

/// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1},
/// D_k = gcd of all k x k minors.
inline std::vector<Integer> invariant_factors(const IntMatrix& m) {
  std::vector<Integer> dets{1};
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    Integer g = 0;
    subsets(m.rows(), k, [&](const std::vector<std::size_t>& rs) {
      subsets(m.cols(), k, [&](const std::vector<std::size_t>& cs) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rs[i], cs[j]);
        Integer d = det_laplace(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      });
    });
    if (g == 0) break;
    dets.push_back(g);
  }
  std::vector<Integer> out;
  for (std::size_t k = 1; k < dets.size(); ++k) out.push_back(dets[k] / dets[k - 1]);
  return out;
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

/// Positive roots of a Dynkin quiver: nonnegative nonzero x with Tits form
/// q(x) = sum x_i^2 - sum_{arrows} x_s x_t equal to 1, found by exhaustive
/// search with entries <= bound.
inline std::vector<IntVector> positive_roots(const clusterforge::Quiver& q, int bound) {
  const auto n = static_cast<std::size_t>(q.vertex_count());
  std::vector<IntVector> roots;
  std::vector<int> x(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      long s = 0;
      bool nonzero = false;
      for (std::size_t k = 0; k < n; ++k) {
        s += long(x[k]) * x[k];
        nonzero = nonzero || x[k] != 0;
      }
      for (const auto& a : q.arrows()) s -= long(x[std::size_t(a.source - 1)]) * x[std::size_t(a.target - 1)];
      if (nonzero && s == 1) {
        IntVector r;
        for (int v : x) r.emplace_back(v);
        roots.push_back(r);
      }
      return;
    }
    for (int v = 0; v <= bound; ++v) {
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return roots;
}

/// Maximal cliques of exactly `size` vertices in a compatibility graph
/// (adjacency includes self-compatibility on the diagonal).
inline std::vector<std::vector<std::size_t>> cliques_of_size(const std::vector<std::vector<bool>>& compatible,
                                                             std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  const std::size_t n = compatible.size();
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == size) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      if (!compatible[i][i]) continue;
      bool ok = std::all_of(cur.begin(), cur.end(), [&](std::size_t j) { return compatible[i][j] && compatible[j][i]; });
      if (!ok) continue;
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace oracle
