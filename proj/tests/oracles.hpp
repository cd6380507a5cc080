#pragma once

// Brute-force reference implementations. Nothing here calls into the
// library's counting, enumeration or elimination code; they exist so the
// fast paths can be compared against something obviously correct.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Int = boost::multiprecision::cpp_int;

/// Calls `visit` with every function [n] -> [m] as a vector of values in 0..m-1.
inline void for_each_function(int m, int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> f(static_cast<std::size_t>(n), 0);
  if (m == 0) {
    if (n == 0) visit(f);
    return;
  }
  while (true) {
    visit(f);
    int i = n - 1;
    while (i >= 0 && f[static_cast<std::size_t>(i)] == m - 1) f[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
    ++f[static_cast<std::size_t>(i)];
  }
}

/// Functions [n] -> [m] whose image contains {0, ..., s-1}.
inline std::uint64_t count_covering_functions(int m, int s, int n) {
  std::uint64_t count = 0;
  for_each_function(m, n, [&](const std::vector<int>& f) {
    std::vector<bool> hit(static_cast<std::size_t>(m), false);
    for (int x : f) hit[static_cast<std::size_t>(x)] = true;
    if (std::all_of(hit.begin(), hit.begin() + s, [](bool b) { return b; })) ++count;
  });
  return count;
}

inline std::uint64_t count_surjections(int m, int n) { return count_covering_functions(m, m, n); }

/// Set partitions of an n-set into exactly k blocks, via restricted growth strings.
inline std::uint64_t count_set_partitions(int n, int k) {
  std::uint64_t count = 0;
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == n) {
      if (blocks == k) ++count;
      return;
    }
    for (int b = 0; b <= blocks && b < k; ++b) {
      rgs[static_cast<std::size_t>(i)] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return count;
}

using EdgeList = std::vector<std::pair<int, int>>;

/// Every spanning tree of K_m as a sorted edge list: all (m-1)-subsets of
/// the C(m,2) pairs, kept when acyclic.
inline std::set<EdgeList> all_trees_by_edge_subsets(int m) {
  std::set<EdgeList> out;
  if (m == 1) {
    out.insert(EdgeList{});
    return out;
  }
  EdgeList pairs;
  for (int u = 1; u <= m; ++u)
    for (int v = u + 1; v <= m; ++v) pairs.emplace_back(u, v);
  const int total = static_cast<int>(pairs.size());
  std::vector<int> choose(static_cast<std::size_t>(total), 0);
  std::fill(choose.end() - (m - 1), choose.end(), 1);
  do {
    std::vector<int> parent(static_cast<std::size_t>(m + 1));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      return parent[static_cast<std::size_t>(x)] == x ? x : find(parent[static_cast<std::size_t>(x)]);
    };
    EdgeList edges;
    bool acyclic = true;
    for (int i = 0; i < total && acyclic; ++i) {
      if (!choose[static_cast<std::size_t>(i)]) continue;
      auto [u, v] = pairs[static_cast<std::size_t>(i)];
      const int a = find(u), b = find(v);
      if (a == b) acyclic = false;
      parent[static_cast<std::size_t>(a)] = b;
      edges.emplace_back(u, v);
    }
    if (acyclic) out.insert(edges);
  } while (std::next_permutation(choose.begin(), choose.end()));
  return out;
}

/// One coordinate of a cube of T^n: a vertex, or an edge given by endpoints.
struct Entry {
  bool is_edge = false;
  int a = 0;  // vertex, or smaller endpoint
  int b = 0;  // larger endpoint for edges
};

/// Whether entry lies in the subcomplex spanned by `part` (empty part = all of T).
inline bool entry_in(const Entry& e, const std::vector<int>& part) {
  if (part.empty()) return true;
  auto has = [&](int v) { return std::find(part.begin(), part.end(), v) != part.end(); };
  return e.is_edge ? has(e.a) && has(e.b) : has(e.a);
}

/**
 * Membership by the union-of-products definition: the cube lies in
 * X_{i_1} x ... x X_{i_n} for some index map i: [n] -> {0, 1..k} whose image
 * contains 1..k, where X_0 is the whole tree and X_j the j-th part.
 */
inline bool member_by_products(const std::vector<Entry>& cell, const std::vector<std::vector<int>>& parts) {
  const int n = static_cast<int>(cell.size());
  const int k = static_cast<int>(parts.size());
  bool found = false;
  for_each_function(k + 1, n, [&](const std::vector<int>& index) {
    if (found) return;
    std::vector<bool> used(static_cast<std::size_t>(k + 1), false);
    for (int t = 0; t < n; ++t) {
      const int i = index[static_cast<std::size_t>(t)];
      const std::vector<int> whole;
      if (!entry_in(cell[static_cast<std::size_t>(t)], i == 0 ? whole : parts[static_cast<std::size_t>(i - 1)])) return;
      used[static_cast<std::size_t>(i)] = true;
    }
    for (int j = 1; j <= k; ++j)
      if (!used[static_cast<std::size_t>(j)]) return;
    found = true;
  });
  return found;
}

/// f-vector of the union of products, scanning all (2m-1)^n tuples.
inline std::vector<std::uint64_t> brute_f_vector(int m, const EdgeList& edges, int n,
                                                 const std::vector<std::vector<int>>& parts) {
  std::vector<Entry> alphabet;
  for (int v = 1; v <= m; ++v) alphabet.push_back({false, v, 0});
  for (auto [u, v] : edges) alphabet.push_back({true, std::min(u, v), std::max(u, v)});
  std::vector<std::uint64_t> f;
  for_each_function(static_cast<int>(alphabet.size()), n, [&](const std::vector<int>& word) {
    std::vector<Entry> cell;
    int dim = 0;
    for (int x : word) {
      cell.push_back(alphabet[static_cast<std::size_t>(x)]);
      dim += cell.back().is_edge ? 1 : 0;
    }
    if (!member_by_products(cell, parts)) return;
    if (f.size() <= static_cast<std::size_t>(dim)) f.resize(static_cast<std::size_t>(dim) + 1, 0);
    ++f[static_cast<std::size_t>(dim)];
  });
  return f;
}

/// Rank over GF(p) of a dense matrix by textbook row reduction.
inline std::size_t dense_rank_mod_p(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (auto& row : a)
    for (auto& x : row) x = ((x % p) + p) % p;
  auto inverse = [p](std::int64_t x) {
    std::int64_t result = 1, e = p - 2;
    while (e > 0) {
      if (e & 1) result = result * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return result;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    const std::int64_t inv = inverse(a[r][c]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::int64_t factor = a[i][c] * inv % p;
      for (std::size_t j = c; j < cols; ++j) a[i][j] = ((a[i][j] - factor * a[r][j]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

inline Int determinant(std::vector<std::vector<Int>> a) {
  // Bareiss fraction-free elimination; exact for integer input.
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Int sign = 1, previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous;
    previous = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/**
 * Elementary divisors from determinantal divisors: D_k is the gcd of all
 * k x k minors and d_k = D_k / D_{k-1}. Exponential; tiny matrices only.
 */
inline std::vector<Int> elementary_divisors_by_minors(const std::vector<std::vector<Int>>& a) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  std::vector<Int> out;
  Int previous = 1;
  for (int k = 1; k <= std::min(rows, cols); ++k) {
    Int gcd = 0;
    std::vector<int> rsel(static_cast<std::size_t>(rows), 0), csel(static_cast<std::size_t>(cols), 0);
    std::fill(rsel.begin(), rsel.begin() + k, 1);
    do {
      std::fill(csel.begin(), csel.end(), 0);
      std::fill(csel.begin(), csel.begin() + k, 1);
      do {
        std::vector<std::vector<Int>> minor;
        for (int i = 0; i < rows; ++i) {
          if (!rsel[static_cast<std::size_t>(i)]) continue;
          minor.emplace_back();
          for (int j = 0; j < cols; ++j)
            if (csel[static_cast<std::size_t>(j)]) minor.back().push_back(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
        gcd = boost::multiprecision::gcd(gcd, abs(determinant(minor)));
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    if (gcd == 0) break;
    out.push_back(gcd / previous);
    previous = gcd;
  }
  return out;
}

}  // namespace oracle
