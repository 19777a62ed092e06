#pragma once

// Permutations, arborescences of the complete digraph, the cycle matrices
// attached to (arborescence, off-tree edge) pairs and the dual rays of the
// projected supporting cone at the identity.
//
// Vertices and matrix indices are 0-based throughout the library; the CLI
// translates from the 1-based notation users type.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "birkhoff/errors.hpp"
#include "birkhoff/exactmath.hpp"
#include "birkhoff/matrix.hpp"

namespace birkhoff {

/// Bijection on {0..n-1}; image[i] = sigma(i). As a matrix it has a 1 at (i, sigma(i)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (int v : image_) {
      if (v < 0 || v >= static_cast<int>(image_.size()) || seen[v])
        throw InvalidInput("not a permutation");
      seen[v] = true;
    }
  }
  static Permutation identity(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    return Permutation(std::move(img));
  }

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[i]; }
  const std::vector<int>& image() const { return image_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

/// All permutations of {0..n-1} in lexicographic order of their images.
inline std::vector<Permutation> all_permutations(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

/// Spanning tree of the complete digraph on {0..n-1}, edges directed away from root.
class Arborescence {
 public:
  static constexpr int kNoParent = -1;

  Arborescence(int root, std::vector<int> parent) : root_(root), parent_(std::move(parent)) {
    const int n = size();
    if (root < 0 || root >= n || parent_[root] != kNoParent)
      throw InvalidInput("arborescence root must be a vertex with no parent");
    for (int v = 0; v < n; ++v) {
      if (v == root) continue;
      // Every vertex must reach the root in at most n-1 steps.
      int u = v;
      for (int steps = 0; u != root; ++steps) {
        if (steps >= n || parent_[u] < 0 || parent_[u] >= n)
          throw InvalidInput("parent map is not an arborescence");
        u = parent_[u];
      }
    }
  }

  int size() const { return static_cast<int>(parent_.size()); }
  int root() const { return root_; }
  int parent(int v) const { return parent_[v]; }
  const std::vector<int>& parents() const { return parent_; }

  bool has_edge(int from, int to) const { return to != root_ && parent_[to] == from; }

  /// Edge set as (parent, child) pairs, sorted.
  std::vector<DirectedEdge> edges() const {
    std::vector<DirectedEdge> e;
    for (int v = 0; v < size(); ++v)
      if (v != root_) e.emplace_back(parent_[v], v);
    std::sort(e.begin(), e.end());
    return e;
  }

  /// The (n-1)^2 directed edges (s,t), s != t, that are not in the tree,
  /// in lexicographic order.
  std::vector<DirectedEdge> off_tree_edges() const {
    std::vector<DirectedEdge> e;
    for (int s = 0; s < size(); ++s)
      for (int t = 0; t < size(); ++t)
        if (s != t && !has_edge(s, t)) e.emplace_back(s, t);
    return e;
  }

  int depth(int v) const {
    int d = 0;
    for (; v != root_; v = parent_[v]) ++d;
    return d;
  }

  friend bool operator==(const Arborescence&, const Arborescence&) = default;

 private:
  int root_;
  std::vector<int> parent_;
};

/// Every arborescence of K_n rooted at `root`, n^(n-2) of them.
///
/// Parent vectors of the non-root vertices are visited in lexicographic order
/// and the acyclic ones kept, so each tree appears once and the order is fixed.
/// (n-1)^(n-1) candidates: about 8e5 at n = 8.
inline std::vector<Arborescence> enumerate_arborescences(int n, int root) {
  if (n < 2) throw InvalidInput("arborescences need n >= 2");
  if (root < 0 || root >= n) throw InvalidInput("root out of range");
  std::vector<Arborescence> out;
  std::vector<int> parent(n, Arborescence::kNoParent);
  std::vector<int> others;
  for (int v = 0; v < n; ++v)
    if (v != root) others.push_back(v);

  // state: 0 unvisited, 1 on the current walk, 2 known to reach the root.
  auto acyclic = [&]() {
    std::vector<char> state(n, 0);
    state[root] = 2;
    for (int v : others) {
      std::vector<int> walk;
      int u = v;
      while (state[u] == 0) {
        state[u] = 1;
        walk.push_back(u);
        u = parent[u];
      }
      if (state[u] == 1) return false;
      for (int w : walk) state[w] = 2;
    }
    return true;
  };

  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == others.size()) {
      if (acyclic()) out.emplace_back(root, parent);
      return;
    }
    const int v = others[k];
    for (int p = 0; p < n; ++p) {
      if (p == v) continue;
      parent[v] = p;
      self(self, k + 1);
    }
    parent[v] = Arborescence::kNoParent;
  };
  recurse(recurse, 0);
  return out;
}

/// n x n matrix W with entries in {-1,0,1}, zero row and column sums.
using RayMatrix = SquareMatrix<std::int8_t>;

/// (n-1) x (n-1) ray of the dual cone in the projected space.
using DualRay = SquareMatrix<std::int8_t>;

/// Cycle matrix of the off-tree edge e = (s,t):
///   W = w(s) - w(t) + w(e),
/// where w((u,v)) has +1 at (u,v) and -1 at (v,v), and w(x) sums w over the
/// tree path root -> x. Only the two branches below the lowest common ancestor
/// of s and t survive the subtraction.
inline RayMatrix ray_matrix(const Arborescence& tree, DirectedEdge e) {
  const auto [s, t] = e;
  const int n = tree.size();
  if (s < 0 || t < 0 || s >= n || t >= n || s == t) throw InvalidInput("invalid edge");
  if (tree.has_edge(s, t)) throw InvalidInput("edge belongs to the arborescence");

  RayMatrix w(n);
  auto add_edge_weight = [&](int u, int v, int sign) {
    w(u, v) = static_cast<std::int8_t>(w(u, v) + sign);
    w(v, v) = static_cast<std::int8_t>(w(v, v) - sign);
  };
  int a = s, b = t;
  int da = tree.depth(a), db = tree.depth(b);
  while (da > db) { add_edge_weight(tree.parent(a), a, +1); a = tree.parent(a); --da; }
  while (db > da) { add_edge_weight(tree.parent(b), b, -1); b = tree.parent(b); --db; }
  while (a != b) {
    add_edge_weight(tree.parent(a), a, +1);
    a = tree.parent(a);
    add_edge_weight(tree.parent(b), b, -1);
    b = tree.parent(b);
  }
  add_edge_weight(s, t, +1);
  return w;
}

/// Dual ray M_{i,j} for i != j (0-based; index n-1 is the dropped row/column).
inline DualRay dual_ray(int n, int i, int j) {
  if (n < 2 || i < 0 || j < 0 || i >= n || j >= n || i == j) throw InvalidInput("invalid dual ray index");
  const int m = n - 1;
  DualRay r(m);
  if (i != m && j != m) {
    r(i, j) = 1;
  } else if (j == m) {
    for (int k = 0; k < m; ++k) r(i, k) = -1;
  } else {
    for (int k = 0; k < m; ++k) r(k, j) = -1;
  }
  return r;
}

/// All n(n-1) dual rays keyed by (i,j), in lexicographic order of (i,j).
inline std::vector<std::pair<DirectedEdge, DualRay>> dual_rays(int n) {
  std::vector<std::pair<DirectedEdge, DualRay>> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) out.emplace_back(DirectedEdge{i, j}, dual_ray(n, i, j));
  return out;
}

/// W * P_sigma: column j of W moves to column sigma(j).
inline RayMatrix permute_columns(const RayMatrix& w, const Permutation& sigma) {
  const int n = w.size();
  if (sigma.size() != n) throw InvalidInput("permutation size does not match matrix");
  RayMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, sigma(j)) = w(i, j);
  return r;
}

/// Top-left (n-1) x (n-1) block.
inline SquareMatrix<std::int8_t> drop_last_row_column(const RayMatrix& w) {
  const int m = w.size() - 1;
  SquareMatrix<std::int8_t> r(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) r(i, j) = w(i, j);
  return r;
}

/// Determinant of an integer matrix by fraction-free Gaussian elimination.
inline Integer integer_determinant(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot][k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace birkhoff
