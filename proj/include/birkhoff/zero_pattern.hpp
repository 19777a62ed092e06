#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "birkhoff/combinatorics.hpp"
#include "birkhoff/errors.hpp"
#include "birkhoff/matrix.hpp"

namespace birkhoff {

/// Set of matrix cells forced to zero; cells are kept sorted row-major.
class ZeroPattern {
 public:
  ZeroPattern() = default;
  ZeroPattern(int n, std::vector<DirectedEdge> cells) : n_(n), cells_(std::move(cells)) {
    if (n < 1) throw InvalidInput("zero pattern needs n >= 1");
    for (auto [i, j] : cells_)
      if (i < 0 || j < 0 || i >= n || j >= n)
        throw InvalidInput("zero cell (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                           ") outside the " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    std::sort(cells_.begin(), cells_.end());
    if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end())
      throw InvalidInput("zero pattern lists a cell twice");
  }

  static ZeroPattern none(int n) { return ZeroPattern(n, {}); }

  /// Chan-Robbins-Yuen face: zeros at every (i,j) with i - j >= 2.
  static ZeroPattern cry(int n) {
    std::vector<DirectedEdge> cells;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j + 2 <= i; ++j) cells.emplace_back(i, j);
    return ZeroPattern(n, std::move(cells));
  }

  int n() const { return n_; }
  const std::vector<DirectedEdge>& cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }
  std::size_t size() const { return cells_.size(); }
  bool contains(int i, int j) const { return std::binary_search(cells_.begin(), cells_.end(), DirectedEdge{i, j}); }

  bool admits(const Permutation& sigma) const {
    for (int i = 0; i < sigma.size(); ++i)
      if (contains(i, sigma(i))) return false;
    return true;
  }

  friend bool operator==(const ZeroPattern&, const ZeroPattern&) = default;

 private:
  int n_ = 0;
  std::vector<DirectedEdge> cells_;
};

/// True when some permutation avoids every zero (bipartite perfect matching).
inline bool face_is_nonempty(const ZeroPattern& zeros) {
  const int n = zeros.n();
  std::vector<int> match_of_col(n, -1);
  auto try_row = [&](auto&& self, int row, std::vector<bool>& seen) -> bool {
    for (int col = 0; col < n; ++col) {
      if (zeros.contains(row, col) || seen[col]) continue;
      seen[col] = true;
      if (match_of_col[col] < 0 || self(self, match_of_col[col], seen)) {
        match_of_col[col] = row;
        return true;
      }
    }
    return false;
  };
  for (int row = 0; row < n; ++row) {
    std::vector<bool> seen(n, false);
    if (!try_row(try_row, row, seen)) return false;
  }
  return true;
}

}  // namespace birkhoff
