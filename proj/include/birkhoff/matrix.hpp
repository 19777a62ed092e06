#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "birkhoff/errors.hpp"

namespace birkhoff {

/// (row, column) or (tail, head), 0-based.
using DirectedEdge = std::pair<int, int>;

/// Row-major n x n matrix.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n) {}
  SquareMatrix(int n, std::vector<T> entries) : n_(n), entries_(std::move(entries)) {
    if (entries_.size() != static_cast<std::size_t>(n) * n)
      throw InvalidInput("matrix entry count does not match dimension");
  }

  int size() const { return n_; }
  T& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
  const T& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<T>& entries() const { return entries_; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<T> entries_;
};

}  // namespace birkhoff
