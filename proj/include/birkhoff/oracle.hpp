#pragma once

// Independent ground truth for lattice-point counts: semi-magic squares with
// optional forbidden cells, counted by dynamic programming over columns and
// enumerated by backtracking. Shares nothing with the generating-function
// path except exact arithmetic.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "birkhoff/errors.hpp"
#include "birkhoff/exactmath.hpp"
#include "birkhoff/matrix.hpp"
#include "birkhoff/zero_pattern.hpp"

namespace birkhoff {

inline constexpr int kOracleMaxN = 5;
inline constexpr long kOracleMaxT = 12;
inline constexpr std::size_t kOracleMaxPoints = 100000;

struct CountTable {
  int n = 0;
  ZeroPattern zeros;
  std::map<long, Integer> counts;
};

namespace detail {

using OracleCount = unsigned __int128;

inline Integer to_integer(OracleCount v) {
  Integer hi = static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64));
  Integer lo = static_cast<unsigned long>(static_cast<std::uint64_t>(v));
  return (hi << 64) + lo;
}

// Residual row sums packed 4 bits per row (t <= 12 < 16, n <= 5).
inline std::uint32_t pack(const std::vector<int>& rows) {
  std::uint32_t key = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) key |= static_cast<std::uint32_t>(rows[i]) << (4 * i);
  return key;
}

inline int unpack(std::uint32_t key, std::size_t i) { return static_cast<int>((key >> (4 * i)) & 0xF); }

}  // namespace detail

/// Number of nonnegative integer n x n matrices with all line sums t and
/// zeros at the forbidden cells.
inline Integer count_semimagic(int n, long t, const ZeroPattern& zeros) {
  if (n < 1) throw InvalidInput("n must be positive");
  if (t < 0) throw InvalidInput("t must be nonnegative");
  if (zeros.n() != n) throw InvalidInput("zero pattern dimension does not match n");
  if (n > kOracleMaxN || t > kOracleMaxT)
    throw BudgetExceeded("oracle budget is n <= " + std::to_string(kOracleMaxN) + ", t <= " +
                         std::to_string(kOracleMaxT));

  std::unordered_map<std::uint32_t, detail::OracleCount> states, next;
  states[detail::pack(std::vector<int>(n, static_cast<int>(t)))] = 1;
  std::vector<int> fill(n);

  for (int col = 0; col < n; ++col) {
    next.clear();
    for (const auto& [key, ways] : states) {
      // Distribute t units down this column, row by row, within residuals.
      auto place = [&](auto&& self, int row, int remaining) -> void {
        if (row == n) {
          if (remaining != 0) return;
          std::uint32_t out = 0;
          for (int i = 0; i < n; ++i)
            out |= static_cast<std::uint32_t>(detail::unpack(key, i) - fill[i]) << (4 * i);
          next[out] += ways;
          return;
        }
        const int cap = zeros.contains(row, col) ? 0 : std::min(remaining, detail::unpack(key, row));
        for (int v = 0; v <= cap; ++v) {
          fill[row] = v;
          self(self, row + 1, remaining - v);
        }
      };
      place(place, 0, static_cast<int>(t));
    }
    states.swap(next);
  }
  auto it = states.find(0);
  return it == states.end() ? Integer(0) : detail::to_integer(it->second);
}

/// Every lattice point of t*F, F the face given by `zeros`, as an n x n matrix.
inline std::vector<SquareMatrix<int>> enumerate_points(int n, long t, const ZeroPattern& zeros) {
  if (count_semimagic(n, t, zeros) > kOracleMaxPoints)
    throw BudgetExceeded("more than " + std::to_string(kOracleMaxPoints) + " lattice points");

  std::vector<SquareMatrix<int>> out;
  SquareMatrix<int> m(n);
  std::vector<long> row_left(n, t), col_left(n, t);
  auto place = [&](auto&& self, int cell) -> void {
    if (cell == n * n) {
      out.push_back(m);
      return;
    }
    const int i = cell / n, j = cell % n;
    // The last cell of a row or column is forced.
    long lo = 0, hi = zeros.contains(i, j) ? 0 : std::min(row_left[i], col_left[j]);
    if (j == n - 1) lo = std::max(lo, row_left[i]);
    if (i == n - 1) lo = std::max(lo, col_left[j]);
    for (long v = lo; v <= hi; ++v) {
      m(i, j) = static_cast<int>(v);
      row_left[i] -= v;
      col_left[j] -= v;
      self(self, cell + 1);
      row_left[i] += v;
      col_left[j] += v;
    }
    m(i, j) = 0;
  };
  place(place, 0);
  return out;
}

inline CountTable count_table(int n, const ZeroPattern& zeros, long t_max) {
  CountTable table{n, zeros, {}};
  for (long t = 0; t <= t_max; ++t) table.counts[t] = count_semimagic(n, t, zeros);
  return table;
}

/// Dimension of the face as the affine rank of the permutation matrices it
/// contains, by exact elimination. Independent of the ray construction.
inline int face_dimension(const ZeroPattern& zeros) {
  const int n = zeros.n();
  if (n < 1 || n > kOracleMaxN + 1) throw BudgetExceeded("face dimension by vertices needs n <= 6");
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  std::vector<std::vector<int>> vertices;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = !zeros.contains(i, img[i]);
    if (ok) vertices.push_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  if (vertices.empty()) throw EmptyFace("no permutation avoids the zero pattern");

  const std::size_t cells = static_cast<std::size_t>(n) * n;
  std::vector<std::vector<Rational>> rows;
  for (std::size_t v = 1; v < vertices.size(); ++v) {
    std::vector<Rational> row(cells);
    for (int i = 0; i < n; ++i) {
      row[static_cast<std::size_t>(i * n + vertices[v][i])] += Rational(1);
      row[static_cast<std::size_t>(i * n + vertices[0][i])] -= Rational(1);
    }
    rows.push_back(std::move(row));
  }
  int rank = 0;
  for (std::size_t col = 0; col < cells && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t pivot = static_cast<std::size_t>(rank);
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[static_cast<std::size_t>(rank)]);
    const auto& p = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      if (rows[r][col].is_zero()) continue;
      const Rational f = rows[r][col] / p[col];
      for (std::size_t k = col; k < cells; ++k) rows[r][k] -= f * p[k];
    }
    ++rank;
  }
  return rank;
}

/// Ehrhart polynomial interpolated from oracle counts at t = 0..dimension.
inline Polynomial oracle_ehrhart(int n, const ZeroPattern& zeros, int dimension) {
  if (dimension < 0) throw InvalidInput("dimension must be nonnegative");
  if (dimension > kOracleMaxT)
    throw BudgetExceeded("interpolating degree " + std::to_string(dimension) + " needs t beyond the oracle budget");
  std::vector<std::pair<long, Rational>> points;
  for (long t = 0; t <= dimension; ++t) points.emplace_back(t, Rational(count_semimagic(n, t, zeros)));
  return poly_interpolate(points);
}

}  // namespace birkhoff
