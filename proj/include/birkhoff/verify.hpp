#pragma once

// Self-checks of the structural facts the term stream rests on, plus
// agreement with the independent oracle. Each check returns a named
// pass/fail record; `verify` in the CLI runs them in sequence.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "birkhoff/combinatorics.hpp"
#include "birkhoff/ehrhart.hpp"
#include "birkhoff/errors.hpp"
#include "birkhoff/mgf.hpp"
#include "birkhoff/oracle.hpp"

namespace birkhoff {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Uniform rationals p/q with p in [-9, 9] \ {0} and q in [1, 9]; fixed seed
/// so failures reproduce.
class RandomPoints {
 public:
  explicit RandomPoints(std::uint64_t seed) : rng_(seed) {}

  Rational rational() {
    std::uniform_int_distribution<long> num(1, 9), den(1, 9), sign(0, 1);
    const long p = num(rng_);
    return Rational(Integer(sign(rng_) ? -p : p), Integer(den(rng_)));
  }

  SquareMatrix<Rational> matrix(int n) {
    SquareMatrix<Rational> z(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) z(i, j) = rational();
    return z;
  }

 private:
  std::mt19937_64 rng_;
};

/// Sum of z^M over matrices M.
inline Rational monomial_sum(const std::vector<SquareMatrix<int>>& points, const SquareMatrix<Rational>& z) {
  Rational total = 0;
  for (const auto& m : points) {
    Rational term = 1;
    for (int i = 0; i < m.size(); ++i)
      for (int j = 0; j < m.size(); ++j) term *= pow(z(i, j), static_cast<unsigned long>(m(i, j)));
    total += term;
  }
  return total;
}

/// Evaluates f at up to `samples` random points, drawing a fresh point on a pole.
template <typename F>
bool agree_at_random_points(int n, int samples, std::uint64_t seed, F&& f, std::string& detail) {
  RandomPoints gen(seed);
  int done = 0;
  for (int attempt = 0; done < samples && attempt < 20 * samples; ++attempt) {
    auto z = gen.matrix(n);
    try {
      auto [lhs, rhs] = f(z);
      if (lhs != rhs) {
        detail = lhs.to_string() + " != " + rhs.to_string();
        return false;
      }
      ++done;
    } catch (const PoleEncountered&) {
    }
  }
  if (done < samples) {
    detail = "too many poles";
    return false;
  }
  detail = std::to_string(done) + " points";
  return true;
}

inline CheckResult check_arborescence_count(int n) {
  CheckResult r{"arborescence count n=" + std::to_string(n), true, ""};
  long expected = 1;
  for (int k = 0; k < n - 2; ++k) expected *= n;
  for (int root = 0; root < n; ++root) {
    const auto count = static_cast<long>(enumerate_arborescences(n, root).size());
    if (count != expected) {
      r.passed = false;
      r.detail = "root " + std::to_string(root + 1) + ": " + std::to_string(count) + " != " + std::to_string(expected);
      return r;
    }
  }
  r.detail = std::to_string(expected) + " per root";
  return r;
}

/// Every ray has entries in {-1,0,1}, zero line sums and is nonzero.
inline CheckResult check_ray_shape(int n) {
  CheckResult r{"ray matrices lie in V_n n=" + std::to_string(n), true, ""};
  std::size_t rays = 0;
  for (int root = 0; root < n && r.passed; ++root)
    for (const auto& tree : enumerate_arborescences(n, root))
      for (auto e : tree.off_tree_edges()) {
        const auto w = ray_matrix(tree, e);
        ++rays;
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
          int row = 0, col = 0;
          for (int j = 0; j < n; ++j) {
            if (w(i, j) < -1 || w(i, j) > 1) r.passed = false;
            nonzero = nonzero || w(i, j) != 0;
            row += w(i, j);
            col += w(j, i);
          }
          if (row != 0 || col != 0) r.passed = false;
        }
        if (!nonzero) r.passed = false;
      }
  r.detail = std::to_string(rays) + " rays";
  return r;
}

/// <top-left block of W^{T,e}, M_ij> = [ (i,j) == e ] for every off-tree
/// edge e and every (i,j) outside the tree.
inline CheckResult check_duality(int n, int root) {
  CheckResult r{"duality n=" + std::to_string(n) + " root=" + std::to_string(root + 1), true, ""};
  const auto duals = dual_rays(n);
  std::size_t pairs = 0;
  for (const auto& tree : enumerate_arborescences(n, root)) {
    const auto off = tree.off_tree_edges();
    for (auto e : off) {
      const auto block = drop_last_row_column(ray_matrix(tree, e));
      for (const auto& [ij, m] : duals) {
        if (tree.has_edge(ij.first, ij.second)) continue;
        int dot = 0;
        for (std::size_t k = 0; k < block.entries().size(); ++k) dot += block.entries()[k] * m.entries()[k];
        ++pairs;
        if (dot != (ij == e ? 1 : 0)) {
          r.passed = false;
          r.detail = "edge (" + std::to_string(e.first + 1) + "," + std::to_string(e.second + 1) + ") against (" +
                     std::to_string(ij.first + 1) + "," + std::to_string(ij.second + 1) + ")";
          return r;
        }
      }
    }
  }
  r.detail = std::to_string(pairs) + " pairs";
  return r;
}

/// The (n-1)^2 dual rays outside each tree form a lattice basis.
inline CheckResult check_unimodularity(int n, int root) {
  CheckResult r{"unimodularity n=" + std::to_string(n) + " root=" + std::to_string(root + 1), true, ""};
  const auto duals = dual_rays(n);
  std::size_t trees = 0;
  for (const auto& tree : enumerate_arborescences(n, root)) {
    std::vector<std::vector<Integer>> rows;
    for (const auto& [ij, m] : duals) {
      if (tree.has_edge(ij.first, ij.second)) continue;
      std::vector<Integer> row;
      for (auto v : m.entries()) row.emplace_back(static_cast<long>(v));
      rows.push_back(std::move(row));
    }
    ++trees;
    const Integer det = integer_determinant(rows);
    if (det != 1 && det != -1) {
      r.passed = false;
      r.detail = "determinant " + det.get_str();
      return r;
    }
  }
  r.detail = std::to_string(trees) + " trees";
  return r;
}

inline CheckResult check_root_independence(int n, int samples = 5, std::uint64_t seed = 1) {
  CheckResult r{"root independence n=" + std::to_string(n), true, ""};
  const auto first = birkhoff_terms(n, 0);
  const auto last = birkhoff_terms(n, n - 1);
  for (long t : {1L, 2L}) {
    r.passed = agree_at_random_points(
        n, samples, seed + static_cast<std::uint64_t>(t),
        [&](const SquareMatrix<Rational>& z) {
          return std::pair{evaluate_mgf(first, t, z), evaluate_mgf(last, t, z)};
        },
        r.detail);
    if (!r.passed) return r;
  }
  return r;
}

inline CheckResult check_brion(int n, long t, int samples = 5, std::uint64_t seed = 7) {
  CheckResult r{"Brion identity n=" + std::to_string(n) + " t=" + std::to_string(t), true, ""};
  const auto terms = birkhoff_terms(n, 0);
  const auto points = enumerate_points(n, t, ZeroPattern::none(n));
  r.passed = agree_at_random_points(
      n, samples, seed,
      [&](const SquareMatrix<Rational>& z) { return std::pair{evaluate_mgf(terms, t, z), monomial_sum(points, z)}; },
      r.detail);
  return r;
}

/// Formula counts against the DP oracle at t = 0..t_max.
inline CheckResult check_oracle_agreement(int n, const ZeroPattern& zeros, long t_max) {
  CheckResult r{"oracle agreement n=" + std::to_string(n) + " t<=" + std::to_string(t_max), true, ""};
  const auto terms = zeros.empty() ? birkhoff_terms(n, 0) : face_terms(n, 0, zeros);
  const GenericVector c(n);
  for (long t = 0; t <= t_max; ++t) {
    const Integer formula = count_lattice_points(terms, t, c);
    const Integer oracle = count_semimagic(n, t, zeros);
    if (formula != oracle) {
      r.passed = false;
      r.detail = "t=" + std::to_string(t) + ": " + formula.get_str() + " != " + oracle.get_str();
      return r;
    }
  }
  r.detail = "exact";
  return r;
}

/// The checks `verify --n` runs; larger n skips the exhaustive ones.
inline std::vector<CheckResult> run_invariant_suite(int n) {
  if (n < 2 || n > 5) throw InvalidInput("verify supports 2 <= n <= 5");
  std::vector<CheckResult> out;
  out.push_back(check_arborescence_count(n));
  out.push_back(check_ray_shape(n));
  for (int root = 0; root < n; ++root) out.push_back(check_duality(n, root));
  if (n <= 4)
    for (int root = 0; root < n; ++root) out.push_back(check_unimodularity(n, root));
  if (n <= 4) out.push_back(check_root_independence(n));
  if (n <= 3)
    for (long t : {1L, 2L}) out.push_back(check_brion(n, t));
  out.push_back(check_oracle_agreement(n, ZeroPattern::none(n), n <= 3 ? (n - 1) * (n - 1) : n == 4 ? 9 : 2));
  return out;
}

}  // namespace birkhoff
