#pragma once

// The lattice-point generating function of t*B_n as a stream of unimodular
// cone terms
//
//   f(tB_n, z) = sum_{sigma} sum_{T in Arb(root, n)}
//                z^{t sigma} prod_{e not in T} 1 / (1 - z^{W^{T,e} sigma}),
//
// and its specialization to faces of B_n cut out by structural zeros.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "birkhoff/combinatorics.hpp"
#include "birkhoff/errors.hpp"
#include "birkhoff/exactmath.hpp"
#include "birkhoff/zero_pattern.hpp"

namespace birkhoff {

/// One summand sign * z^{t*vertex} / prod_j (1 - z^{rays[j]}).
struct ConeTerm {
  int sign = 1;
  Permutation vertex;
  std::vector<RayMatrix> rays;

  friend bool operator==(const ConeTerm&, const ConeTerm&) = default;
};

/// Exponents lambda for the substitution x_ij := s^lambda_ij at zero cells.
/// Weights are distinct powers of two, aligned with ZeroPattern::cells(), so a
/// {-1,0,1} ray has zero weighted sum exactly when it vanishes on the pattern.
class FaceWeights {
 public:
  FaceWeights() = default;
  explicit FaceWeights(std::vector<std::int64_t> lambda) : lambda_(std::move(lambda)) {
    if (lambda_.size() > 62) throw InvalidInput("at most 62 structural zeros are supported");
    std::vector<std::int64_t> sorted = lambda_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      auto w = sorted[k];
      if (w <= 0 || (w & (w - 1)) != 0 || w > (std::int64_t{1} << 61))
        throw InvalidInput("face weights must be powers of two below 2^62");
      if (k > 0 && sorted[k - 1] == w) throw InvalidInput("face weights must be distinct");
    }
  }

  /// lambda at the k-th zero (row-major) = 2^k.
  static FaceWeights standard(const ZeroPattern& zeros) {
    std::vector<std::int64_t> w;
    for (std::size_t k = 0; k < zeros.size(); ++k) w.push_back(std::int64_t{1} << k);
    return FaceWeights(std::move(w));
  }

  /// lambda at the k-th zero = 2^(m-1-k); the mirror of standard().
  static FaceWeights reversed(const ZeroPattern& zeros) {
    std::vector<std::int64_t> w;
    for (std::size_t k = 0; k < zeros.size(); ++k) w.push_back(std::int64_t{1} << (zeros.size() - 1 - k));
    return FaceWeights(std::move(w));
  }

  const std::vector<std::int64_t>& values() const { return lambda_; }
  std::size_t size() const { return lambda_.size(); }

 private:
  std::vector<std::int64_t> lambda_;
};

/// Splittable, lazily generated term stream. Index space is
/// (candidate vertex) x (arborescence), vertex-major; for faces, candidate
/// vertices are the permutations that avoid the zero pattern, and some
/// indices yield no term (dropped by the s -> 0 limit).
class TermSource {
 public:
  int n() const { return n_; }
  int root() const { return root_; }
  const ZeroPattern& zeros() const { return zeros_; }
  const FaceWeights& weights() const { return weights_; }
  const std::vector<Permutation>& vertices() const { return vertices_; }
  const std::vector<Arborescence>& arborescences() const { return trees_; }

  /// Number of (vertex, arborescence) index slots.
  std::size_t size() const { return vertices_.size() * trees_.size(); }

  /// Upper bound on rays per term: (n-1)^2.
  int max_rays() const { return (n_ - 1) * (n_ - 1); }

  /// The term at slot `index`, or nullopt when the face limit drops it.
  std::optional<ConeTerm> term_at(std::size_t index) const {
    ConeTerm term;
    if (!fill(index, term)) return std::nullopt;
    return term;
  }

  /// Calls f(const ConeTerm&) for every surviving term in slots [begin, end).
  template <typename F>
  void for_each(std::size_t begin, std::size_t end, F&& f) const {
    ConeTerm term;
    for (std::size_t idx = begin; idx < end; ++idx)
      if (fill(idx, term)) f(static_cast<const ConeTerm&>(term));
  }

  template <typename F>
  void for_each(F&& f) const {
    for_each(0, size(), std::forward<F>(f));
  }

  std::vector<ConeTerm> collect() const {
    std::vector<ConeTerm> out;
    for_each([&](const ConeTerm& t) { out.push_back(t); });
    return out;
  }

  friend TermSource birkhoff_terms(int n, int root);
  friend TermSource face_terms(int n, int root, const ZeroPattern& zeros, const FaceWeights& weights);

 private:
  TermSource(int n, int root, ZeroPattern zeros, FaceWeights weights)
      : n_(n), root_(root), zeros_(std::move(zeros)), weights_(std::move(weights)) {
    trees_ = enumerate_arborescences(n, root);
    for (auto& sigma : all_permutations(n))
      if (zeros_.admits(sigma)) vertices_.push_back(std::move(sigma));
    for (const auto& tree : trees_) off_tree_.push_back(tree.off_tree_edges());
  }

  bool fill(std::size_t index, ConeTerm& term) const {
    const std::size_t v = index / trees_.size();
    const std::size_t k = index % trees_.size();
    const Permutation& sigma = vertices_[v];
    const Arborescence& tree = trees_[k];
    term.sign = 1;
    term.vertex = sigma;
    term.rays.clear();
    for (const auto& e : off_tree_[k]) {
      RayMatrix ray = permute_columns(ray_matrix(tree, e), sigma);
      if (!zeros_.empty()) {
        std::int64_t mu = 0;
        const auto& cells = zeros_.cells();
        for (std::size_t z = 0; z < cells.size(); ++z)
          mu += weights_.values()[z] * ray(cells[z].first, cells[z].second);
        if (mu < 0) return false;  // s^{-|mu|} in a denominator: term -> 0.
        if (mu > 0) continue;      // 1 / (1 - s^mu * ...) -> 1.
      }
      term.rays.push_back(std::move(ray));
    }
    return true;
  }

  int n_;
  int root_;
  ZeroPattern zeros_;
  FaceWeights weights_;
  std::vector<Permutation> vertices_;
  std::vector<Arborescence> trees_;
  std::vector<std::vector<DirectedEdge>> off_tree_;
};

namespace detail {
inline void check_stream_args(int n, int root) {
  if (n < 2) throw InvalidInput("n must be at least 2");
  if (n > 8) throw InvalidInput("n > 8 is beyond the supported range");
  if (root < 0 || root >= n) throw InvalidInput("root must lie in [1, n]");
}
}  // namespace detail

/// Term stream of the full Birkhoff polytope B_n: n! * n^(n-2) terms, each
/// with (n-1)^2 rays and sign +1.
inline TermSource birkhoff_terms(int n, int root) {
  detail::check_stream_args(n, root);
  return TermSource(n, root, ZeroPattern::none(n), FaceWeights{});
}

/// s -> 0 limit of the B_n stream after x_ij := s^lambda_ij on the zero cells.
inline TermSource face_terms(int n, int root, const ZeroPattern& zeros, const FaceWeights& weights) {
  detail::check_stream_args(n, root);
  if (zeros.n() != n) throw InvalidInput("zero pattern dimension does not match n");
  if (weights.size() != zeros.size()) throw InvalidInput("one face weight is needed per zero cell");
  if (!face_is_nonempty(zeros)) throw EmptyFace("no permutation matrix avoids the zero pattern");
  return TermSource(n, root, zeros, weights);
}

inline TermSource face_terms(int n, int root, const ZeroPattern& zeros) {
  return face_terms(n, root, zeros, FaceWeights::standard(zeros));
}

namespace detail {

// z^M for an integer exponent matrix M given entrywise.
template <typename Exponent>
Rational monomial(const SquareMatrix<Rational>& z, int n, Exponent&& exponent_at) {
  Integer num = 1, den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long e = exponent_at(i, j);
      if (e == 0) continue;
      const mpq_class& zij = z(i, j).raw();
      if (sgn(zij) == 0) {
        if (e < 0) throw PoleEncountered("negative power of a zero coordinate");
        return Rational(0);
      }
      Integer a, b;
      unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
      mpz_pow_ui(a.get_mpz_t(), zij.get_num_mpz_t(), ae);
      mpz_pow_ui(b.get_mpz_t(), zij.get_den_mpz_t(), ae);
      if (e > 0) {
        num *= a;
        den *= b;
      } else {
        num *= b;
        den *= a;
      }
    }
  return Rational(num, den);
}

}  // namespace detail

/// Value of a single term at (t, z).
inline Rational evaluate_term(const ConeTerm& term, long t, const SquareMatrix<Rational>& z) {
  const int n = term.vertex.size();
  Rational value = detail::monomial(z, n, [&](int i, int j) { return term.vertex(i) == j ? t : 0L; });
  value *= Rational(term.sign);
  for (const auto& ray : term.rays) {
    Rational denom = Rational(1) - detail::monomial(z, n, [&](int i, int j) { return static_cast<long>(ray(i, j)); });
    if (denom.is_zero()) throw PoleEncountered("1 - z^b vanishes for a ray");
    value /= denom;
  }
  return value;
}

/// Sum of all terms at (t, z). By Brion's identity this is the monomial sum
/// over the lattice points of the dilated polytope or face.
inline Rational evaluate_mgf(const TermSource& terms, long t, const SquareMatrix<Rational>& z) {
  if (t < 0) throw InvalidInput("dilation t must be nonnegative");
  if (z.size() != terms.n()) throw InvalidInput("z has the wrong dimension");
  Rational sum;
  terms.for_each([&](const ConeTerm& term) { sum += evaluate_term(term, t, z); });
  return sum;
}

inline Rational evaluate_mgf(const std::vector<ConeTerm>& terms, long t, const SquareMatrix<Rational>& z) {
  if (t < 0) throw InvalidInput("dilation t must be nonnegative");
  Rational sum;
  for (const auto& term : terms) sum += evaluate_term(term, t, z);
  return sum;
}

}  // namespace birkhoff
