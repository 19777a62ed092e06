#pragma once

// Lattice-point counts, Ehrhart polynomials and normalized volumes extracted
// from a cone-term stream by Todd-polynomial residues.
//
// Sign convention. Substituting z = exp(tau * c) into one term
// z^{ta} / prod_{j=1}^K (1 - z^{b_j}) and writing xi_j = <c, b_j>, alpha = <c, a>:
//
//   1 / (1 - e^{tau xi}) = -(1 / (tau xi)) * g(-tau xi),   g(x) = x / (1 - e^{-x}),
//
// so the tau^0 coefficient, i.e. the term's share of the lattice-point count, is
//
//   (1 / prod xi) * sum_{k=0}^K (-t alpha)^k / k! * td_{K-k}(xi_1..xi_K)
//
// with td built from g (B_1 = +1/2). Hence the t^k Ehrhart coefficient is
// (-alpha)^k td_{K-k}(xi) / (k! prod xi) summed over terms, and the leading
// one is (-1)^d alpha^d / (d! prod xi). count(B_3, 1) = 6 and e(0) = 1 pin
// this down; they are enforced below and in the tests.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "birkhoff/errors.hpp"
#include "birkhoff/exactmath.hpp"
#include "birkhoff/mgf.hpp"
#include "birkhoff/parallel.hpp"
#include "birkhoff/todd.hpp"

namespace birkhoff {

/// c(i,j) = 2^(i*n + j) (0-based). A signed sum of distinct powers of two is
/// nonzero unless every summand vanishes, so <c, b> != 0 for any nonzero
/// {-1,0,1} matrix b.
class GenericVector {
 public:
  explicit GenericVector(int n) : c_(n) {
    if (n < 2) throw InvalidInput("generic vector needs n >= 2");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Integer v;
        mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(i * n + j));
        c_(i, j) = v;
      }
  }

  int n() const { return c_.size(); }
  const Integer& operator()(int i, int j) const { return c_(i, j); }

  Integer dot(const RayMatrix& b) const {
    Integer s = 0;
    for (int i = 0; i < n(); ++i)
      for (int j = 0; j < n(); ++j) {
        const int v = b(i, j);
        if (v > 0)
          s += c_(i, j);
        else if (v < 0)
          s -= c_(i, j);
      }
    return s;
  }

  Integer dot(const Permutation& sigma) const {
    Integer s = 0;
    for (int i = 0; i < n(); ++i) s += c_(i, sigma(i));
    return s;
  }

 private:
  SquareMatrix<Integer> c_;
};

inline GenericVector generic_vector(int n) { return GenericVector(n); }

struct EhrhartResult {
  Polynomial polynomial;
  int dimension = 0;
  Rational lead_coefficient;
  /// dimension! * lead_coefficient.
  Rational normalized_volume;
  std::size_t term_count = 0;
};

struct StreamSummary {
  std::size_t term_count = 0;
  int max_rays = 0;
};

/// Counts surviving terms and finds the largest ray count, which is the
/// dimension of the polytope or face the stream describes.
inline StreamSummary summarize_terms(const TermSource& terms, const ParallelOptions& opts = {}) {
  return chunked_reduce(
      terms.size(), opts, StreamSummary{},
      [&](std::size_t b, std::size_t e) {
        StreamSummary s;
        terms.for_each(b, e, [&](const ConeTerm& t) {
          ++s.term_count;
          s.max_rays = std::max(s.max_rays, static_cast<int>(t.rays.size()));
        });
        return s;
      },
      [](StreamSummary& acc, StreamSummary&& s) {
        acc.term_count += s.term_count;
        acc.max_rays = std::max(acc.max_rays, s.max_rays);
      });
}

/// (n-1)^2 - |Z|: the face dimension when every zero removes one independent
/// degree of freedom. Only a cross-check; the ray count is authoritative.
inline int expected_face_dimension(const ZeroPattern& zeros) {
  return (zeros.n() - 1) * (zeros.n() - 1) - static_cast<int>(zeros.size());
}

namespace detail {

struct TermNumbers {
  Integer alpha;              // <c, vertex>
  std::vector<Integer> xi;    // <c, ray_j>
  Integer xi_product;
};

inline void term_numbers(const ConeTerm& term, const GenericVector& c, TermNumbers& out) {
  out.alpha = c.dot(term.vertex);
  out.xi.resize(term.rays.size());
  out.xi_product = term.sign;
  for (std::size_t j = 0; j < term.rays.size(); ++j) {
    out.xi[j] = c.dot(term.rays[j]);
    if (out.xi[j] == 0) throw InvalidInput("generic vector is orthogonal to a ray");
    out.xi_product *= out.xi[j];
  }
}

struct CoefficientSums {
  std::vector<mpq_class> sums;
  std::size_t term_count = 0;
};

}  // namespace detail

/// Number of lattice points of t*P for the polytope or face P the stream encodes.
inline Integer count_lattice_points(const TermSource& terms, long t, const GenericVector& c,
                                    const ParallelOptions& opts = {}) {
  if (t < 0) throw InvalidInput("dilation t must be nonnegative");
  if (c.n() != terms.n()) throw InvalidInput("generic vector dimension does not match n");
  const std::size_t max_order = static_cast<std::size_t>(terms.max_rays());
  ToddEvaluator todd(max_order);

  mpq_class total = chunked_reduce(
      terms.size(), opts, mpq_class(0),
      [&](std::size_t b, std::size_t e) {
        mpq_class acc = 0;
        detail::TermNumbers nums;
        std::vector<mpq_class> td;
        terms.for_each(b, e, [&](const ConeTerm& term) {
          detail::term_numbers(term, c, nums);
          const std::size_t k_max = nums.xi.size();
          todd.evaluate(nums.xi, k_max, td);
          const Integer x = -Integer(t) * nums.alpha;
          Integer x_pow = 1;
          mpq_class inner = 0, piece;
          for (std::size_t k = 0; k <= k_max; ++k) {
            piece = td[k_max - k];
            piece *= x_pow;
            piece /= factorial(k);
            inner += piece;
            x_pow *= x;
          }
          inner /= nums.xi_product;
          acc += inner;
        });
        return acc;
      },
      [](mpq_class& acc, mpq_class&& part) { acc += part; });

  if (total.get_den() != 1)
    throw InternalInconsistency("lattice-point count is not an integer: " + total.get_str());
  if (sgn(total) < 0) throw InternalInconsistency("lattice-point count is negative: " + total.get_str());
  return total.get_num();
}

/// Full Ehrhart polynomial of the polytope or face encoded by the stream.
/// `dimension` must be at least the largest ray count of any term.
inline EhrhartResult ehrhart_polynomial(const TermSource& terms, int dimension, const GenericVector& c,
                                        const ParallelOptions& opts = {}) {
  if (dimension < 0 || dimension > terms.max_rays()) throw InvalidInput("dimension out of range");
  if (c.n() != terms.n()) throw InvalidInput("generic vector dimension does not match n");
  const std::size_t d = static_cast<std::size_t>(dimension);
  ToddEvaluator todd(d);

  auto sums = chunked_reduce(
      terms.size(), opts, detail::CoefficientSums{std::vector<mpq_class>(d + 1), 0},
      [&](std::size_t b, std::size_t e) {
        detail::CoefficientSums part{std::vector<mpq_class>(d + 1), 0};
        detail::TermNumbers nums;
        std::vector<mpq_class> td;
        mpq_class piece;
        terms.for_each(b, e, [&](const ConeTerm& term) {
          const std::size_t k_max = term.rays.size();
          if (k_max > d) throw InvalidInput("a term has more rays than the stated dimension");
          detail::term_numbers(term, c, nums);
          todd.evaluate(nums.xi, k_max, td);
          const Integer neg_alpha = -nums.alpha;
          Integer pow = 1;
          for (std::size_t k = 0; k <= k_max; ++k) {
            piece = td[k_max - k];
            piece *= pow;
            piece /= nums.xi_product;
            part.sums[k] += piece;
            pow *= neg_alpha;
          }
          ++part.term_count;
        });
        return part;
      },
      [](detail::CoefficientSums& acc, detail::CoefficientSums&& part) {
        for (std::size_t k = 0; k < acc.sums.size(); ++k) acc.sums[k] += part.sums[k];
        acc.term_count += part.term_count;
      });

  std::vector<Rational> coeffs;
  for (std::size_t k = 0; k <= d; ++k) coeffs.push_back(Rational(sums.sums[k] / mpq_class(factorial(k))));

  EhrhartResult result;
  result.polynomial = Polynomial(std::move(coeffs));
  result.dimension = dimension;
  result.term_count = sums.term_count;
  if (result.polynomial[0] != Rational(1))
    throw InternalInconsistency("Ehrhart constant term is " + result.polynomial[0].to_string() + ", expected 1");
  if (static_cast<int>(result.polynomial.degree()) != dimension)
    throw InternalInconsistency("Ehrhart polynomial has degree " + std::to_string(result.polynomial.degree()) +
                                " but the dimension is " + std::to_string(dimension));
  result.lead_coefficient = result.polynomial.leading();
  result.normalized_volume = result.lead_coefficient * Rational(factorial(d));
  return result;
}

/// Normalized volume dimension! * vol from the leading residue only; no Todd
/// polynomials are computed. Terms with fewer rays than `dimension` do not
/// contribute.
inline Rational volume(const TermSource& terms, int dimension, const GenericVector& c,
                       const ParallelOptions& opts = {}) {
  if (dimension < 0 || dimension > terms.max_rays()) throw InvalidInput("dimension out of range");
  if (c.n() != terms.n()) throw InvalidInput("generic vector dimension does not match n");
  const unsigned long d = static_cast<unsigned long>(dimension);

  mpq_class total = chunked_reduce(
      terms.size(), opts, mpq_class(0),
      [&](std::size_t b, std::size_t e) {
        mpq_class acc = 0;
        detail::TermNumbers nums;
        terms.for_each(b, e, [&](const ConeTerm& term) {
          if (term.rays.size() > d) throw InvalidInput("a term has more rays than the stated dimension");
          if (term.rays.size() != d) return;
          detail::term_numbers(term, c, nums);
          Integer num;
          mpz_pow_ui(num.get_mpz_t(), nums.alpha.get_mpz_t(), d);
          if (d % 2 == 1) num = -num;
          mpq_class q(num, nums.xi_product);
          q.canonicalize();
          acc += q;
        });
        return acc;
      },
      [](mpq_class& acc, mpq_class&& part) { acc += part; });

  if (sgn(total) <= 0) throw InternalInconsistency("nonpositive volume " + total.get_str());
  return Rational(total);
}

}  // namespace birkhoff
