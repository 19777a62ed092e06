#pragma once

// Exact integrals of powers of linear forms over B_n and full-dimensional
// faces, from the vertex/ray data of the cone-term stream:
//
//   int_P <y,x>^p dx = (-1)^d / ((p+1)...(p+d)) * sum_i sign_i <y,a_i>^(p+d) / prod_j <y,b_ij>.
//
// Results are reported in the normalized measure of the affine lattice
// (a unimodular simplex has measure 1), i.e. the plain formula times d!, so
// that p = 0 reproduces volume().
//
// When some <y,b> vanishes, y is replaced by y + eps*c and each term is
// expanded as a Laurent series in eps; the poles cancel in the sum and the
// eps^0 coefficient is the integral.

#include <cstddef>
#include <optional>
#include <vector>

#include "birkhoff/ehrhart.hpp"
#include "birkhoff/errors.hpp"
#include "birkhoff/exactmath.hpp"
#include "birkhoff/mgf.hpp"
#include "birkhoff/parallel.hpp"

namespace birkhoff {

class LinearForm {
 public:
  explicit LinearForm(SquareMatrix<Rational> y) : y_(std::move(y)) {
    bool nonzero = false;
    for (const auto& v : y_.entries()) nonzero = nonzero || !v.is_zero();
    if (!nonzero) throw InvalidInput("linear form is identically zero");
  }

  /// E_ij: the coordinate function x -> x(i,j).
  static LinearForm unit(int n, int i, int j) {
    SquareMatrix<Rational> y(n);
    y(i, j) = 1;
    return LinearForm(std::move(y));
  }

  static LinearForm from(const GenericVector& c) {
    SquareMatrix<Rational> y(c.n());
    for (int i = 0; i < c.n(); ++i)
      for (int j = 0; j < c.n(); ++j) y(i, j) = Rational(c(i, j));
    return LinearForm(std::move(y));
  }

  int n() const { return y_.size(); }
  const SquareMatrix<Rational>& coefficients() const { return y_; }

  Rational dot(const RayMatrix& b) const {
    mpq_class s = 0;
    for (int i = 0; i < n(); ++i)
      for (int j = 0; j < n(); ++j) {
        if (b(i, j) > 0)
          s += y_(i, j).raw();
        else if (b(i, j) < 0)
          s -= y_(i, j).raw();
      }
    return Rational(s);
  }

  Rational dot(const Permutation& sigma) const {
    mpq_class s = 0;
    for (int i = 0; i < n(); ++i) s += y_(i, sigma(i)).raw();
    return Rational(s);
  }

 private:
  SquareMatrix<Rational> y_;
};

struct IntegrationOptions {
  ParallelOptions parallel;
  /// Expand every term around y + eps*direction, even when no <y,b> vanishes.
  bool force_perturbation = false;
  /// Perturbation direction; defaults to the generic vector, which is
  /// nonzero on every ray.
  std::optional<LinearForm> direction;
};

namespace detail {

// Laurent coefficients, index j holding eps^(-j).
using Laurent = std::vector<Rational>;

inline void add_into(Laurent& acc, const Laurent& part) {
  if (part.size() > acc.size()) acc.resize(part.size());
  for (std::size_t j = 0; j < part.size(); ++j) acc[j] += part[j];
}

}  // namespace detail

inline Rational integrate_power(const TermSource& terms, int dimension, const LinearForm& y, long p,
                                const IntegrationOptions& opts = {}) {
  if (p < 0) throw InvalidInput("power p must be nonnegative");
  if (y.n() != terms.n()) throw InvalidInput("linear form dimension does not match n");
  if (dimension < 0 || dimension > terms.max_rays()) throw InvalidInput("dimension out of range");
  const LinearForm direction = opts.direction ? *opts.direction : LinearForm::from(GenericVector(terms.n()));
  if (direction.n() != terms.n()) throw InvalidInput("perturbation direction dimension does not match n");
  const unsigned long d = static_cast<unsigned long>(dimension);
  const unsigned long power = static_cast<unsigned long>(p) + d;

  detail::Laurent laurent = chunked_reduce(
      terms.size(), opts.parallel, detail::Laurent(1),
      [&](std::size_t b, std::size_t e) {
        detail::Laurent acc(1);
        std::vector<Rational> beta, gamma;
        terms.for_each(b, e, [&](const ConeTerm& term) {
          if (term.rays.size() != d) throw InvalidInput("integration needs every term to have full ray count");
          const Rational alpha = y.dot(term.vertex);
          beta.clear();
          gamma.clear();
          bool degenerate = false;
          for (const auto& ray : term.rays) {
            beta.push_back(y.dot(ray));
            gamma.push_back(direction.dot(ray));
            degenerate = degenerate || beta.back().is_zero();
          }

          if (!degenerate && !opts.force_perturbation) {
            Rational v = pow(alpha, power) * Rational(term.sign);
            for (const auto& bj : beta) v /= bj;
            acc[0] += v;
            return;
          }

          // term = eps^(-m) * R(eps) / prod_{vanishing} gamma_j, where R is
          // (alpha + eps*gamma_a)^power * prod_{nonvanishing} 1/(beta_j + eps*gamma_j).
          std::size_t m = 0;
          for (const auto& bj : beta) m += bj.is_zero() ? 1 : 0;
          const Rational gamma_a = direction.dot(term.vertex);

          TruncatedSeries r(m);
          {
            Rational binom = 1, a_pow = 1;
            // coefficient k: C(power,k) alpha^(power-k) gamma_a^k
            for (std::size_t k = 0; k <= m && k <= power; ++k) {
              r[k] = binom * pow(alpha, power - k) * a_pow;
              binom = binom * Rational(static_cast<long>(power - k)) / Rational(static_cast<long>(k + 1));
              a_pow *= gamma_a;
            }
          }
          Rational scale = Rational(term.sign);
          for (std::size_t j = 0; j < beta.size(); ++j) {
            if (gamma[j].is_zero() && beta[j].is_zero())
              throw InvalidInput("perturbation direction is orthogonal to a degenerate ray");
            if (beta[j].is_zero()) {
              scale /= gamma[j];
              continue;
            }
            // 1/(beta + eps*gamma) = sum_k (-gamma)^k / beta^(k+1) eps^k
            TruncatedSeries inv(m);
            Rational ratio = -gamma[j] / beta[j];
            Rational c = Rational(1) / beta[j];
            for (std::size_t k = 0; k <= m; ++k) {
              inv[k] = c;
              c *= ratio;
            }
            r = r * inv;
          }
          detail::Laurent part(m + 1);
          for (std::size_t k = 0; k <= m; ++k) part[m - k] = r[k] * scale;
          detail::add_into(acc, part);
        });
        return acc;
      },
      [](detail::Laurent& acc, detail::Laurent&& part) { detail::add_into(acc, part); });

  for (std::size_t j = 1; j < laurent.size(); ++j)
    if (!laurent[j].is_zero())
      throw InternalInconsistency("pole of order " + std::to_string(j) + " survives the summation");

  // d! * (-1)^d / ((p+1)...(p+d))
  Rational prefactor = Rational(factorial(d));
  if (d % 2 == 1) prefactor = -prefactor;
  for (unsigned long k = 1; k <= d; ++k) prefactor /= Rational(static_cast<long>(p + static_cast<long>(k)));
  return prefactor * laurent[0];
}

}  // namespace birkhoff
