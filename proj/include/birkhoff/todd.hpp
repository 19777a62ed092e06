#pragma once

// Todd polynomials evaluated at explicit rationals. td_j(xi_1..xi_d) is the
// coefficient of tau^j in prod_i g(tau * xi_i), g(x) = x / (1 - exp(-x)).

#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "birkhoff/exactmath.hpp"

namespace birkhoff {

/// Bernoulli numbers with B_1 = +1/2, plus the two series derived from them
/// that the Todd computations need. Immutable once built.
class BernoulliTable {
 public:
  explicit BernoulliTable(std::size_t max_index) : b_(max_index + 1), g_(max_index + 1), log_g_(max_index + 1) {
    // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1 (B_1 = -1/2 form).
    b_[0] = 1;
    for (std::size_t m = 1; m <= max_index; ++m) {
      Rational acc;
      Integer binom = 1;  // C(m+1, j)
      for (std::size_t j = 0; j < m; ++j) {
        acc += Rational(binom) * b_[j];
        binom = binom * static_cast<unsigned long>(m + 1 - j) / static_cast<unsigned long>(j + 1);
      }
      b_[m] = -acc / Rational(static_cast<long>(m + 1));
    }
    if (max_index >= 1) b_[1] = Rational(1, 2);

    for (std::size_t k = 0; k <= max_index; ++k) g_[k] = b_[k] / Rational(factorial(k));
    // log g(x) = x/2 - sum_{m even >= 2} B_m x^m / (m * m!)
    if (max_index >= 1) log_g_[1] = Rational(1, 2);
    for (std::size_t m = 2; m <= max_index; m += 2)
      log_g_[m] = -b_[m] / (Rational(static_cast<long>(m)) * Rational(factorial(m)));
  }

  std::size_t max_index() const { return b_.size() - 1; }
  const Rational& bernoulli(std::size_t k) const { return b_.at(k); }
  /// Coefficient of x^k in g(x).
  const Rational& g_coefficient(std::size_t k) const { return g_.at(k); }
  /// Coefficient of x^k in log g(x).
  const Rational& log_g_coefficient(std::size_t k) const { return log_g_.at(k); }

 private:
  std::vector<Rational> b_;
  std::vector<Rational> g_;
  std::vector<Rational> log_g_;
};

/// Process-wide table covering at least `min_index`. Grows by replacement, so
/// references held by callers stay valid.
inline std::shared_ptr<const BernoulliTable> bernoulli_table(std::size_t min_index) {
  static std::mutex mu;
  static std::shared_ptr<const BernoulliTable> table;
  std::lock_guard lock(mu);
  if (!table || table->max_index() < min_index)
    table = std::make_shared<const BernoulliTable>(std::max<std::size_t>(min_index, 32));
  return table;
}

/// Expansion of tau*xi / (1 - exp(-tau*xi)) up to tau^order.
inline TruncatedSeries g_series(const Rational& xi, std::size_t order) {
  auto table = bernoulli_table(order);
  TruncatedSeries s(order);
  Rational xi_pow = 1;
  for (std::size_t k = 0; k <= order; ++k) {
    s[k] = table->g_coefficient(k) * xi_pow;
    xi_pow *= xi;
  }
  return s;
}

struct ToddValues {
  std::vector<Rational> values;  // values[j] = td_j
};

/// td_0..td_order at the given arguments, as the product of the g-series.
inline ToddValues todd_values(std::span<const Rational> xis, std::size_t order) {
  TruncatedSeries acc(order, {Rational(1)});
  for (const auto& xi : xis) acc = acc * g_series(xi, order);
  return {acc.coefficients()};
}

inline ToddValues todd_values(const std::vector<Rational>& xis, std::size_t order) {
  return todd_values(std::span<const Rational>(xis), order);
}

/// Same values as todd_values, computed as exp(sum_m log_g[m] * p_m * tau^m)
/// from the power sums p_m = sum_i xi_i^m. O(order^2) per call instead of
/// O(d * order^2); used on the hot path where d = order.
class ToddEvaluator {
 public:
  explicit ToddEvaluator(std::size_t max_order) : table_(bernoulli_table(max_order)) {
    weights_.reserve(max_order + 1);
    for (std::size_t m = 0; m <= max_order; ++m) weights_.push_back(table_->log_g_coefficient(m).raw());
  }

  std::size_t max_order() const { return weights_.size() - 1; }

  /// Writes td_0..td_order into out (resized to order + 1).
  void evaluate(std::span<const Integer> xis, std::size_t order, std::vector<mpq_class>& out) const {
    check(order);
    std::vector<Integer> powers(xis.begin(), xis.end());
    std::vector<mpq_class> log_terms(order + 1);
    for (std::size_t m = 1; m <= order; ++m) {
      Integer sum = 0;
      for (auto& p : powers) sum += p;
      if (sgn(weights_[m]) != 0) log_terms[m] = weights_[m] * sum;
      if (m < order)
        for (std::size_t i = 0; i < powers.size(); ++i) powers[i] *= xis[i];
    }
    exponentiate(log_terms, out);
  }

  void evaluate(std::span<const Rational> xis, std::size_t order, std::vector<mpq_class>& out) const {
    check(order);
    std::vector<mpq_class> powers;
    for (const auto& x : xis) powers.push_back(x.raw());
    std::vector<mpq_class> log_terms(order + 1);
    for (std::size_t m = 1; m <= order; ++m) {
      mpq_class sum = 0;
      for (auto& p : powers) sum += p;
      if (sgn(weights_[m]) != 0) log_terms[m] = weights_[m] * sum;
      if (m < order)
        for (std::size_t i = 0; i < powers.size(); ++i) powers[i] *= xis[i].raw();
    }
    exponentiate(log_terms, out);
  }

 private:
  void check(std::size_t order) const {
    if (order > max_order()) throw InvalidInput("Todd order exceeds evaluator capacity");
  }

  // E = exp(L): m E_m = sum_{k=1}^m k L_k E_{m-k}.
  static void exponentiate(const std::vector<mpq_class>& log_terms, std::vector<mpq_class>& out) {
    const std::size_t order = log_terms.size() - 1;
    out.assign(order + 1, mpq_class(0));
    out[0] = 1;
    mpq_class acc, tmp;
    for (std::size_t m = 1; m <= order; ++m) {
      acc = 0;
      for (std::size_t k = 1; k <= m; ++k) {
        if (sgn(log_terms[k]) == 0) continue;
        tmp = log_terms[k] * out[m - k];
        tmp *= static_cast<unsigned long>(k);
        acc += tmp;
      }
      acc /= static_cast<unsigned long>(m);
      out[m] = acc;
    }
  }

  std::shared_ptr<const BernoulliTable> table_;
  std::vector<mpq_class> weights_;
};

}  // namespace birkhoff
