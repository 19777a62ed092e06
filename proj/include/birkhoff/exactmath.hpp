#pragma once

// Exact arithmetic substrate: GMP-backed integers and rationals, dense
// univariate polynomials over Q, and truncated power series.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "birkhoff/errors.hpp"

namespace birkhoff {

using Integer = mpz_class;

/// Exact rational number, always in lowest terms with a positive
/// denominator. Serializes as "p/q", or "p" when q == 1.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw InvalidInput("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }
  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  /// Parses "p", "-p", "p/q". Whitespace is not accepted.
  static Rational parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw InvalidInput("empty rational literal");
    auto slash = s.find('/');
    auto valid_int = [](std::string_view part) {
      std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
      if (i >= part.size()) return false;
      for (; i < part.size(); ++i)
        if (part[i] < '0' || part[i] > '9') return false;
      return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
      throw InvalidInput("malformed rational literal '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    return Rational(Integer(num), Integer(den));
  }

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  std::string to_string() const { return value_.get_str(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw InvalidInput("division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

inline Rational pow(const Rational& base, unsigned long exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return Rational(num, den);
}

inline Integer factorial(unsigned long k) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

/// Dense polynomial in one variable; coefficient k multiplies t^k.
class Polynomial {
 public:
  Polynomial() : coeffs_{Rational(0)} {}
  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  std::size_t degree() const { return coeffs_.size() - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0].is_zero(); }
  const Rational& operator[](std::size_t k) const { return coeffs_[k]; }
  const Rational& leading() const { return coeffs_.back(); }

  Rational evaluate(const Rational& t) const {
    Rational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Human-readable form, e.g. "1 + 11/6 t + t^2 + 1/6 t^3".
  std::string to_string(std::string_view var = "t") const {
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const Rational& c = coeffs_[k];
      if (c.is_zero() && !(k == 0 && coeffs_.size() == 1)) continue;
      std::string mag = (c.sign() < 0 ? -c : c).to_string();
      if (out.empty())
        out += c.sign() < 0 ? "-" : "";
      else
        out += c.sign() < 0 ? " - " : " + ";
      if (k == 0) {
        out += mag;
        continue;
      }
      if (mag != "1") out += mag + " ";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
  }

 private:
  void trim() {
    while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.emplace_back(0);
  }

  std::vector<Rational> coeffs_;
};

/// Unique polynomial of degree < points.size() through the given points,
/// via Newton divided differences.
inline Polynomial poly_interpolate(std::span<const std::pair<long, Rational>> points) {
  if (points.empty()) throw InvalidInput("interpolation needs at least one point");
  const std::size_t m = points.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (points[i].first == points[j].first)
        throw InvalidInput("duplicate interpolation argument " + std::to_string(points[i].first));

  std::vector<Rational> dd(m);
  for (std::size_t i = 0; i < m; ++i) dd[i] = points[i].second;
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = m - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / Rational(points[i].first - points[i - level].first);

  // Horner on the Newton form: p = dd0 + (t - x0)(dd1 + (t - x1)(...)).
  Polynomial p{dd[m - 1]};
  for (std::size_t i = m - 1; i-- > 0;)
    p = p * Polynomial{Rational(-points[i].first), Rational(1)} + Polynomial{dd[i]};
  return p;
}

inline Polynomial poly_interpolate(const std::vector<std::pair<long, Rational>>& points) {
  return poly_interpolate(std::span<const std::pair<long, Rational>>(points));
}

/// Power series in a formal variable, exact modulo x^(order+1).
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1) {}
  TruncatedSeries(std::size_t order, std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(order + 1);
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  const Rational& operator[](std::size_t k) const { return coeffs_[k]; }
  Rational& operator[](std::size_t k) { return coeffs_[k]; }

  TruncatedSeries scaled(const Rational& s) const {
    TruncatedSeries r = *this;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_orders(a, b);
    TruncatedSeries r = a;
    for (std::size_t k = 0; k < r.coeffs_.size(); ++k) r.coeffs_[k] += b.coeffs_[k];
    return r;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_orders(a, b);
    const std::size_t n = a.coeffs_.size();
    TruncatedSeries r(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < n; ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  static void check_orders(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order())
      throw InvalidInput("series orders differ: " + std::to_string(a.order()) + " vs " +
                         std::to_string(b.order()));
  }

  std::vector<Rational> coeffs_;
};

inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b; }

}  // namespace birkhoff

template <>
struct std::hash<birkhoff::Rational> {
  std::size_t operator()(const birkhoff::Rational& r) const noexcept {
    auto limb_hash = [](mpz_srcptr z) {
      std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) * 0x9e3779b97f4a7c15ULL;
      for (mp_size_t i = 0; i < static_cast<mp_size_t>(mpz_size(z)); ++i)
        h = (h ^ static_cast<std::size_t>(mpz_getlimbn(z, i))) * 0x100000001b3ULL;
      return h;
    };
    return limb_hash(r.raw().get_num_mpz_t()) * 31 + limb_hash(r.raw().get_den_mpz_t());
  }
};
