#pragma once

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcf/matrix.hpp"
#include "pcf/numeric.hpp"

namespace pcf {

/// Univariate polynomial with coefficients in ascending degree. Exact zero
/// leading coefficients are always stripped; `trimmed` also drops
/// coefficients that are zero under a tolerance.
template <Field T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { strip(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { strip(); }

  static Polynomial constant(const T& v) { return Polynomial({v}); }
  static Polynomial monomial(std::size_t deg, const T& coeff = field_one<T>()) {
    std::vector<T> c(deg + 1, field_zero<T>());
    c[deg] = coeff;
    return Polynomial(std::move(c));
  }
  /// X - root
  static Polynomial linear(const T& root) { return Polynomial({-root, field_one<T>()}); }

  bool is_zero() const noexcept { return c_.empty(); }
  /// Degree; the zero polynomial reports -1.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  const std::vector<T>& coefficients() const noexcept { return c_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_zero<T>(); }
  const T& leading() const {
    if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
    return c_.back();
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    Polynomial p = *this;
    const T inv = leading().inverse();
    for (auto& x : p.c_) x *= inv;
    p.c_.back() = field_one<T>();
    return p;
  }

  Polynomial trimmed(const TolerancePolicy& pol) const {
    Polynomial p = *this;
    double scale = 0.0;
    for (const auto& x : p.c_) scale = std::max(scale, FieldTraits<T>::magnitude(x));
    while (!p.c_.empty() && FieldTraits<T>::is_zero_scaled(p.c_.back(), scale, pol)) p.c_.pop_back();
    return p;
  }

  T operator()(const T& x) const {
    T acc = field_zero<T>();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Horner evaluation at a square matrix.
  Matrix<T> operator()(const Matrix<T>& a) const {
    const std::size_t q = a.order();
    Matrix<T> acc(q);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = mat_mul(acc, a);
      for (std::size_t i = 0; i < q; ++i) acc(i, i) += *it;
    }
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d;
    d.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * T(static_cast<long>(i)));
    return Polynomial(std::move(d));
  }

  /// p(X + shift): the Taylor coefficients of p around `shift`.
  Polynomial shifted(const T& shift) const {
    std::vector<T> a = c_;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) a[j - 1] += shift * a[j];
    return Polynomial(std::move(a));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), field_zero<T>());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    strip();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), field_zero<T>());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    strip();
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    strip();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.c_.size() + b.c_.size() - 1, field_zero<T>());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Euclidean division: returns {quotient, remainder}.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw DivisionByZero();
    std::vector<T> r = c_;
    if (c_.size() < d.c_.size()) return {Polynomial{}, *this};
    std::vector<T> quot(c_.size() - d.c_.size() + 1, field_zero<T>());
    const T inv = d.leading().inverse();
    for (std::size_t k = quot.size(); k-- > 0;) {
      const T f = r[k + d.c_.size() - 1] * inv;
      quot[k] = f;
      for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] -= f * d.c_[j];
      r[k + d.c_.size() - 1] = field_zero<T>();
    }
    r.resize(d.c_.size() - 1);
    return {Polynomial(std::move(quot)), Polynomial(std::move(r))};
  }

  Polynomial pow(std::size_t e) const {
    Polynomial out = constant(field_one<T>());
    for (std::size_t i = 0; i < e; ++i) out = out * *this;
    return out;
  }

  /// Expanded form, highest degree first: "X^4 - 4*X^2".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const T& a = c_[k];
      if (a == field_zero<T>()) continue;
      std::string s = FieldTraits<T>::to_string(a);
      bool negative = !s.empty() && s[0] == '-';
      if (negative) s.erase(0, 1);
      if (first) {
        if (negative) os << '-';
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      bool unit = (s == "1");
      if (k == 0) {
        os << s;
        continue;
      }
      if (!unit) os << s << '*';
      os << 'X';
      if (k > 1) os << '^' << k;
    }
    return os.str();
  }

 private:
  void strip() {
    while (!c_.empty() && c_.back() == field_zero<T>()) c_.pop_back();
  }

  std::vector<T> c_;
};

template <Field T>
std::ostream& operator<<(std::ostream& os, const Polynomial<T>& p) {
  return os << p.to_string();
}

/// Monic gcd by the Euclidean algorithm (exact backend).
template <Field T>
Polynomial<T> poly_gcd(Polynomial<T> a, Polynomial<T> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace pcf
