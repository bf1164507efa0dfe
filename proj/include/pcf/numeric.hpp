#pragma once

// Scalar fields used throughout the library: exact rationals over GMP integers
// and double-precision complex numbers compared under a tolerance policy.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "pcf/errors.hpp"

namespace pcf {

/// Closeness test |a - b| <= abs_eps + rel_eps * max(|a|, |b|).
struct TolerancePolicy {
  double abs_eps = 1e-9;
  double rel_eps = 1e-9;

  TolerancePolicy() = default;
  TolerancePolicy(double abs, double rel);

  bool close(double dist, double mag_a, double mag_b) const noexcept {
    return dist <= abs_eps + rel_eps * std::max(mag_a, mag_b);
  }
};

class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(int v) : num_(v), den_(1) {}            // NOLINT(google-explicit-constructor)
  Rational(long v) : num_(v), den_(1) {}           // NOLINT(google-explicit-constructor)
  Rational(long long v) : num_(std::to_string(v)), den_(1) {}  // NOLINT
  Rational(const mpz_class& v) : num_(v), den_(1) {}  // NOLINT
  Rational(mpz_class num, mpz_class den);

  /// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input
  /// and DivisionByZero for q = 0.
  static Rational parse(std::string_view text);

  const mpz_class& num() const noexcept { return num_; }
  const mpz_class& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return sgn(num_) == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return sgn(num_); }

  Rational inverse() const;
  Rational abs() const { return Rational(::abs(num_), den_, Canonical{}); }
  double to_double() const;
  std::string to_string() const;

  Rational operator-() const { return Rational(-num_, den_, Canonical{}); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  struct Canonical {};
  Rational(mpz_class num, mpz_class den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  mpz_class num_;
  mpz_class den_;
};

/// Builds num/den in lowest terms with a positive denominator.
Rational rational_normalize(const mpz_class& num, const mpz_class& den);

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Complex double whose operations refuse to produce NaN or infinity.
class ApproxComplex {
 public:
  constexpr ApproxComplex() = default;
  ApproxComplex(double re, double im = 0.0);  // NOLINT(google-explicit-constructor)
  explicit ApproxComplex(std::complex<double> z) : ApproxComplex(z.real(), z.imag()) {}

  double re() const noexcept { return re_; }
  double im() const noexcept { return im_; }
  std::complex<double> value() const noexcept { return {re_, im_}; }
  double abs() const noexcept { return std::hypot(re_, im_); }
  double arg() const noexcept { return std::atan2(im_, re_); }
  ApproxComplex conj() const noexcept { return {re_, -im_, Unchecked{}}; }
  bool is_exact_zero() const noexcept { return re_ == 0.0 && im_ == 0.0; }

  ApproxComplex inverse() const;
  std::string to_string() const;

  ApproxComplex operator-() const noexcept { return {-re_, -im_, Unchecked{}}; }
  ApproxComplex& operator+=(const ApproxComplex& o);
  ApproxComplex& operator-=(const ApproxComplex& o);
  ApproxComplex& operator*=(const ApproxComplex& o);
  ApproxComplex& operator/=(const ApproxComplex& o);

  friend ApproxComplex operator+(ApproxComplex a, const ApproxComplex& b) { return a += b; }
  friend ApproxComplex operator-(ApproxComplex a, const ApproxComplex& b) { return a -= b; }
  friend ApproxComplex operator*(ApproxComplex a, const ApproxComplex& b) { return a *= b; }
  friend ApproxComplex operator/(ApproxComplex a, const ApproxComplex& b) { return a /= b; }

  // Bitwise equality; use FieldTraits::equal for tolerant comparison.
  friend bool operator==(const ApproxComplex&, const ApproxComplex&) = default;

 private:
  struct Unchecked {};
  constexpr ApproxComplex(double re, double im, Unchecked) : re_(re), im_(im) {}
  void check() const;

  double re_ = 0.0;
  double im_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const ApproxComplex& z);

template <class T>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr std::string_view name = "rational";

  static Rational from_rational(const Rational& r) { return r; }
  static bool equal(const Rational& a, const Rational& b, const TolerancePolicy&) { return a == b; }
  static bool is_zero(const Rational& a, const TolerancePolicy&) { return a.is_zero(); }
  static bool is_zero_scaled(const Rational& a, double, const TolerancePolicy&) { return a.is_zero(); }
  static double magnitude(const Rational& a) { return std::abs(a.to_double()); }
  static int compare(const Rational& a, const Rational& b, const TolerancePolicy&) {
    auto c = a <=> b;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  static std::string to_string(const Rational& a) { return a.to_string(); }
};

template <>
struct FieldTraits<ApproxComplex> {
  static constexpr bool exact = false;
  static constexpr std::string_view name = "complex";

  static ApproxComplex from_rational(const Rational& r) { return {r.to_double(), 0.0}; }
  static bool equal(const ApproxComplex& a, const ApproxComplex& b, const TolerancePolicy& pol) {
    return pol.close((a - b).abs(), a.abs(), b.abs());
  }
  static bool is_zero(const ApproxComplex& a, const TolerancePolicy& pol) { return a.abs() <= pol.abs_eps; }
  // Zero relative to a magnitude scale, for entries produced by long products.
  static bool is_zero_scaled(const ApproxComplex& a, double scale, const TolerancePolicy& pol) {
    return a.abs() <= pol.abs_eps * std::max(1.0, scale);
  }
  static double magnitude(const ApproxComplex& a) { return a.abs(); }
  // Lexicographic on (re, im), each component bucketed by the tolerance.
  static int compare(const ApproxComplex& a, const ApproxComplex& b, const TolerancePolicy& pol) {
    if (!pol.close(std::abs(a.re() - b.re()), std::abs(a.re()), std::abs(b.re())))
      return a.re() < b.re() ? -1 : 1;
    if (!pol.close(std::abs(a.im() - b.im()), std::abs(a.im()), std::abs(b.im())))
      return a.im() < b.im() ? -1 : 1;
    return 0;
  }
  static std::string to_string(const ApproxComplex& a) { return a.to_string(); }
};

template <class T>
concept Field = requires(const T& a, const T& b, const TolerancePolicy& pol) {
  { FieldTraits<T>::exact } -> std::convertible_to<bool>;
  { FieldTraits<T>::equal(a, b, pol) } -> std::same_as<bool>;
  { FieldTraits<T>::is_zero(a, pol) } -> std::same_as<bool>;
  { FieldTraits<T>::magnitude(a) } -> std::same_as<double>;
  { a + b } -> std::same_as<T>;
  { a * b } -> std::same_as<T>;
  { a / b } -> std::same_as<T>;
  { a.inverse() } -> std::same_as<T>;
};

template <Field T>
T field_zero() {
  return T(0);
}

template <Field T>
T field_one() {
  return T(1);
}

/// base^e for any integer e; negative exponents invert first.
template <Field T>
T pow_int(T base, long long e) {
  if (e < 0) {
    base = base.inverse();
    e = -e;
  }
  T result = field_one<T>();
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

/// A scalar tagged with its backend, for code that chooses the field at run time.
using FieldScalar = std::variant<Rational, ApproxComplex>;

/// Exact backend compares canonically, approx backend under `pol`.
/// Throws BackendMismatch if the two scalars come from different backends.
bool field_equal(const FieldScalar& a, const FieldScalar& b, const TolerancePolicy& pol = {});

}  // namespace pcf
