#include "pcf/numeric.hpp"

#include <cctype>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace pcf {

TolerancePolicy::TolerancePolicy(double abs, double rel) : abs_eps(abs), rel_eps(rel) {
  if (!(abs >= 0.0) || !(rel >= 0.0) || !std::isfinite(abs) || !std::isfinite(rel))
    throw std::invalid_argument("tolerances must be finite and nonnegative");
}

// ---------------------------------------------------------------- Rational

Rational::Rational(mpz_class num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void Rational::normalize() {
  if (sgn(den_) == 0) throw DivisionByZero();
  if (sgn(den_) < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (sgn(num_) == 0) {
    den_ = 1;
    return;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

Rational rational_normalize(const mpz_class& num, const mpz_class& den) { return Rational(num, den); }

namespace {

mpz_class parse_integer(std::string_view s) {
  std::size_t pos = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) pos = 1;
  if (pos == s.size()) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  for (std::size_t i = pos; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  return Rational(parse_integer(trim(text.substr(0, slash))), parse_integer(trim(text.substr(slash + 1))));
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return Rational(den_, num_);
}

double Rational::to_double() const {
  mpq_class q(num_, den_);
  return q.get_d();
}

std::string Rational::to_string() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

// ----------------------------------------------------------- ApproxComplex

ApproxComplex::ApproxComplex(double re, double im) : re_(re), im_(im) { check(); }

void ApproxComplex::check() const {
  if (!std::isfinite(re_) || !std::isfinite(im_)) throw NonFinite("non-finite complex value");
}

ApproxComplex ApproxComplex::inverse() const {
  if (is_exact_zero()) throw DivisionByZero();
  return ApproxComplex(1.0) / *this;
}

ApproxComplex& ApproxComplex::operator+=(const ApproxComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  check();
  return *this;
}

ApproxComplex& ApproxComplex::operator-=(const ApproxComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  check();
  return *this;
}

ApproxComplex& ApproxComplex::operator*=(const ApproxComplex& o) {
  double re = re_ * o.re_ - im_ * o.im_;
  double im = re_ * o.im_ + im_ * o.re_;
  re_ = re;
  im_ = im;
  check();
  return *this;
}

ApproxComplex& ApproxComplex::operator/=(const ApproxComplex& o) {
  if (o.is_exact_zero()) throw DivisionByZero();
  auto z = value() / o.value();
  re_ = z.real();
  im_ = z.imag();
  check();
  return *this;
}

std::string ApproxComplex::to_string() const {
  char buf[64];
  if (im_ == 0.0) {
    std::snprintf(buf, sizeof buf, "%.12g", re_);
  } else if (re_ == 0.0) {
    std::snprintf(buf, sizeof buf, "%.12gi", im_);
  } else {
    std::snprintf(buf, sizeof buf, "(%.12g%+.12gi)", re_, im_);
  }
  return buf;
}

std::ostream& operator<<(std::ostream& os, const ApproxComplex& z) { return os << z.to_string(); }

bool field_equal(const FieldScalar& a, const FieldScalar& b, const TolerancePolicy& pol) {
  if (a.index() != b.index())
    throw BackendMismatch("cannot compare a rational with a complex scalar");
  if (const auto* ra = std::get_if<Rational>(&a)) return *ra == std::get<Rational>(b);
  return FieldTraits<ApproxComplex>::equal(std::get<ApproxComplex>(a), std::get<ApproxComplex>(b), pol);
}

}  // namespace pcf
