#pragma once

// Linear recurrence sequences as finite combinations of atoms:
//   Kronecker     0_i(k)        = [k == i]
//   GeoBinom      lambda^k * C(k, i)
//   GeoPower      lambda^k * k^i
//   RealCos/Sin   r^k cos(k theta) * f_i(k),  r^k sin(k theta) * f_i(k)
// where f_i is C(k, i) or k^i. Real atoms only occur in the complex backend.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcf/errors.hpp"
#include "pcf/numeric.hpp"

namespace pcf {

// ------------------------------------------------------------ combinatorics

/// C(k, i) for any integer k: k (k-1) ... (k-i+1) / i!.
mpz_class binomial(long long k, std::size_t i);

mpz_class factorial(std::size_t n);

/// Coefficients c_m with C(k,i) C(k,j) = sum_m c_m C(k,m); the vector has
/// length i+j+1 and is zero below max(i, j).
std::vector<mpz_class> binom_product(std::size_t i, std::size_t j);

/// Coefficients of C(-k, i) in the basis C(k, 0), ..., C(k, i).
std::vector<mpz_class> chi_expand(std::size_t i);

/// Stirling numbers of the second kind S(n, m) and signed first kind s(n, m).
/// Backed by a process-wide table that grows under a mutex.
mpz_class stirling2(std::size_t n, std::size_t m);
mpz_class stirling1(std::size_t n, std::size_t m);

// ---------------------------------------------------------------- atoms

enum class AtomKind { Delta, GeoBinom, GeoPower, RealCos, RealSin };

template <Field T>
struct SeqTerm {
  AtomKind kind = AtomKind::Delta;
  std::size_t i = 0;
  T ratio = field_one<T>();  // geometric kinds only
  double radius = 0.0;       // real kinds only
  double angle = 0.0;        // real kinds only, in (0, pi)
  bool power_basis = false;  // real kinds: k^i instead of C(k, i)

  static SeqTerm delta(std::size_t i) { return {AtomKind::Delta, i}; }
  static SeqTerm geo_binom(const T& lambda, std::size_t i) { return make_geo(AtomKind::GeoBinom, lambda, i); }
  static SeqTerm geo_power(const T& lambda, std::size_t i) { return make_geo(AtomKind::GeoPower, lambda, i); }
  static SeqTerm real_cos(double r, double theta, std::size_t i, bool power = false) {
    return make_real(AtomKind::RealCos, r, theta, i, power);
  }
  static SeqTerm real_sin(double r, double theta, std::size_t i, bool power = false) {
    return make_real(AtomKind::RealSin, r, theta, i, power);
  }

  bool is_geometric() const noexcept { return kind == AtomKind::GeoBinom || kind == AtomKind::GeoPower; }
  bool is_real() const noexcept { return kind == AtomKind::RealCos || kind == AtomKind::RealSin; }

 private:
  static SeqTerm make_geo(AtomKind kind, const T& lambda, std::size_t i) {
    if (FieldTraits<T>::is_zero(lambda, TolerancePolicy(0.0, 0.0)))
      throw std::invalid_argument("geometric ratio must be nonzero");
    SeqTerm t;
    t.kind = kind;
    t.i = i;
    t.ratio = lambda;
    return t;
  }
  static SeqTerm make_real(AtomKind kind, double r, double theta, std::size_t i, bool power) {
    if constexpr (FieldTraits<T>::exact) {
      throw std::invalid_argument("trigonometric atoms require the complex backend");
    } else {
      if (!(r > 0.0) || !(theta > 0.0 && theta < std::numbers::pi))
        throw std::invalid_argument("trigonometric atom needs r > 0 and theta in (0, pi)");
      SeqTerm t;
      t.kind = kind;
      t.i = i;
      t.radius = r;
      t.angle = theta;
      t.power_basis = power;
      return t;
    }
  }
};

namespace detail {

inline int cmp_double(double a, double b, const TolerancePolicy& pol) {
  if (pol.close(std::abs(a - b), std::abs(a), std::abs(b))) return 0;
  return a < b ? -1 : 1;
}

}  // namespace detail

/// Canonical order: kind, then ratio (or radius, angle, basis), then i.
template <Field T>
int compare_terms(const SeqTerm<T>& a, const SeqTerm<T>& b, const TolerancePolicy& pol) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.is_geometric()) {
    if (int c = FieldTraits<T>::compare(a.ratio, b.ratio, pol)) return c;
  } else if (a.is_real()) {
    if (int c = detail::cmp_double(a.radius, b.radius, pol)) return c;
    if (int c = detail::cmp_double(a.angle, b.angle, pol)) return c;
    if (a.power_basis != b.power_basis) return a.power_basis ? 1 : -1;
  }
  if (a.i != b.i) return a.i < b.i ? -1 : 1;
  return 0;
}

/// Value of one atom at integer k. Kronecker atoms only accept k >= 0.
template <Field T>
T atom_value(const SeqTerm<T>& t, long long k) {
  switch (t.kind) {
    case AtomKind::Delta:
      if (k < 0) throw NegativeEvalOnDelta();
      return static_cast<std::size_t>(k) == t.i ? field_one<T>() : field_zero<T>();
    case AtomKind::GeoBinom:
      return pow_int(t.ratio, k) * FieldTraits<T>::from_rational(Rational(binomial(k, t.i)));
    case AtomKind::GeoPower:
      return pow_int(t.ratio, k) * pow_int(FieldTraits<T>::from_rational(Rational(k)), static_cast<long long>(t.i));
    case AtomKind::RealCos:
    case AtomKind::RealSin:
      if constexpr (FieldTraits<T>::exact) {
        throw std::logic_error("trigonometric atom in the exact backend");
      } else {
        const double kd = static_cast<double>(k);
        const double factor = t.power_basis ? std::pow(kd, static_cast<double>(t.i))
                                            : binomial(k, t.i).get_d();
        const double trig = t.kind == AtomKind::RealCos ? std::cos(kd * t.angle) : std::sin(kd * t.angle);
        return T(std::pow(t.radius, kd) * trig * factor);
      }
  }
  throw std::logic_error("unknown atom kind");
}

// -------------------------------------------------------------- expressions

/// Finite linear combination of atoms, kept in canonical order with no
/// duplicate atoms and no zero coefficients.
template <Field T>
class SeqExpr {
 public:
  using Entry = std::pair<SeqTerm<T>, T>;

  SeqExpr() = default;
  explicit SeqExpr(const TolerancePolicy& pol) : pol_(pol) {}

  static SeqExpr atom(const SeqTerm<T>& t, const T& coeff = field_one<T>(), const TolerancePolicy& pol = {}) {
    SeqExpr e(pol);
    e.add(t, coeff);
    return e;
  }

  const std::vector<Entry>& terms() const noexcept { return terms_; }
  const TolerancePolicy& policy() const noexcept { return pol_; }
  bool empty() const noexcept { return terms_.empty(); }

  bool has_delta() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const Entry& e) { return e.first.kind == AtomKind::Delta; });
  }

  /// Adds coeff * t, merging with an equal atom if present.
  void add(const SeqTerm<T>& t, const T& coeff) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), t,
                               [&](const Entry& e, const SeqTerm<T>& x) { return compare_terms(e.first, x, pol_) < 0; });
    if (it != terms_.end() && compare_terms(it->first, t, pol_) == 0) {
      it->second += coeff;
    } else {
      terms_.insert(it, {t, coeff});
    }
    prune();
  }

  /// Sum of coefficient times atom value. Throws NegativeEvalOnDelta for
  /// k < 0 when a Kronecker atom is present.
  T eval(long long k) const {
    if (k < 0 && has_delta()) throw NegativeEvalOnDelta();
    T acc = field_zero<T>();
    for (const auto& [t, c] : terms_) acc += c * atom_value(t, k);
    return acc;
  }

  SeqExpr& operator+=(const SeqExpr& o) {
    for (const auto& [t, c] : o.terms_) add(t, c);
    return *this;
  }
  SeqExpr& operator-=(const SeqExpr& o) {
    for (const auto& [t, c] : o.terms_) add(t, -c);
    return *this;
  }
  SeqExpr& operator*=(const T& s) {
    for (auto& e : terms_) e.second *= s;
    prune();
    return *this;
  }
  friend SeqExpr operator+(SeqExpr a, const SeqExpr& b) { return a += b; }
  friend SeqExpr operator-(SeqExpr a, const SeqExpr& b) { return a -= b; }
  friend SeqExpr operator*(SeqExpr a, const T& s) { return a *= s; }

  /// Same atoms with equal coefficients under the expression's policy.
  friend bool operator==(const SeqExpr& a, const SeqExpr& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t x = 0; x < a.terms_.size(); ++x) {
      if (compare_terms(a.terms_[x].first, b.terms_[x].first, a.pol_) != 0) return false;
      if (!FieldTraits<T>::equal(a.terms_[x].second, b.terms_[x].second, a.pol_)) return false;
    }
    return true;
  }

 private:
  // Exact: drop zeros. Approx: drop |c| < abs_eps * (1 + max |c|).
  void prune() {
    double cmax = 0.0;
    if constexpr (!FieldTraits<T>::exact)
      for (const auto& e : terms_) cmax = std::max(cmax, FieldTraits<T>::magnitude(e.second));
    std::erase_if(terms_, [&](const Entry& e) {
      if constexpr (FieldTraits<T>::exact)
        return e.second.is_zero();
      else
        return FieldTraits<T>::magnitude(e.second) < pol_.abs_eps * (1.0 + cmax);
    });
  }

  TolerancePolicy pol_;
  std::vector<Entry> terms_;
};

namespace detail {

template <Field T>
T from_int(const mpz_class& v) {
  return FieldTraits<T>::from_rational(Rational(v));
}

// C(k,i) f  ->  sum_m m! S(i,m) ...  and the inverse direction, applied to a
// single atom of either geometric or trigonometric kind.
template <Field T>
void convert_atom(SeqExpr<T>& out, const SeqTerm<T>& t, const T& c, bool to_power) {
  const bool source_power = t.kind == AtomKind::GeoPower || (t.is_real() && t.power_basis);
  if (t.kind == AtomKind::Delta || source_power == to_power) {
    out.add(t, c);
    return;
  }
  auto retarget = [&](std::size_t n) {
    SeqTerm<T> r = t;
    r.i = n;
    if (t.is_geometric())
      r.kind = to_power ? AtomKind::GeoPower : AtomKind::GeoBinom;
    else
      r.power_basis = to_power;
    return r;
  };
  if (to_power) {
    // C(k,i) = sum_n s(i,n)/i! k^n
    const Rational inv_fact = Rational(factorial(t.i)).inverse();
    for (std::size_t n = 0; n <= t.i; ++n) {
      const mpz_class s = stirling1(t.i, n);
      if (s == 0) continue;
      out.add(retarget(n), c * FieldTraits<T>::from_rational(Rational(s) * inv_fact));
    }
  } else {
    // k^n = sum_m m! S(n,m) C(k,m)
    for (std::size_t m = 0; m <= t.i; ++m) {
      const mpz_class s = stirling2(t.i, m) * factorial(m);
      if (s == 0) continue;
      out.add(retarget(m), c * from_int<T>(s));
    }
  }
}

}  // namespace detail

/// Rewrites every binomial-factor atom in the power basis k^i.
template <Field T>
SeqExpr<T> to_power_basis(const SeqExpr<T>& u) {
  SeqExpr<T> out(u.policy());
  for (const auto& [t, c] : u.terms()) detail::convert_atom(out, t, c, true);
  return out;
}

/// Rewrites every power-factor atom in the binomial basis C(k, i).
template <Field T>
SeqExpr<T> from_power_basis(const SeqExpr<T>& u) {
  SeqExpr<T> out(u.policy());
  for (const auto& [t, c] : u.terms()) detail::convert_atom(out, t, c, false);
  return out;
}

/// Componentwise product of two sequences.
template <Field T>
SeqExpr<T> seq_mul(const SeqExpr<T>& u, const SeqExpr<T>& v) {
  SeqExpr<T> out(u.policy());
  for (const auto& [a, ca] : u.terms()) {
    for (const auto& [b, cb] : v.terms()) {
      const T c = ca * cb;
      if (a.is_real() || b.is_real()) {
        // Only Kronecker absorption is defined for trigonometric atoms.
        if (a.kind == AtomKind::Delta) {
          out.add(a, c * atom_value(b, static_cast<long long>(a.i)));
        } else if (b.kind == AtomKind::Delta) {
          out.add(b, c * atom_value(a, static_cast<long long>(b.i)));
        } else {
          throw std::invalid_argument("products of trigonometric atoms are not supported");
        }
        continue;
      }
      if (a.kind == AtomKind::Delta && b.kind == AtomKind::Delta) {
        if (a.i == b.i) out.add(a, c);
      } else if (a.kind == AtomKind::Delta) {
        out.add(a, c * atom_value(b, static_cast<long long>(a.i)));
      } else if (b.kind == AtomKind::Delta) {
        out.add(b, c * atom_value(a, static_cast<long long>(b.i)));
      } else if (a.kind == AtomKind::GeoPower && b.kind == AtomKind::GeoPower) {
        out.add(SeqTerm<T>::geo_power(a.ratio * b.ratio, a.i + b.i), c);
      } else {
        // At least one binomial factor: multiply in the binomial basis.
        SeqExpr<T> left(u.policy()), right(u.policy());
        detail::convert_atom(left, a, field_one<T>(), false);
        detail::convert_atom(right, b, field_one<T>(), false);
        for (const auto& [la, lc] : left.terms())
          for (const auto& [rb, rc] : right.terms()) {
            const auto coeffs = binom_product(la.i, rb.i);
            const T ratio = la.ratio * rb.ratio;
            for (std::size_t m = 0; m < coeffs.size(); ++m)
              if (coeffs[m] != 0) out.add(SeqTerm<T>::geo_binom(ratio, m), c * lc * rc * detail::from_int<T>(coeffs[m]));
          }
      }
    }
  }
  return out;
}

/// Expression of u(-k) for a purely geometric u: every ratio is inverted and
/// C(k,i) is replaced by its expansion of C(-k,i).
template <Field T>
SeqExpr<T> negate_index(const SeqExpr<T>& u) {
  SeqExpr<T> out(u.policy());
  for (const auto& [t, c] : u.terms()) {
    switch (t.kind) {
      case AtomKind::Delta:
        throw NegativeEvalOnDelta();
      case AtomKind::GeoBinom: {
        const auto chi = chi_expand(t.i);
        for (std::size_t j = 0; j < chi.size(); ++j)
          if (chi[j] != 0) out.add(SeqTerm<T>::geo_binom(t.ratio.inverse(), j), c * detail::from_int<T>(chi[j]));
        break;
      }
      case AtomKind::GeoPower: {
        const T sign = (t.i % 2 == 0) ? field_one<T>() : -field_one<T>();
        out.add(SeqTerm<T>::geo_power(t.ratio.inverse(), t.i), c * sign);
        break;
      }
      default:
        throw std::invalid_argument("negate_index supports geometric atoms only");
    }
  }
  return out;
}

/// Rewrites a complex expression built from conjugate pairs as real atoms:
/// c lambda^k + conj(c) conj(lambda)^k = 2 Re(c) r^k cos(k theta) - 2 Im(c) r^k sin(k theta).
/// Throws ConjugacyViolation if a partner atom or coefficient is missing.
SeqExpr<ApproxComplex> realify(const SeqExpr<ApproxComplex>& u);

// ---------------------------------------------------------------- printing

std::string format_angle(double theta);

template <Field T>
std::string format_atom(const SeqTerm<T>& t) {
  std::ostringstream os;
  auto factor = [&](bool power) {
    if (!power) return "·C(k," + std::to_string(t.i) + ")";
    if (t.i == 0) return std::string();
    return std::string("·k") + (t.i > 1 ? "^" + std::to_string(t.i) : "");
  };
  switch (t.kind) {
    case AtomKind::Delta:
      os << "0_" << t.i;
      break;
    case AtomKind::GeoBinom:
    case AtomKind::GeoPower: {
      std::string r = FieldTraits<T>::to_string(t.ratio);
      if (r[0] == '-' || r.find('/') != std::string::npos) r = "(" + r + ")";
      os << r << "^k" << factor(t.kind == AtomKind::GeoPower);
      break;
    }
    case AtomKind::RealCos:
    case AtomKind::RealSin: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "%.12g", t.radius);
      os << buf << "^k·" << (t.kind == AtomKind::RealCos ? "cos(" : "sin(") << format_angle(t.angle) << ")"
         << factor(t.power_basis);
      break;
    }
  }
  return os.str();
}

template <Field T>
std::string to_string(const SeqExpr<T>& u) {
  if (u.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : u.terms()) {
    if (!first) os << " + ";
    first = false;
    os << FieldTraits<T>::to_string(c) << "·" << format_atom(t);
  }
  return os.str();
}

}  // namespace pcf
