#pragma once

// Canonical form of the power sequence (A^k)_{k>=0}:
//   A^k = sum_i 0_i(k) M_i + sum_{lambda,i} lambda^k C(k,i) C_{lambda,i}
// with M_i = A^i pi_0 (i < t0) and C_{lambda,i} = lambda^-i (A - lambda I)^i pi_lambda.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pcf/errors.hpp"
#include "pcf/matrix.hpp"
#include "pcf/numeric.hpp"
#include "pcf/polymat.hpp"
#include "pcf/seqalg.hpp"
#include "pcf/spectra.hpp"

namespace pcf {

template <Field T>
struct DeltaTerm {
  std::size_t i = 0;
  Matrix<T> coeff;
};

template <Field T>
struct GeoTerm {
  T ratio;
  std::size_t i = 0;
  Matrix<T> coeff;
};

/// A matrix-valued sequence written as Kronecker terms plus geometric-binomial
/// terms, one coefficient matrix per atom, in canonical order. Used both for
/// power sequences of a matrix and for derived sequences (Drazin powers,
/// Jordan-Chevalley parts).
template <Field T>
class PCanonicalForm {
 public:
  PCanonicalForm() = default;
  explicit PCanonicalForm(std::size_t order, const TolerancePolicy& pol = {}) : order_(order), pol_(pol) {}

  std::size_t order() const noexcept { return order_; }
  const TolerancePolicy& policy() const noexcept { return pol_; }
  const std::vector<DeltaTerm<T>>& delta_terms() const noexcept { return delta_; }
  const std::vector<GeoTerm<T>>& geo_terms() const noexcept { return geo_; }

  void add_delta(std::size_t i, const Matrix<T>& m) {
    m.require_same_order(Matrix<T>(order_));
    auto it = std::lower_bound(delta_.begin(), delta_.end(), i, [](const DeltaTerm<T>& d, std::size_t x) { return d.i < x; });
    if (it != delta_.end() && it->i == i) {
      it->coeff += m;
      if (negligible(it->coeff)) delta_.erase(it);
    } else if (!negligible(m)) {
      delta_.insert(it, {i, m});
    }
  }

  void add_geo(const T& ratio, std::size_t i, const Matrix<T>& m) {
    m.require_same_order(Matrix<T>(order_));
    auto less = [&](const GeoTerm<T>& g, const std::pair<const T*, std::size_t>& key) {
      int c = FieldTraits<T>::compare(g.ratio, *key.first, pol_);
      return c < 0 || (c == 0 && g.i < key.second);
    };
    auto key = std::make_pair(&ratio, i);
    auto it = std::lower_bound(geo_.begin(), geo_.end(), key, less);
    if (it != geo_.end() && FieldTraits<T>::compare(it->ratio, ratio, pol_) == 0 && it->i == i) {
      it->coeff += m;
      if (negligible(it->coeff)) geo_.erase(it);
    } else if (!negligible(m)) {
      geo_.insert(it, {ratio, i, m});
    }
  }

  /// Value at k. Negative k is only meaningful without Kronecker terms.
  Matrix<T> eval(long long k) const {
    if (k < 0 && !delta_.empty()) throw NegativeEvalOnDelta();
    Matrix<T> out = eval_geometric(k);
    for (const auto& d : delta_)
      if (static_cast<long long>(d.i) == k) out += d.coeff;
    return out;
  }

  /// Geometric part alone, at any integer k.
  Matrix<T> eval_geometric(long long k) const {
    Matrix<T> out(order_);
    for (const auto& g : geo_) {
      const T scale = pow_int(g.ratio, k) * FieldTraits<T>::from_rational(Rational(binomial(k, g.i)));
      if (scale == field_zero<T>()) continue;
      out += g.coeff * scale;
    }
    return out;
  }

  PCanonicalForm geometric_part() const {
    PCanonicalForm f = *this;
    f.delta_.clear();
    return f;
  }

  PCanonicalForm non_geometric_part() const {
    PCanonicalForm f = *this;
    f.geo_.clear();
    return f;
  }

  /// Entry (r, c) as a scalar sequence expression, row-major.
  std::vector<SeqExpr<T>> entrywise() const {
    std::vector<SeqExpr<T>> out(order_ * order_, SeqExpr<T>(pol_));
    for (std::size_t r = 0; r < order_; ++r)
      for (std::size_t c = 0; c < order_; ++c) {
        auto& e = out[r * order_ + c];
        for (const auto& d : delta_) e.add(SeqTerm<T>::delta(d.i), d.coeff(r, c));
        for (const auto& g : geo_) e.add(SeqTerm<T>::geo_binom(g.ratio, g.i), g.coeff(r, c));
      }
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "non-geometric part:";
    if (delta_.empty()) os << " 0";
    os << '\n';
    for (const auto& d : delta_) os << "  " << format_atom(SeqTerm<T>::delta(d.i)) << " * " << d.coeff << '\n';
    os << "geometric part:";
    if (geo_.empty()) os << " 0";
    os << '\n';
    for (const auto& g : geo_)
      os << "  " << format_atom(SeqTerm<T>::geo_binom(g.ratio, g.i)) << " * " << g.coeff << '\n';
    return os.str();
  }

 private:
  bool negligible(const Matrix<T>& m) const {
    if constexpr (FieldTraits<T>::exact)
      return std::all_of(m.entries().begin(), m.entries().end(), [](const T& x) { return x.is_zero(); });
    else
      return is_zero_matrix(m, pol_);
  }

  std::size_t order_ = 0;
  TolerancePolicy pol_;
  std::vector<DeltaTerm<T>> delta_;
  std::vector<GeoTerm<T>> geo_;
};

/// Assembles the canonical form from a spectral decomposition of `a`.
template <Field T>
PCanonicalForm<T> build_pcf(const SpectralDecomposition<T>& d, const Matrix<T>& a, const TolerancePolicy& pol = {}) {
  const std::size_t q = a.order();
  PCanonicalForm<T> f(q, pol);
  Matrix<T> ai_pi0 = d.zero_projection;
  for (std::size_t i = 0; i < d.zero_index; ++i) {
    f.add_delta(i, ai_pi0);
    ai_pi0 = mat_mul(a, ai_pi0);
  }
  const Matrix<T> id = Matrix<T>::identity(q);
  for (const auto& b : d.eigen) {
    const Matrix<T> shifted = (a - id * b.value) * b.value.inverse();
    Matrix<T> coeff = b.projection;
    for (std::size_t i = 0; i < b.multiplicity; ++i) {
      f.add_geo(b.value, i, coeff);
      coeff = mat_mul(shifted, coeff);
    }
  }
  if constexpr (FieldTraits<T>::exact) {
    // Every coefficient up to t-1 is nonzero by minimality of the exponents.
    std::size_t expected = d.zero_index;
    for (const auto& b : d.eigen) expected += b.multiplicity;
    if (f.delta_terms().size() + f.geo_terms().size() != expected)
      throw InvariantViolation("canonical form lost a nonzero coefficient");
  }
  return f;
}

/// Canonical form of (A^k). Throws NonSplitField if the minimal polynomial
/// does not split in the field.
template <Field T>
PCanonicalForm<T> build_pcf(const Matrix<T>& a, const TolerancePolicy& pol = {}) {
  return build_pcf(spectral_decompose(a, pol), a, pol);
}

template <Field T>
Matrix<T> eval_power(const PCanonicalForm<T>& f, unsigned long long k) {
  return f.eval(static_cast<long long>(k));
}

/// A is invertible iff its geometric part at k = 0 is the identity.
template <Field T>
bool is_nonsingular(const PCanonicalForm<T>& f) {
  return approx_equal(f.eval_geometric(0), Matrix<T>::identity(f.order()), f.policy());
}

/// X^t0 prod (X - lambda_j)^t_j read off the largest atom indices present.
template <Field T>
Polynomial<T> minpoly_from_pcf(const PCanonicalForm<T>& f) {
  std::size_t t0 = 0;
  for (const auto& d : f.delta_terms()) t0 = std::max(t0, d.i + 1);
  Polynomial<T> m = Polynomial<T>::monomial(t0);
  const auto& geo = f.geo_terms();
  for (std::size_t x = 0; x < geo.size();) {
    std::size_t y = x;
    std::size_t top = 0;
    while (y < geo.size() && FieldTraits<T>::compare(geo[y].ratio, geo[x].ratio, f.policy()) == 0) {
      top = std::max(top, geo[y].i);
      ++y;
    }
    m = m * Polynomial<T>::linear(geo[x].ratio).pow(top + 1);
    x = y;
  }
  return m;
}

template <Field T>
bool is_diagonalizable(const PCanonicalForm<T>& f) {
  for (const auto& g : f.geo_terms())
    if (g.i != 0) return false;
  for (const auto& d : f.delta_terms())
    if (d.i != 0) return false;
  return true;
}

template <Field T>
struct TailRecovery {
  std::size_t index = 0;
  PCanonicalForm<T> form;
};

/// Given a purely geometric sequence that agrees with A^k for all k >= tail,
/// returns the index (the smallest t from which A^k agrees with it) and the
/// full canonical form with Kronecker terms (A^i - geo(i)) for i < t.
/// Agreement is validated for k = tail ... tail + q; failure throws TailMismatch.
template <Field T>
TailRecovery<T> index_from_tail(const Matrix<T>& a, const PCanonicalForm<T>& geo, std::size_t tail,
                                const TolerancePolicy& pol = {}) {
  if (!geo.delta_terms().empty()) throw std::invalid_argument("index_from_tail expects a purely geometric sequence");
  a.require_same_order(Matrix<T>(geo.order()));
  const std::size_t q = a.order();

  std::vector<Matrix<T>> powers;
  powers.push_back(Matrix<T>::identity(q));
  for (std::size_t k = 1; k <= tail + q; ++k) powers.push_back(mat_mul(powers.back(), a));

  for (std::size_t k = tail; k <= tail + q; ++k)
    if (!approx_equal(powers[k], geo.eval_geometric(static_cast<long long>(k)), pol))
      throw TailMismatch("A^" + std::to_string(k) + " differs from the supplied geometric sequence");

  std::size_t t = tail;
  while (t > 0 && approx_equal(powers[t - 1], geo.eval_geometric(static_cast<long long>(t - 1)), pol)) --t;

  TailRecovery<T> out{t, geo};
  for (std::size_t i = 0; i < t; ++i) out.form.add_delta(i, powers[i] - geo.eval_geometric(static_cast<long long>(i)));
  return out;
}

/// Jordan-Chevalley split of the power sequence: {nilpotent, diagonalizable}.
///   nilpotent      = sum_{i>=1} 0_i A^i pi_0 + sum_{i>=1} C_{lambda,i} lambda^k C(k,i)
///   diagonalizable = 0_0 pi_0 + sum_lambda C_{lambda,0} lambda^k
template <Field T>
std::pair<PCanonicalForm<T>, PCanonicalForm<T>> jordan_chevalley_seq(const PCanonicalForm<T>& f) {
  PCanonicalForm<T> nil(f.order(), f.policy());
  PCanonicalForm<T> diag(f.order(), f.policy());
  for (const auto& d : f.delta_terms()) (d.i == 0 ? diag : nil).add_delta(d.i, d.coeff);
  for (const auto& g : f.geo_terms()) (g.i == 0 ? diag : nil).add_geo(g.ratio, g.i, g.coeff);
  return {nil, diag};
}

/// Entrywise closed form with real coefficients and trigonometric atoms.
struct RealClosedForm {
  std::size_t order = 0;
  std::vector<SeqExpr<ApproxComplex>> entries;  // row-major

  Matrix<ApproxComplex> eval(long long k) const;
  RealClosedForm in_power_basis() const;
  bool has_trigonometric_atoms() const;
  std::string to_string() const;
};

/// Realifies every entry of a canonical form computed for a real matrix.
/// Throws std::invalid_argument if `a` has a non-real entry and
/// ConjugacyViolation if the form does not pair up under conjugation.
RealClosedForm real_form(const PCanonicalForm<ApproxComplex>& f, const Matrix<ApproxComplex>& a);

}  // namespace pcf
