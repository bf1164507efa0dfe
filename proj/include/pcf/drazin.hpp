#pragma once

// Drazin inverse from the canonical form of (A^k): replace k by -k in the
// geometric part, then add 0_0 pi_0.

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "pcf/errors.hpp"
#include "pcf/matrix.hpp"
#include "pcf/pcf.hpp"
#include "pcf/seqalg.hpp"
#include "pcf/spectra.hpp"

namespace pcf {

/// Maps each geometric term C lambda^k C(k,i) to C lambda^-k C(-k,i), written
/// back in the canonical basis, drops Kronecker terms and adds 0_0 pi_0.
template <Field T>
PCanonicalForm<T> theta0(const PCanonicalForm<T>& f, const Matrix<T>& pi0) {
  PCanonicalForm<T> out(f.order(), f.policy());
  for (const auto& g : f.geo_terms()) {
    const T inv = g.ratio.inverse();
    const auto chi = chi_expand(g.i);
    for (std::size_t l = 0; l < chi.size(); ++l) {
      if (chi[l] == 0) continue;
      out.add_geo(inv, l, g.coeff * FieldTraits<T>::from_rational(Rational(chi[l])));
    }
  }
  out.add_delta(0, pi0);
  return out;
}

template <Field T>
struct DrazinResult {
  Matrix<T> inverse;
  PCanonicalForm<T> power_form;  // canonical form of (A_d^k)
  std::size_t index = 0;
  Matrix<T> zero_projection;
};

namespace detail {

// sum_j pi_j sum_{i<t_j} (-1)^i lambda_j^{-i-1} (A - lambda_j I)^i
template <Field T>
Matrix<T> reciprocal_function(const SpectralDecomposition<T>& d, const Matrix<T>& a) {
  const std::size_t q = a.order();
  const Matrix<T> id = Matrix<T>::identity(q);
  Matrix<T> out(q);
  for (const auto& b : d.eigen) {
    const T inv = b.value.inverse();
    const Matrix<T> shifted = a - id * b.value;
    Matrix<T> term = b.projection;  // (A - lambda I)^i pi
    T scale = inv;                  // (-1)^i lambda^{-i-1}
    for (std::size_t i = 0; i < b.multiplicity; ++i) {
      out += term * scale;
      term = mat_mul(shifted, term);
      scale = field_zero<T>() - scale * inv;
    }
  }
  return out;
}

}  // namespace detail

/// Computes A_d through theta0 and, independently, through the reciprocal
/// function of A on its spectrum. Throws InvariantViolation if they disagree.
template <Field T>
DrazinResult<T> drazin_inverse(const Matrix<T>& a, const TolerancePolicy& pol = {}) {
  const SpectralDecomposition<T> d = spectral_decompose(a, pol);
  const PCanonicalForm<T> f = build_pcf(d, a, pol);
  DrazinResult<T> res{Matrix<T>(a.order()), theta0(f, d.zero_projection), d.zero_index, d.zero_projection};
  res.inverse = res.power_form.eval(1);

  const Matrix<T> direct = detail::reciprocal_function(d, a);
  const double scale = std::max(1.0, res.inverse.norm());
  if (!within(res.inverse, direct, detail::tolerance_for(a, pol, 1.0) * scale))
    throw InvariantViolation("Drazin inverse: canonical-form route and reciprocal-function route disagree");
  return res;
}

template <Field T>
Matrix<T> drazin_power(const DrazinResult<T>& res, unsigned long long k) {
  return res.power_form.eval(static_cast<long long>(k));
}

struct AxiomCheck {
  bool power_axiom = false;  // A^{t0+1} X = A^{t0}
  bool reflexive = false;    // X A X = X
  bool commute = false;      // A X = X A
  bool ok() const noexcept { return power_axiom && reflexive && commute; }
};

/// Checks the three Drazin axioms for a candidate X. The approx backend uses
/// 1e3 * abs_eps * max(1, |A|)^{t0+1}, widened by |X| where X enters a product.
template <Field T>
AxiomCheck verify_135(const Matrix<T>& a, const Matrix<T>& x, std::size_t t0, const TolerancePolicy& pol = {}) {
  a.require_same_order(x);
  const double base = detail::tolerance_for(a, pol, static_cast<double>(t0 + 1));
  const double xs = std::max(1.0, x.norm());
  const Matrix<T> at0 = naive_power(a, t0);
  AxiomCheck c;
  c.power_axiom = within(mat_mul(mat_mul(at0, a), x), at0, base * xs);
  c.reflexive = within(mat_mul(mat_mul(x, a), x), x, base * xs * xs);
  c.commute = within(mat_mul(a, x), mat_mul(x, a), base * xs);
  return c;
}

}  // namespace pcf
