#pragma once

// Index and spectral projections of a matrix whose minimal polynomial splits.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "pcf/errors.hpp"
#include "pcf/matrix.hpp"
#include "pcf/polymat.hpp"
#include "pcf/polynomial.hpp"

namespace pcf {

/// One nonzero eigenvalue with its multiplicity in the minimal polynomial and
/// its spectral projection.
template <Field T>
struct EigenBlock {
  T value;
  std::size_t multiplicity = 0;
  Matrix<T> projection;
};

template <Field T>
struct SpectralDecomposition {
  std::size_t order = 0;
  std::size_t zero_index = 0;  // multiplicity of 0 in the minimal polynomial
  Matrix<T> zero_projection;   // zero matrix when zero_index == 0
  std::vector<EigenBlock<T>> eigen;

  /// X^t0 * prod (X - lambda_j)^t_j
  Polynomial<T> minimal_polynomial() const {
    Polynomial<T> m = Polynomial<T>::monomial(zero_index);
    for (const auto& b : eigen) m = m * Polynomial<T>::linear(b.value).pow(b.multiplicity);
    return m;
  }
};

namespace detail {

// Idempotent e(X) with e = 1 mod (X - mu)^t and e = 0 mod rest, where rest is
// the complementary factor of the minimal polynomial. Writing e = rest * u,
// u is the degree t-1 Taylor truncation of 1/rest around mu.
template <Field T>
Polynomial<T> spectral_idempotent(const Polynomial<T>& rest, const T& mu, std::size_t t) {
  const Polynomial<T> taylor = rest.shifted(mu);
  const T inv0 = taylor.coeff(0).inverse();
  std::vector<T> u(t, field_zero<T>());
  for (std::size_t n = 0; n < t; ++n) {
    T acc = (n == 0) ? field_one<T>() : field_zero<T>();
    for (std::size_t k = 1; k <= n; ++k) acc -= taylor.coeff(k) * u[n - k];
    u[n] = acc * inv0;
  }
  // u is expressed in powers of (X - mu); shift back to powers of X.
  const Polynomial<T> u_x = Polynomial<T>(u).shifted(-mu);
  return rest * u_x;
}

template <Field T>
double tolerance_for(const Matrix<T>& a, const TolerancePolicy& pol, double power) {
  return 1e3 * pol.abs_eps * std::pow(std::max(1.0, a.norm()), power);
}

inline void require_invariant(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation("spectral decomposition: " + what);
}

}  // namespace detail

/// Validates every defining identity of a decomposition of `a`. Exact backend
/// requires equality; approx backend allows 1e3 * abs_eps scaled by the norm
/// of the products involved. Throws InvariantViolation on failure.
template <Field T>
void validate_decomposition(const SpectralDecomposition<T>& d, const Matrix<T>& a, const TolerancePolicy& pol) {
  const std::size_t q = a.order();
  const Matrix<T> id = Matrix<T>::identity(q);
  std::vector<const Matrix<T>*> projs;
  if (d.zero_index > 0) projs.push_back(&d.zero_projection);
  for (const auto& b : d.eigen) projs.push_back(&b.projection);

  double pmax = 1.0;
  for (const auto* p : projs) pmax = std::max(pmax, p->norm());
  const double tol = detail::tolerance_for(a, pol, 1.0) * pmax * pmax;

  Matrix<T> sum(q);
  for (const auto* p : projs) sum += *p;
  detail::require_invariant(within(sum, id, tol), "projections do not resolve the identity");
  for (std::size_t x = 0; x < projs.size(); ++x) {
    detail::require_invariant(within(mat_mul(*projs[x], *projs[x]), *projs[x], tol), "projection not idempotent");
    detail::require_invariant(within(mat_mul(a, *projs[x]), mat_mul(*projs[x], a), tol),
                                 "projection does not commute with A");
    for (std::size_t y = x + 1; y < projs.size(); ++y)
      detail::require_invariant(within(mat_mul(*projs[x], *projs[y]), Matrix<T>(q), tol),
                                   "projections not mutually orthogonal");
  }
  if (d.zero_index > 0) {
    const double ztol = detail::tolerance_for(a, pol, static_cast<double>(d.zero_index)) * pmax;
    detail::require_invariant(within(mat_mul(naive_power(a, d.zero_index), d.zero_projection), Matrix<T>(q), ztol),
                                 "A^t0 pi_0 is not zero");
  } else {
    detail::require_invariant(within(d.zero_projection, Matrix<T>(q), tol), "pi_0 must vanish when t0 = 0");
  }
  for (const auto& b : d.eigen) {
    const Matrix<T> shifted = a - id * b.value;
    const double etol = detail::tolerance_for(shifted, pol, static_cast<double>(b.multiplicity)) * pmax;
    detail::require_invariant(
        within(mat_mul(naive_power(shifted, b.multiplicity), b.projection), Matrix<T>(q), etol),
        "(A - lambda I)^t pi is not zero");
  }
}

/// Spectral projections through partial-fraction idempotents of the minimal
/// polynomial. Throws NonSplitField if the minimal polynomial has no full
/// factorization in the field.
template <Field T>
SpectralDecomposition<T> spectral_decompose(const Matrix<T>& a, const TolerancePolicy& pol = {}) {
  const std::size_t q = a.order();
  const Polynomial<T> minpoly = minimal_poly(a, pol);
  const RootMultiset<T> roots = poly_roots(minpoly, pol);

  SpectralDecomposition<T> d;
  d.order = q;
  d.zero_projection = Matrix<T>(q);

  // Factors (X - mu)^t for every root, built once.
  std::vector<Polynomial<T>> factors;
  for (const auto& r : roots) factors.push_back(Polynomial<T>::linear(r.value).pow(r.multiplicity));

  for (std::size_t j = 0; j < roots.size(); ++j) {
    Polynomial<T> rest = Polynomial<T>::constant(field_one<T>());
    for (std::size_t l = 0; l < roots.size(); ++l)
      if (l != j) rest = rest * factors[l];
    const Polynomial<T> e = detail::spectral_idempotent(rest, roots[j].value, roots[j].multiplicity);
    Matrix<T> proj = e(a);
    if (FieldTraits<T>::is_zero(roots[j].value, pol)) {
      d.zero_index = roots[j].multiplicity;
      d.zero_projection = std::move(proj);
    } else {
      d.eigen.push_back({roots[j].value, roots[j].multiplicity, std::move(proj)});
    }
  }
  validate_decomposition(d, a, pol);
  return d;
}

/// Index of A: the multiplicity of 0 as a root of the minimal polynomial.
template <Field T>
std::size_t index(const Matrix<T>& a, const TolerancePolicy& pol = {}) {
  const Polynomial<T> m = minimal_poly(a, pol);
  if constexpr (FieldTraits<T>::exact) {
    std::size_t t = 0;
    while (m.coeff(t).is_zero()) ++t;
    return t;
  } else {
    for (const auto& r : poly_roots(m, pol))
      if (FieldTraits<T>::is_zero(r.value, pol)) return r.multiplicity;
    return 0;
  }
}

}  // namespace pcf
