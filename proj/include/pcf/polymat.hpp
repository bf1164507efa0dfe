#pragma once

// Characteristic and minimal polynomials of dense matrices, and root
// extraction with multiplicities.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "pcf/matrix.hpp"
#include "pcf/numeric.hpp"
#include "pcf/polynomial.hpp"

namespace pcf {

template <Field T>
struct Root {
  T value;
  std::size_t multiplicity = 1;
};

/// Distinct roots with multiplicities.
template <Field T>
using RootMultiset = std::vector<Root<T>>;

RootMultiset<Rational> poly_roots(const Polynomial<Rational>& p, const TolerancePolicy& pol = {});
RootMultiset<ApproxComplex> poly_roots(const Polynomial<ApproxComplex>& p, const TolerancePolicy& pol = {});

/// "X^2*(X - 2)*(X + 2)" style rendering of a monic split polynomial.
template <Field T>
std::string factored_string(const RootMultiset<T>& roots) {
  if (roots.empty()) return "1";
  std::string out;
  for (const auto& r : roots) {
    if (!out.empty()) out += '*';
    std::string factor;
    if (FieldTraits<T>::is_zero(r.value, TolerancePolicy(0.0, 0.0))) {
      factor = "X";
    } else {
      std::string s = FieldTraits<T>::to_string(r.value);
      if (s[0] == '-')
        factor = "(X + " + s.substr(1) + ")";
      else
        factor = "(X - " + s + ")";
    }
    out += factor;
    if (r.multiplicity > 1) out += "^" + std::to_string(r.multiplicity);
  }
  return out;
}

namespace detail {

// Faddeev-LeVerrier. All divisions are by integers, so the recurrence stays
// exact over the rationals.
template <Field T>
Polynomial<T> faddeev_leverrier(const Matrix<T>& a) {
  const std::size_t n = a.order();
  std::vector<T> c(n + 1, field_zero<T>());
  c[n] = field_one<T>();
  Matrix<T> m(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = mat_mul(a, m);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    c[n - k] = -(mat_mul(a, m).trace()) / T(static_cast<long>(k));
  }
  return Polynomial<T>(std::move(c));
}

// Reduce to upper Hessenberg form by stabilized elementary similarity
// transforms, then run La Budde's recurrence on the Hessenberg matrix.
template <Field T>
Polynomial<T> hessenberg_charpoly(Matrix<T> h) {
  const std::size_t n = h.order();
  for (std::size_t c = 0; c + 2 < n; ++c) {
    std::size_t piv = c + 1;
    double best = FieldTraits<T>::magnitude(h(piv, c));
    for (std::size_t i = c + 2; i < n; ++i) {
      double mag = FieldTraits<T>::magnitude(h(i, c));
      if (mag > best) {
        best = mag;
        piv = i;
      }
    }
    if (best == 0.0) continue;
    if (piv != c + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(c + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, c + 1));
    }
    const T inv = h(c + 1, c).inverse();
    for (std::size_t i = c + 2; i < n; ++i) {
      const T f = h(i, c) * inv;
      if (f == field_zero<T>()) continue;
      for (std::size_t j = 0; j < n; ++j) h(i, j) -= f * h(c + 1, j);
      for (std::size_t r = 0; r < n; ++r) h(r, c + 1) += f * h(r, i);
      h(i, c) = field_zero<T>();
    }
  }
  // p[i] is the characteristic polynomial of the leading i x i block.
  std::vector<Polynomial<T>> p;
  p.reserve(n + 1);
  p.push_back(Polynomial<T>::constant(field_one<T>()));
  for (std::size_t i = 1; i <= n; ++i) {
    Polynomial<T> next = Polynomial<T>::linear(h(i - 1, i - 1)) * p[i - 1];
    T sub = field_one<T>();
    for (std::size_t m = 1; m < i; ++m) {
      sub *= h(i - m, i - m - 1);
      next -= p[i - m - 1] * (h(i - m - 1, i - 1) * sub);
    }
    p.push_back(std::move(next));
  }
  return p.back();
}

}  // namespace detail

/// det(X I - A), monic of degree q.
template <Field T>
Polynomial<T> char_poly(const Matrix<T>& a) {
  if constexpr (FieldTraits<T>::exact)
    return detail::faddeev_leverrier(a);
  else
    return detail::hessenberg_charpoly(a);
}

template <Field T>
struct MinimalPolynomial {
  Polynomial<T> poly;
  // Set when some independence decision landed within a factor 10 of the
  // tolerance (approx backend only).
  bool near_tolerance = false;
};

/// Minimal polynomial from the first linear dependence among vec(I), vec(A),
/// vec(A^2), ... Exact backend eliminates over the rationals; approx backend
/// orthogonalizes (twice) and declares dependence when the residual norm is
/// within the policy tolerance of the vector norm.
template <Field T>
MinimalPolynomial<T> minimal_poly_checked(const Matrix<T>& a, const TolerancePolicy& pol = {}) {
  const std::size_t q = a.order();
  const std::size_t len = q * q;
  MinimalPolynomial<T> out;

  // Each basis vector is stored with its expression in powers of A.
  std::vector<std::vector<T>> basis;
  std::vector<std::vector<T>> combos;
  std::vector<std::size_t> pivots;  // exact backend: pivot column of each basis row

  Matrix<T> power = Matrix<T>::identity(q);
  for (std::size_t d = 0; d <= q; ++d) {
    std::vector<T> v = power.entries();
    std::vector<T> combo(d + 1, field_zero<T>());
    combo[d] = field_one<T>();

    if constexpr (FieldTraits<T>::exact) {
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const T& x = v[pivots[b]];
        if (x.is_zero()) continue;
        const T f = x / basis[b][pivots[b]];
        for (std::size_t i = 0; i < len; ++i) v[i] -= f * basis[b][i];
        for (std::size_t i = 0; i < combos[b].size(); ++i) combo[i] -= f * combos[b][i];
      }
      std::size_t piv = len;
      for (std::size_t i = 0; i < len; ++i)
        if (!v[i].is_zero()) {
          piv = i;
          break;
        }
      if (piv == len) {
        // combo . (I, A, ..., A^d) = 0 and combo[d] = 1.
        out.poly = Polynomial<T>(std::move(combo));
        return out;
      }
      basis.push_back(std::move(v));
      combos.push_back(std::move(combo));
      pivots.push_back(piv);
    } else {
      double vnorm = 0.0;
      for (const auto& x : v) vnorm += std::norm(x.value());
      vnorm = std::sqrt(vnorm);
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t b = 0; b < basis.size(); ++b) {
          T dot = field_zero<T>();
          for (std::size_t i = 0; i < len; ++i) dot += basis[b][i].conj() * v[i];
          for (std::size_t i = 0; i < len; ++i) v[i] -= dot * basis[b][i];
          for (std::size_t i = 0; i < combos[b].size(); ++i) combo[i] -= dot * combos[b][i];
        }
      }
      double rnorm = 0.0;
      for (const auto& x : v) rnorm += std::norm(x.value());
      rnorm = std::sqrt(rnorm);
      const double tol = pol.abs_eps + pol.rel_eps * vnorm;
      if (rnorm > tol / 10.0 && rnorm < tol * 10.0) out.near_tolerance = true;
      if (rnorm <= tol) {
        out.poly = Polynomial<T>(std::move(combo));
        return out;
      }
      const T inv = T(1.0 / rnorm);
      for (auto& x : v) x *= inv;
      for (auto& x : combo) x *= inv;
      basis.push_back(std::move(v));
      combos.push_back(std::move(combo));
    }
    power = mat_mul(power, a);
  }
  // Cayley-Hamilton guarantees dependence by degree q; only reachable when
  // rounding pushed every residual above the tolerance.
  out.poly = char_poly(a);
  out.near_tolerance = true;
  return out;
}

template <Field T>
Polynomial<T> minimal_poly(const Matrix<T>& a, const TolerancePolicy& pol = {}) {
  return minimal_poly_checked(a, pol).poly;
}

}  // namespace pcf
