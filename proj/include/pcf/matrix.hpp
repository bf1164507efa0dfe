#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcf/numeric.hpp"

namespace pcf {

template <Field T>
class Matrix;

template <Field T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b);

/// Dense square matrix stored row-major.
template <Field T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t order) : order_(order), data_(order * order, field_zero<T>()) {}
  Matrix(std::size_t order, std::vector<T> entries) : order_(order), data_(std::move(entries)) {
    if (data_.size() != order_ * order_) throw std::invalid_argument("matrix entry count does not match order");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) : order_(rows.size()) {
    data_.reserve(order_ * order_);
    for (const auto& row : rows) {
      if (row.size() != order_) throw std::invalid_argument("matrix rows must form a square");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t order) {
    Matrix m(order);
    for (std::size_t i = 0; i < order; ++i) m(i, i) = field_one<T>();
    return m;
  }
  static Matrix zero(std::size_t order) { return Matrix(order); }

  std::size_t order() const noexcept { return order_; }
  const std::vector<T>& entries() const noexcept { return data_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * order_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * order_ + c]; }

  Matrix& operator+=(const Matrix& o) {
    require_same_order(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_order(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  Matrix operator-() const {
    Matrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }

  // Structural equality: exact for rationals, bitwise for doubles.
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.order_ == b.order_ && a.data_ == b.data_; }

  T trace() const {
    T t = field_zero<T>();
    for (std::size_t i = 0; i < order_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Induced infinity norm (max absolute row sum).
  double norm() const {
    double best = 0.0;
    for (std::size_t r = 0; r < order_; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < order_; ++c) s += FieldTraits<T>::magnitude((*this)(r, c));
      best = std::max(best, s);
    }
    return best;
  }

  double max_abs() const {
    double best = 0.0;
    for (const auto& x : data_) best = std::max(best, FieldTraits<T>::magnitude(x));
    return best;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < order_; ++r) {
      os << (r ? ", [" : "[");
      for (std::size_t c = 0; c < order_; ++c) os << (c ? ", " : "") << FieldTraits<T>::to_string((*this)(r, c));
      os << ']';
    }
    os << ']';
    return os.str();
  }

  void require_same_order(const Matrix& o) const {
    if (o.order_ != order_) throw std::invalid_argument("matrix order mismatch");
  }

 private:
  std::size_t order_ = 0;
  std::vector<T> data_;
};

template <Field T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  a.require_same_order(b);
  const std::size_t q = a.order();
  Matrix<T> out(q);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t l = 0; l < q; ++l) {
      const T& ail = a(i, l);
      if (ail == field_zero<T>()) continue;
      for (std::size_t j = 0; j < q; ++j) out(i, j) += ail * b(l, j);
    }
  }
  return out;
}

/// A^k by repeated squaring; A^0 = I.
template <Field T>
Matrix<T> naive_power(const Matrix<T>& a, unsigned long long k) {
  Matrix<T> result = Matrix<T>::identity(a.order());
  Matrix<T> base = a;
  while (k > 0) {
    if (k & 1ULL) result = mat_mul(result, base);
    k >>= 1;
    if (k > 0) base = mat_mul(base, base);
  }
  return result;
}

/// Entrywise comparison under the policy. Entries are compared against the
/// larger of the two matrices' max-abs so that cancellation noise in small
/// entries of a large matrix is not mistaken for a difference.
template <Field T>
bool approx_equal(const Matrix<T>& a, const Matrix<T>& b, const TolerancePolicy& pol) {
  if (a.order() != b.order()) return false;
  if constexpr (FieldTraits<T>::exact) {
    return a == b;
  } else {
    const double scale = std::max(a.max_abs(), b.max_abs());
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
      double d = FieldTraits<T>::magnitude(a.entries()[i] - b.entries()[i]);
      if (!pol.close(d, scale, scale)) return false;
    }
    return true;
  }
}

/// Max-abs entry difference is at most `tol` (approx) or zero (exact).
template <Field T>
bool within(const Matrix<T>& a, const Matrix<T>& b, double tol) {
  if (a.order() != b.order()) return false;
  if constexpr (FieldTraits<T>::exact) {
    return a == b;
  } else {
    return (a - b).max_abs() <= tol;
  }
}

template <Field T>
bool is_zero_matrix(const Matrix<T>& a, const TolerancePolicy& pol, double scale = 1.0) {
  for (const auto& x : a.entries())
    if (!FieldTraits<T>::is_zero_scaled(x, scale, pol)) return false;
  return true;
}

/// Rank by Gaussian elimination with partial pivoting; entries below
/// abs_eps * max(1, scale) count as zero in the approx backend.
template <Field T>
std::size_t rank(Matrix<T> m, const TolerancePolicy& pol = {}) {
  const std::size_t q = m.order();
  const double scale = std::max(1.0, m.max_abs());
  std::size_t r = 0;
  for (std::size_t c = 0; c < q && r < q; ++c) {
    std::size_t piv = r;
    double best = -1.0;
    for (std::size_t i = r; i < q; ++i) {
      double mag = FieldTraits<T>::magnitude(m(i, c));
      if constexpr (FieldTraits<T>::exact) {
        if (!m(i, c).is_zero()) {
          piv = i;
          best = mag;
          break;
        }
      } else if (mag > best) {
        best = mag;
        piv = i;
      }
    }
    if constexpr (FieldTraits<T>::exact) {
      if (best < 0.0) continue;
    } else {
      if (FieldTraits<T>::is_zero_scaled(m(piv, c), scale, pol)) continue;
    }
    for (std::size_t j = 0; j < q; ++j) std::swap(m(r, j), m(piv, j));
    const T inv = m(r, c).inverse();
    for (std::size_t i = r + 1; i < q; ++i) {
      if (m(i, c) == field_zero<T>()) continue;
      const T f = m(i, c) * inv;
      for (std::size_t j = c; j < q; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

/// Inverse by Gauss-Jordan elimination. Throws DivisionByZero when singular.
template <Field T>
Matrix<T> inverse(const Matrix<T>& a, const TolerancePolicy& pol = {}) {
  const std::size_t q = a.order();
  Matrix<T> m = a;
  Matrix<T> inv = Matrix<T>::identity(q);
  const double scale = std::max(1.0, a.max_abs());
  for (std::size_t c = 0; c < q; ++c) {
    std::size_t piv = q;
    double best = -1.0;
    for (std::size_t i = c; i < q; ++i) {
      if (m(i, c) == field_zero<T>()) continue;
      double mag = FieldTraits<T>::magnitude(m(i, c));
      if (mag > best) {
        best = mag;
        piv = i;
      }
      if constexpr (FieldTraits<T>::exact) break;
    }
    if (piv == q || FieldTraits<T>::is_zero_scaled(m(piv, c), scale, pol)) throw DivisionByZero();
    for (std::size_t j = 0; j < q; ++j) {
      std::swap(m(c, j), m(piv, j));
      std::swap(inv(c, j), inv(piv, j));
    }
    const T p = m(c, c).inverse();
    for (std::size_t j = 0; j < q; ++j) {
      m(c, j) *= p;
      inv(c, j) *= p;
    }
    for (std::size_t i = 0; i < q; ++i) {
      if (i == c || m(i, c) == field_zero<T>()) continue;
      const T f = m(i, c);
      for (std::size_t j = 0; j < q; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

template <Field T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  return os << m.to_string();
}

}  // namespace pcf
