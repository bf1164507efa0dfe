#pragma once

// Shared test fixtures and independent oracles. Nothing here calls the
// library's spectral or canonical-form code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pcf/matrix.hpp"
#include "pcf/numeric.hpp"
#include "pcf/polynomial.hpp"

namespace pcf::testing {

using QMat = Matrix<Rational>;
using CMat = Matrix<ApproxComplex>;

inline Rational R(long n, long d = 1) { return Rational(mpz_class(n), mpz_class(d)); }

inline CMat to_complex(const QMat& m) {
  std::vector<ApproxComplex> v;
  for (const auto& x : m.entries()) v.emplace_back(x.to_double(), 0.0);
  return CMat(m.order(), std::move(v));
}

inline double max_diff(const CMat& a, const CMat& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) d = std::max(d, (a.entries()[i] - b.entries()[i]).abs());
  return d;
}

// ---- matrices printed in the worked examples ----

inline QMat example1() { return QMat{{1, 1, 1, 0}, {1, 1, 1, -1}, {0, 0, -1, 1}, {0, 0, 1, -1}}; }

inline QMat example1_pi2() {
  return QMat{{R(1, 2), R(1, 2), R(5, 16), R(-1, 16)},
              {R(1, 2), R(1, 2), R(5, 16), R(-1, 16)},
              {0, 0, 0, 0},
              {0, 0, 0, 0}};
}

inline QMat example1_pim2() {
  return QMat{{0, 0, R(-1, 16), R(1, 16)},
              {0, 0, R(-5, 16), R(5, 16)},
              {0, 0, R(1, 2), R(-1, 2)},
              {0, 0, R(-1, 2), R(1, 2)}};
}

inline QMat example1_drazin() {
  return QMat{{R(1, 4), R(1, 4), R(3, 16), R(-1, 16)},
              {R(1, 4), R(1, 4), R(5, 16), R(-3, 16)},
              {0, 0, R(-1, 4), R(1, 4)},
              {0, 0, R(1, 4), R(-1, 4)}};
}

// The closed-form sequence A(k) of the first example, for any integer k.
inline QMat example1_seq(long long k) {
  const Rational two_k = pow_int(Rational(2), k);
  const Rational half = two_k / 2;
  const Rational s = (k % 2 == 0) ? Rational(1) : Rational(-1);  // (-1)^k
  const Rational n16 = two_k / 16;
  return QMat{{half, half, n16 * (-s + 5), n16 * (s - 1)},
              {half, half, n16 * 5 * (-s + 1), n16 * (s * 5 - 1)},
              {0, 0, s * half, -s * half},
              {0, 0, -s * half, s * half}};
}

inline QMat example2() { return QMat{{1, 1, 0, 0}, {-2, 0, 1, 0}, {2, 0, 0, 1}, {-2, -1, -1, -1}}; }

inline QMat example2_inverse() {
  return QMat{{-1, -1, -1, -1}, {2, 1, 1, 1}, {-2, -1, -2, -2}, {2, 2, 3, 2}};
}

// Trigonometric closed form B(k) of the second example.
inline CMat example2_seq(long long k) {
  const double c = std::cos(k * std::numbers::pi / 2), s = std::sin(k * std::numbers::pi / 2);
  const double x = static_cast<double>(k);
  std::vector<ApproxComplex> v = {
      c + s, (2 * s - x * c) / 2, ((1 - x) * s - x * c) / 2, (1 - x) * s / 2,
      -2 * s, ((x + 2) * c + (x - 1) * s) / 2, x * s, (-x * c + (x - 1) * s) / 2,
      2 * s, (-x * c + (1 - x) * s) / 2, (1 - x) * s + c, (x * c + (3 - x) * s) / 2,
      -2 * s, (x * c + (x - 3) * s) / 2, (x - 2) * s, ((2 - x) * c + (x - 3) * s) / 2};
  return CMat(4, std::move(v));
}

inline CMat example3(double x) {
  const double r3 = std::sqrt(3.0);
  std::vector<ApproxComplex> v = {2 * r3 - x - 10, 2 * r3 - 2 * x - 23, r3 - x - 5,
                                  4, r3 + 9, 2,
                                  -2 * r3 + 2 * x + 2, -4 * r3 + 4 * x + 5, -r3 + 2 * x + 1};
  return CMat(3, std::move(v));
}

inline double delta_s(double x, long long s) { return x == 0.0 ? 0.0 : std::pow(x, static_cast<double>(s)); }

// E(k) of the third example.
inline CMat example3_seq(double x, long long k) {
  const double c = std::cos(k * std::numbers::pi / 6), s = std::sin(k * std::numbers::pi / 6);
  const double p = std::pow(2.0, static_cast<double>(k));
  const double d = delta_s(x, k);
  std::vector<ApproxComplex> v = {2 * p * (c - 5 * s) - d, 2 * p * (c - 11.5 * s) - 2 * d, p * (c - 5 * s) - d,
                                  4 * p * s, p * (c + 9 * s), 2 * p * s,
                                  -2 * p * (c - s) + 2 * d, -4 * p * (c - 1.25 * s) + 4 * d, -p * (c - s) + 2 * d};
  return CMat(3, std::move(v));
}

// E_d of the third example.
inline CMat example3_drazin(double x) {
  const double r3 = std::sqrt(3.0);
  const double d = delta_s(x, -1);
  std::vector<ApproxComplex> v = {(r3 + 5) / 2 - d, (2 * r3 + 23) / 4 - 2 * d, (r3 + 5) / 4 - d,
                                  -1, (r3 - 9) / 4, -0.5,
                                  (-r3 - 1) / 2 + 2 * d, (-4 * r3 - 5) / 4 + 4 * d, (-r3 - 1) / 4 + 2 * d};
  return CMat(3, std::move(v));
}

inline QMat all_ones(std::size_t p) {
  QMat m(p);
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = 0; c < p; ++c) m(r, c) = 1;
  return m;
}

// B = (A - I) / (p - 1) for the all-ones A.
inline QMat circulant_b(std::size_t p) {
  return (all_ones(p) - QMat::identity(p)) * R(1, static_cast<long>(p) - 1);
}

// Companion matrix of X^2 - 2.
inline QMat sqrt2_companion() { return QMat{{0, 2}, {1, 0}}; }

// ---- oracles ----

// Determinant by cofactor expansion along the first row.
inline Rational cofactor_det(const QMat& m) {
  const std::size_t n = m.order();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Rational det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    QMat minor(n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t cc = 0, k = 0; cc < n; ++cc)
        if (cc != c) minor(r - 1, k++) = m(r, cc);
    const Rational term = m(0, c) * cofactor_det(minor);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

// Characteristic polynomial det(XI - A) by Lagrange interpolation of
// cofactor determinants at X = 0..q.
inline Polynomial<Rational> interpolated_charpoly(const QMat& a) {
  const std::size_t q = a.order();
  Polynomial<Rational> out;
  for (std::size_t j = 0; j <= q; ++j) {
    const Rational xj = static_cast<long>(j);
    const Rational yj = cofactor_det(QMat::identity(q) * xj - a);
    Polynomial<Rational> basis = Polynomial<Rational>::constant(1);
    Rational denom = 1;
    for (std::size_t m = 0; m <= q; ++m) {
      if (m == j) continue;
      basis = basis * Polynomial<Rational>::linear(Rational(static_cast<long>(m)));
      denom *= xj - Rational(static_cast<long>(m));
    }
    out += basis * (yj / denom);
  }
  return out;
}

// Row-reduced echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = rows[r][c].inverse();
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r || rows[o][c].is_zero()) continue;
      const Rational f = rows[o][c];
      for (std::size_t k = 0; k < rows[o].size(); ++k) rows[o][k] -= f * rows[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t oracle_rank(const QMat& m) {
  std::vector<std::vector<Rational>> rows(m.order(), std::vector<Rational>(m.order()));
  for (std::size_t r = 0; r < m.order(); ++r)
    for (std::size_t c = 0; c < m.order(); ++c) rows[r][c] = m(r, c);
  return rref(rows, m.order()).size();
}

// Smallest t with rank(A^t) = rank(A^{t+1}).
inline std::size_t rank_index(const QMat& a) {
  std::size_t t = 0;
  QMat p = QMat::identity(a.order());
  std::size_t rk = a.order();
  while (true) {
    const QMat next = mat_mul(p, a);
    const std::size_t nrk = oracle_rank(next);
    if (nrk == rk) return t;
    rk = nrk;
    p = next;
    ++t;
  }
}

// Solves m x = b column by column by Gauss-Jordan on [m | b].
inline QMat oracle_solve(const QMat& m, const QMat& b) {
  const std::size_t n = m.order();
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(2 * n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      rows[r][c] = m(r, c);
      rows[r][n + c] = b(r, c);
    }
  rref(rows, n);
  QMat x(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) x(r, c) = rows[r][n + c];
  return x;
}

// Drazin inverse through the core-nilpotent splitting F^q = R(A^q) + N(A^q):
// with P = [range basis | kernel basis], P^-1 A P = diag(C, N) and
// A_d = P diag(C^-1, 0) P^-1.
inline QMat core_nilpotent_drazin(const QMat& a) {
  const std::size_t q = a.order();
  const QMat aq = naive_power(a, q);

  std::vector<std::vector<Rational>> basis;
  {
    // Column space: pivot columns of A^q.
    std::vector<std::vector<Rational>> rows(q, std::vector<Rational>(q));
    for (std::size_t r = 0; r < q; ++r)
      for (std::size_t c = 0; c < q; ++c) rows[r][c] = aq(r, c);
    for (std::size_t c : rref(rows, q)) {
      std::vector<Rational> col(q);
      for (std::size_t r = 0; r < q; ++r) col[r] = aq(r, c);
      basis.push_back(col);
    }
  }
  const std::size_t rank = basis.size();
  {
    // Kernel from the reduced rows.
    std::vector<std::vector<Rational>> rows(q, std::vector<Rational>(q));
    for (std::size_t r = 0; r < q; ++r)
      for (std::size_t c = 0; c < q; ++c) rows[r][c] = aq(r, c);
    const auto pivots = rref(rows, q);
    std::vector<bool> is_pivot(q, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < q; ++f) {
      if (is_pivot[f]) continue;
      std::vector<Rational> v(q);
      v[f] = 1;
      for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -rows[k][f];
      basis.push_back(v);
    }
  }
  QMat p(q);
  for (std::size_t c = 0; c < q; ++c)
    for (std::size_t r = 0; r < q; ++r) p(r, c) = basis[c][r];

  const QMat block = oracle_solve(p, mat_mul(a, p));  // diag(C, N)
  QMat core(rank);
  for (std::size_t r = 0; r < rank; ++r)
    for (std::size_t c = 0; c < rank; ++c) core(r, c) = block(r, c);
  const QMat core_inv = oracle_solve(core, QMat::identity(rank));
  QMat d(q);
  for (std::size_t r = 0; r < rank; ++r)
    for (std::size_t c = 0; c < rank; ++c) d(r, c) = core_inv(r, c);
  // A_d = P D P^-1, i.e. solve A_d P = P D through transposes.
  const QMat pd = mat_mul(p, d);
  QMat pt(q), pdt(q);
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t c = 0; c < q; ++c) {
      pt(r, c) = p(c, r);
      pdt(r, c) = pd(c, r);
    }
  const QMat xt = oracle_solve(pt, pdt);
  QMat x(q);
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t c = 0; c < q; ++c) x(r, c) = xt(c, r);
  return x;
}

// ---- random matrices with planted rational spectrum ----

struct PlantedMatrix {
  QMat a;
  // Jordan structure: (eigenvalue, block sizes)
  std::vector<std::pair<Rational, std::vector<std::size_t>>> blocks;
  std::size_t zero_index = 0;
};

// P J P^-1 with J block diagonal of Jordan blocks and P a product of integer
// elementary row operations, so P^-1 is the reverse product of inverse ops.
inline PlantedMatrix planted(std::mt19937& rng, std::size_t max_order = 6) {
  std::uniform_int_distribution<int> order_d(1, static_cast<int>(max_order));
  const std::size_t q = static_cast<std::size_t>(order_d(rng));
  std::uniform_int_distribution<int> num_d(-4, 4), den_d(1, 3), size_d(1, 3), pick(0, 3);

  std::vector<Rational> pool;
  const int distinct = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < distinct; ++i) pool.push_back(i == 0 && pick(rng) == 0 ? Rational(0) : R(num_d(rng), den_d(rng)));

  QMat j(q);
  PlantedMatrix out;
  std::size_t pos = 0;
  while (pos < q) {
    const Rational lambda = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    const std::size_t size = std::min<std::size_t>(static_cast<std::size_t>(size_d(rng)), q - pos);
    for (std::size_t k = 0; k < size; ++k) {
      j(pos + k, pos + k) = lambda;
      if (k + 1 < size) j(pos + k, pos + k + 1) = 1;
    }
    auto it = std::find_if(out.blocks.begin(), out.blocks.end(), [&](const auto& b) { return b.first == lambda; });
    if (it == out.blocks.end())
      out.blocks.push_back({lambda, {size}});
    else
      it->second.push_back(size);
    if (lambda.is_zero()) out.zero_index = std::max(out.zero_index, size);
    pos += size;
  }

  QMat p = QMat::identity(q), pinv = QMat::identity(q);
  if (q > 1) {
    std::uniform_int_distribution<std::size_t> idx(0, q - 1);
    std::uniform_int_distribution<int> mult(-2, 2);
    for (int step = 0; step < static_cast<int>(3 * q); ++step) {
      const std::size_t r = idx(rng), s = idx(rng);
      const int m = mult(rng);
      if (r == s || m == 0) continue;
      // P <- E P with E = I + m e_r e_s^T; P^-1 <- P^-1 E^-1.
      for (std::size_t c = 0; c < q; ++c) p(r, c) += Rational(m) * p(s, c);
      for (std::size_t c = 0; c < q; ++c) pinv(c, s) -= Rational(m) * pinv(c, r);
    }
  }
  out.a = mat_mul(mat_mul(p, j), pinv);
  return out;
}

}  // namespace pcf::testing
