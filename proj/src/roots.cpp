#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pcf/polymat.hpp"

namespace pcf {

namespace {

// Positive divisors of |n| by trial division; n != 0.
std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    mpz_class other = n / d;
    if (other != d) large.push_back(other);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Integer polynomial with coprime coefficients and the same roots.
std::vector<mpz_class> primitive_form(const Polynomial<Rational>& p) {
  mpz_class lcm_den = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.den().get_mpz_t());
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& c : p.coefficients()) {
    mpz_class v = c.num() * (lcm_den / c.den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    ints.push_back(v);
  }
  if (g > 1)
    for (auto& v : ints) v /= g;
  return ints;
}

// Synthetic division by (X - r); returns false when r is not a root.
bool deflate(Polynomial<Rational>& p, const Rational& r) {
  if (!p(r).is_zero()) return false;
  p = p.divmod(Polynomial<Rational>::linear(r)).first;
  return true;
}

}  // namespace

RootMultiset<Rational> poly_roots(const Polynomial<Rational>& p, const TolerancePolicy&) {
  if (p.is_zero()) throw std::invalid_argument("the zero polynomial has no finite root multiset");
  RootMultiset<Rational> roots;
  Polynomial<Rational> rest = p.monic();

  std::size_t zero_mult = 0;
  while (rest.degree() > 0 && rest.coeff(0).is_zero()) {
    rest = rest.divmod(Polynomial<Rational>::monomial(1)).first;
    ++zero_mult;
  }
  if (zero_mult > 0) roots.push_back({Rational(0), zero_mult});

  if (rest.degree() > 0) {
    const auto ints = primitive_form(rest);
    const auto num_cands = divisors(ints.front());
    const auto den_cands = divisors(ints.back());
    std::vector<Rational> candidates;
    for (const auto& a : num_cands)
      for (const auto& b : den_cands) {
        if (gcd(a, b) != 1) continue;
        candidates.emplace_back(a, b);
        candidates.emplace_back(-a, b);
      }
    std::sort(candidates.begin(), candidates.end());
    for (const auto& c : candidates) {
      if (rest.degree() <= 0) break;
      std::size_t mult = 0;
      while (rest.degree() > 0 && deflate(rest, c)) ++mult;
      if (mult > 0) roots.push_back({c, mult});
    }
  }
  if (rest.degree() > 0) throw NonSplitField(rest.monic().to_string());
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return roots;
}

namespace {

// Merge radius for a cluster of m roots. A root of multiplicity m spreads
// under a relative coefficient perturbation eps into a circle of radius
// about eps^(1/m), so the radius grows with the cluster size.
double cluster_radius(std::size_t m, double magnitude, const TolerancePolicy& pol) {
  const double base = pol.abs_eps + pol.rel_eps * magnitude;
  if (m <= 1) return base;
  const double spread = std::pow(1e4 * std::numeric_limits<double>::epsilon(), 1.0 / static_cast<double>(m));
  return std::max(base, spread * (1.0 + magnitude));
}

}  // namespace

RootMultiset<ApproxComplex> poly_roots(const Polynomial<ApproxComplex>& p, const TolerancePolicy& pol) {
  const Polynomial<ApproxComplex> monic = p.trimmed(pol).monic();
  if (monic.is_zero()) throw std::invalid_argument("the zero polynomial has no finite root multiset");
  const long n = monic.degree();
  if (n == 0) return {};

  std::vector<std::complex<double>> raw;
  if (n == 1) {
    raw.push_back(-monic.coeff(0).value());
  } else {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (long i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (long i = 0; i < n; ++i) companion(i, n - 1) = -monic.coeff(static_cast<std::size_t>(i)).value();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("companion eigenvalue iteration failed");
    for (long i = 0; i < n; ++i) raw.push_back(solver.eigenvalues()(i));
  }

  // Grouping, largest clusters first: a root of multiplicity m shows up as m
  // points on a small circle, so test each point with its m - 1 nearest
  // unassigned neighbours against the radius for size m.
  struct Cluster {
    std::complex<double> centroid;
    std::size_t size;
  };
  std::vector<Cluster> clusters;
  std::vector<bool> used(raw.size(), false);
  for (std::size_t m = raw.size(); m >= 1; --m) {
    for (std::size_t s = 0; s < raw.size(); ++s) {
      if (used[s]) continue;
      std::vector<std::size_t> near;
      for (std::size_t t = 0; t < raw.size(); ++t)
        if (!used[t]) near.push_back(t);
      if (near.size() < m) continue;
      std::sort(near.begin(), near.end(),
                [&](std::size_t x, std::size_t y) { return std::abs(raw[x] - raw[s]) < std::abs(raw[y] - raw[s]); });
      near.resize(m);
      std::complex<double> sum = 0.0;
      for (auto t : near) sum += raw[t];
      const std::complex<double> c = sum / static_cast<double>(m);
      const double r = cluster_radius(m, std::abs(c), pol);
      bool tight = true;
      for (auto t : near) tight = tight && std::abs(raw[t] - c) <= r;
      if (!tight) continue;
      for (auto t : near) used[t] = true;
      clusters.push_back({c, m});
    }
  }

  RootMultiset<ApproxComplex> roots;
  for (const auto& c : clusters) {
    auto z = c.centroid;
    double re = z.real(), im = z.imag();
    // Snap components that are zero under the policy, so real roots of real
    // polynomials come out real and roots at the origin are exactly zero.
    const double snap = pol.abs_eps + pol.rel_eps * std::abs(z);
    if (std::abs(im) <= snap) im = 0.0;
    if (std::abs(re) <= snap) re = 0.0;
    roots.push_back({ApproxComplex(re, im), c.size});
  }
  std::sort(roots.begin(), roots.end(), [&](const auto& a, const auto& b) {
    return FieldTraits<ApproxComplex>::compare(a.value, b.value, pol) < 0;
  });
  return roots;
}

}  // namespace pcf
