#include "pcf/seqalg.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <numeric>

namespace pcf {

mpz_class binomial(long long k, std::size_t i) {
  mpz_class num = 1;
  for (std::size_t j = 0; j < i; ++j) num *= mpz_class(std::to_string(k - static_cast<long long>(j)));
  return num / factorial(i);
}

mpz_class factorial(std::size_t n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

namespace {

mpz_class nonneg_binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace

std::vector<mpz_class> binom_product(std::size_t i, std::size_t j) {
  // C(k,i) C(k,j) = sum_{m=i}^{i+j} C(m,i) C(i,m-j) C(k,m)
  std::vector<mpz_class> out(i + j + 1, 0);
  for (std::size_t m = i; m <= i + j; ++m) {
    if (m < j) continue;
    out[m] = nonneg_binomial(m, i) * nonneg_binomial(i, m - j);
  }
  return out;
}

std::vector<mpz_class> chi_expand(std::size_t i) {
  std::vector<mpz_class> out(i + 1, 0);
  if (i == 0) {
    out[0] = 1;
    return out;
  }
  // C(-k,i) = sum_{j=1}^{i} (-1)^i C(i-1, i-j) C(k,j)
  const int sign = (i % 2 == 0) ? 1 : -1;
  for (std::size_t j = 1; j <= i; ++j) out[j] = sign * nonneg_binomial(i - 1, i - j);
  return out;
}

namespace {

// Lower-triangular tables grown on demand by the standard recurrences:
//   S(n+1,m) = m S(n,m) + S(n,m-1)
//   s(n+1,m) = s(n,m-1) - n s(n,m)
class StirlingTables {
 public:
  mpz_class second(std::size_t n, std::size_t m) {
    if (m > n) return 0;
    std::lock_guard lock(mu_);
    grow(n);
    return s2_[n][m];
  }
  mpz_class first(std::size_t n, std::size_t m) {
    if (m > n) return 0;
    std::lock_guard lock(mu_);
    grow(n);
    return s1_[n][m];
  }

 private:
  void grow(std::size_t n) {
    if (s2_.empty()) {
      s2_.push_back({1});
      s1_.push_back({1});
    }
    while (s2_.size() <= n) {
      const std::size_t prev = s2_.size() - 1;
      std::vector<mpz_class> row2(prev + 2, 0), row1(prev + 2, 0);
      for (std::size_t m = 1; m <= prev + 1; ++m) {
        const mpz_class& s2_same = m <= prev ? s2_[prev][m] : mpz_class(0);
        const mpz_class& s1_same = m <= prev ? s1_[prev][m] : mpz_class(0);
        row2[m] = mpz_class(static_cast<unsigned long>(m)) * s2_same + s2_[prev][m - 1];
        row1[m] = s1_[prev][m - 1] - mpz_class(static_cast<unsigned long>(prev)) * s1_same;
      }
      s2_.push_back(std::move(row2));
      s1_.push_back(std::move(row1));
    }
  }

  std::mutex mu_;
  std::vector<std::vector<mpz_class>> s2_;
  std::vector<std::vector<mpz_class>> s1_;
};

StirlingTables& tables() {
  static StirlingTables t;
  return t;
}

}  // namespace

mpz_class stirling2(std::size_t n, std::size_t m) { return tables().second(n, m); }
mpz_class stirling1(std::size_t n, std::size_t m) { return tables().first(n, m); }

SeqExpr<ApproxComplex> realify(const SeqExpr<ApproxComplex>& u) {
  const TolerancePolicy& pol = u.policy();
  SeqExpr<ApproxComplex> out(pol);
  double cmax = 0.0;
  for (const auto& e : u.terms()) cmax = std::max(cmax, e.second.abs());
  const double coeff_tol = pol.abs_eps * (1.0 + cmax);

  auto require_real = [&](const ApproxComplex& c, const char* what) {
    if (std::abs(c.im()) > coeff_tol + pol.rel_eps * c.abs())
      throw ConjugacyViolation(std::string("non-real coefficient on ") + what);
    return ApproxComplex(c.re(), 0.0);
  };

  const auto& terms = u.terms();
  for (const auto& [t, c] : terms) {
    if (t.kind == AtomKind::Delta) {
      out.add(t, require_real(c, "a Kronecker atom"));
      continue;
    }
    if (t.is_real()) {
      out.add(t, require_real(c, "a trigonometric atom"));
      continue;
    }
    const ApproxComplex& lambda = t.ratio;
    const double im_tol = pol.abs_eps + pol.rel_eps * lambda.abs();
    if (std::abs(lambda.im()) <= im_tol) {
      SeqTerm<ApproxComplex> real_term = t;
      real_term.ratio = ApproxComplex(lambda.re(), 0.0);
      out.add(real_term, require_real(c, "a real geometric atom"));
      continue;
    }
    // Find the conjugate partner.
    SeqTerm<ApproxComplex> partner = t;
    partner.ratio = lambda.conj();
    const auto* match = static_cast<const ApproxComplex*>(nullptr);
    for (const auto& [pt, pc] : terms)
      if (compare_terms(pt, partner, pol) == 0) match = &pc;
    if (match == nullptr)
      throw ConjugacyViolation("atom " + format_atom(t) + " has no conjugate partner");
    if ((*match - c.conj()).abs() > coeff_tol + pol.rel_eps * c.abs())
      throw ConjugacyViolation("coefficients of " + format_atom(t) + " and its conjugate are not conjugate");
    if (lambda.im() < 0.0) continue;  // emitted with the upper half-plane member

    const double r = lambda.abs();
    const double theta = lambda.arg();
    const bool power = t.kind == AtomKind::GeoPower;
    const ApproxComplex two_re(2.0 * c.re(), 0.0);
    const ApproxComplex minus_two_im(-2.0 * c.im(), 0.0);
    out.add(SeqTerm<ApproxComplex>::real_cos(r, theta, t.i, power), two_re);
    out.add(SeqTerm<ApproxComplex>::real_sin(r, theta, t.i, power), minus_two_im);
  }
  return out;
}

std::string format_angle(double theta) {
  // Prefer p*pi/q for small q when it matches to 1e-9.
  for (int q = 1; q <= 24; ++q) {
    const double p = theta * q / std::numbers::pi;
    const double pr = std::round(p);
    if (pr != 0.0 && std::abs(p - pr) < 1e-9 * q) {
      const long pi_num = std::lround(pr);
      long g = std::gcd(pi_num, static_cast<long>(q));
      const long num = pi_num / g, den = q / g;
      std::string out = num != 1 ? std::to_string(num) : "";
      out += "kπ";
      if (den != 1) out += "/" + std::to_string(den);
      return out;
    }
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12gk", theta);
  return buf;
}

}  // namespace pcf
