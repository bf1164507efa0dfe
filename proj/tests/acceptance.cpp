// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pcf/commands.hpp"
#include "pcf/drazin.hpp"
#include "pcf/pcf.hpp"
#include "support.hpp"

using namespace pcf;
using namespace pcf::testing;

namespace {

using QPoly = Polynomial<Rational>;

// Collects failed checks for one criterion.
struct Checker {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void near(double err, double tol, const std::string& what) {
    if (!(err <= tol)) {
      std::ostringstream os;
      os << what << " (error " << err << " > " << tol << ")";
      failures.push_back(os.str());
    }
  }
};

std::string k_label(const std::string& what, long long k) { return what + " at k=" + std::to_string(k); }

void example1_end_to_end(Checker& c) {
  const QMat a = example1();
  c.expect(minimal_poly(a) == QPoly::monomial(2) * QPoly::linear(2) * QPoly::linear(-2), "minimal polynomial");
  c.expect(index(a) == 2, "index");
  const auto d = spectral_decompose(a);
  bool pi2 = false, pim2 = false;
  for (const auto& b : d.eigen) {
    if (b.value == Rational(2)) pi2 = b.projection == example1_pi2();
    if (b.value == Rational(-2)) pim2 = b.projection == example1_pim2();
  }
  c.expect(pi2, "pi_2");
  c.expect(pim2, "pi_-2");
  const auto f = build_pcf(d, a);
  for (long long k = 2; k <= 12; ++k)
    c.expect(f.eval_geometric(k) == naive_power(a, static_cast<unsigned long long>(k)), k_label("geometric part", k));
  const auto res = drazin_inverse(a);
  c.expect(res.inverse == example1_drazin(), "A_d");
  for (unsigned k = 1; k <= 6; ++k) c.expect(drazin_power(res, k) == example1_seq(-static_cast<long long>(k)), k_label("A_d^k", k));
}

void example2_real_form(Checker& c) {
  const CMat b = to_complex(example2());
  const auto f = build_pcf(b);
  c.near(max_diff(f.eval_geometric(0), CMat::identity(4)), 1e-9, "B(0) = I");
  c.expect(is_nonsingular(f), "nonsingular");
  const auto res = drazin_inverse(b);
  c.near(max_diff(res.inverse, to_complex(example2_inverse())), 1e-9, "B^-1");
  const auto rf = real_form(f, b);
  for (long long k = 1; k <= 8; ++k) {
    c.near(max_diff(rf.eval(k), example2_seq(k)), 1e-9, k_label("real form vs B(k)", k));
    c.near(max_diff(naive_power(b, static_cast<unsigned long long>(k)), example2_seq(k)), 1e-9, k_label("B^k vs B(k)", k));
  }
  for (unsigned k = 1; k <= 4; ++k)
    c.near(max_diff(drazin_power(res, k), example2_seq(-static_cast<long long>(k))), 1e-9, k_label("B^-k vs B(-k)", k));
}

void example3_both_branches(Checker& c) {
  for (double x : {1.0, 0.0}) {
    const std::string tag = x == 0.0 ? "x=0 " : "x=1 ";
    const CMat e = example3(x);
    const auto f = build_pcf(e);
    const auto rf = real_form(f, e);
    for (unsigned k = 1; k <= 8; ++k) {
      c.near(max_diff(eval_power(f, k), example3_seq(x, k)), 1e-8, k_label(tag + "E^k", k));
      c.near(max_diff(rf.eval(k), example3_seq(x, k)), 1e-8, k_label(tag + "real form", k));
    }
    const auto res = drazin_inverse(e);
    if (x == 0.0) {
      c.expect(!is_nonsingular(f), tag + "singular");
      c.expect(res.index == 1, tag + "index 1");
      c.near(max_diff(res.inverse, example3_drazin(0.0)), 1e-8, tag + "E_d");
    } else {
      c.expect(is_nonsingular(f), tag + "nonsingular");
      c.near(max_diff(mat_mul(res.inverse, e), CMat::identity(3)), 1e-8, tag + "E_d E = I");
      c.near(max_diff(res.inverse, example3_drazin(1.0)), 1e-8, tag + "E_d");
    }
  }
}

void example4_circulants(Checker& c) {
  for (long p = 2; p <= 5; ++p) {
    const std::string tag = "p=" + std::to_string(p) + " ";
    const QMat a = all_ones(p), b = circulant_b(p), id = QMat::identity(p);
    const Rational w = R(p - 1, p), mu = R(-1, p - 1);
    c.expect(minimal_poly(a) == QPoly::monomial(1) * QPoly::linear(R(p)), tag + "m_A");
    c.expect(minimal_poly(b) == QPoly::linear(1) * QPoly::linear(mu), tag + "m_B");

    // Geometric part of B equals a_k B + b_k I, compared coefficient by coefficient:
    // a_k = w 1^k - w mu^k, b_k = (1/p) 1^k + w mu^k.
    PCanonicalForm<Rational> expected(p);
    expected.add_geo(R(1), 0, b * w + id * R(1, p));
    expected.add_geo(mu, 0, b * (-w) + id * w);
    const auto fb = build_pcf(b);
    bool same = fb.geo_terms().size() == expected.geo_terms().size() && fb.delta_terms().empty();
    for (std::size_t x = 0; same && x < expected.geo_terms().size(); ++x) {
      const auto& g = fb.geo_terms()[x];
      const auto& h = expected.geo_terms()[x];
      same = g.ratio == h.ratio && g.i == h.i && g.coeff == h.coeff;
    }
    c.expect(same, tag + "geometric part of B");

    const auto res = drazin_inverse(a);
    for (unsigned k = 1; k <= 5; ++k)
      c.expect(drazin_power(res, k) == a * pow_int(Rational(p), -static_cast<long long>(k) - 1), k_label(tag + "A_d^k", k));

    const QMat pi1 = b * w + id * R(1, p);
    const QMat pimu = (id - b) * w;
    const QMat b_inv = inverse(b, {});
    for (long long k = -3; k <= 5; ++k) {
      const QMat formula = pi1 + pimu * pow_int(Rational(1 - p), -k);
      const QMat power = k >= 0 ? naive_power(b, static_cast<unsigned long long>(k))
                                : naive_power(b_inv, static_cast<unsigned long long>(-k));
      c.expect(formula == power, k_label(tag + "B^k spectral formula", k));
      c.expect(fb.eval_geometric(k) == power, k_label(tag + "B^k canonical form", k));
    }
  }
}

void planted_property_suite(Checker& c) {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pm = planted(rng);
    const QMat& a = pm.a;
    const std::size_t q = a.order();
    const std::string tag = "matrix #" + std::to_string(trial) + " ";
    const auto d = spectral_decompose(a);
    const auto f = build_pcf(d, a);
    const auto res = drazin_inverse(a);
    const auto ax = verify_135(a, res.inverse, res.index);
    c.expect(ax.power_axiom, tag + "axiom 1^t0");
    c.expect(ax.reflexive, tag + "axiom 3");
    c.expect(ax.commute, tag + "axiom 5");
    c.expect(res.inverse == detail::reciprocal_function(d, a), tag + "theta0 vs reciprocal route");
    c.expect(res.inverse == core_nilpotent_drazin(a), tag + "core-nilpotent oracle");
    c.expect(mat_mul(a, res.inverse) == QMat::identity(q) - d.zero_projection, tag + "A A_d = I - pi_0");
    for (unsigned k = 0; k <= 12; ++k) c.expect(eval_power(f, k) == naive_power(a, k), k_label(tag + "eval_power", k));
    c.expect(minpoly_from_pcf(f) == minimal_poly(a), tag + "minpoly_from_pcf");
  }
}

Rational binom_oracle(long long k, std::size_t i) {
  Rational v = 1;
  for (std::size_t j = 0; j < i; ++j) v = v * Rational(k - static_cast<long long>(j)) / Rational(static_cast<long>(j + 1));
  return v;
}

void sequence_algebra_suite(Checker& c) {
  for (std::size_t i = 0; i <= 8; ++i)
    for (std::size_t j = 0; j <= 8; ++j) {
      const auto coeffs = binom_product(i, j);
      for (long long k = 0; k <= 30; ++k) {
        Rational rhs = 0;
        for (std::size_t m = 0; m < coeffs.size(); ++m) rhs += Rational(coeffs[m]) * binom_oracle(k, m);
        c.expect(binom_oracle(k, i) * binom_oracle(k, j) == rhs,
                 "Riordan product i=" + std::to_string(i) + " j=" + std::to_string(j) + " k=" + std::to_string(k));
      }
    }

  constexpr std::size_t n = 20;
  std::vector<std::vector<mpz_class>> chi(n + 1, std::vector<mpz_class>(n + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) {
    const auto e = chi_expand(i);
    for (std::size_t j = 0; j < e.size(); ++j) chi[i][j] = e[j];
  }
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j) {
      mpz_class s = 0;
      for (std::size_t l = 0; l <= n; ++l) s += chi[i][l] * chi[l][j];
      c.expect(s == (i == j ? 1 : 0), "chi squared entry " + std::to_string(i) + "," + std::to_string(j));
    }

  for (std::size_t i = 1; i <= 10; ++i)
    for (long long k = 0; k <= 30; ++k) {
      mpz_class s = 0;
      for (std::size_t l = 0; l <= i; ++l) s += binomial(k, l) * binomial(-k, i - l);
      c.expect(s == 0, "convolution i=" + std::to_string(i) + " k=" + std::to_string(k));
    }

  constexpr std::size_t order = 12;
  for (std::size_t a = 0; a <= order; ++a)
    for (std::size_t b = 0; b <= order; ++b) {
      Rational s = 0;
      for (std::size_t m = 0; m <= order; ++m)
        s += Rational(factorial(m) * stirling2(a, m)) * Rational(stirling1(m, b), factorial(m));
      c.expect(s == Rational(a == b ? 1 : 0), "Stirling T D entry " + std::to_string(a) + "," + std::to_string(b));
    }
}

void negative_controls(Checker& c) {
  const auto res = cli::run({"pcf", "pcf", std::string(PCF_FIXTURE_DIR) + "/invalid/sqrt2.json"});
  c.expect(res.exit_code == cli::kNonSplit, "exit code " + std::to_string(res.exit_code) + " for X^2 - 2");
  bool threw = false;
  try {
    build_pcf(sqrt2_companion());
  } catch (const NonSplitField& e) {
    threw = e.residual() == "X^2 - 2";
  }
  c.expect(threw, "NonSplitField naming X^2 - 2");
  const auto ax = verify_135(example1(), QMat(4), 2);
  c.expect(!ax.power_axiom, "zero candidate must fail axiom 1^t0");
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<void(Checker&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Example 1 end-to-end (exact)", 1.0, example1_end_to_end},
      {2, "Example 2 real form (approx)", 0.0, example2_real_form},
      {3, "Example 3 at x = 1 and x = 0 (approx)", 0.0, example3_both_branches},
      {4, "Example 4 circulants p = 2..5 (exact)", 0.0, example4_circulants},
      {5, "Planted-spectrum property suite, 200 matrices (exact)", 60.0, planted_property_suite},
      {6, "Sequence-algebra identities", 0.0, sequence_algebra_suite},
      {7, "Negative controls", 0.0, negative_controls},
  };

  int failed = 0;
  for (const auto& cr : criteria) {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.budget_seconds > 0.0 && secs >= cr.budget_seconds) {
      std::ostringstream os;
      os << "runtime " << secs << " s exceeds " << cr.budget_seconds << " s";
      c.failures.push_back(os.str());
    }
    const bool ok = c.failures.empty();
    if (!ok) ++failed;
    std::printf("[%s] criterion %d: %s (%.3f s)\n", ok ? "PASS" : "FAIL", cr.id, cr.name, secs);
    for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i) std::printf("       - %s\n", c.failures[i].c_str());
    if (c.failures.size() > 10) std::printf("       ... %zu more\n", c.failures.size() - 10);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
