#include <gtest/gtest.h>

#include <random>

#include "pcf/spectra.hpp"
#include "support.hpp"

using namespace pcf;
using namespace pcf::testing;

namespace {

const EigenBlock<Rational>* find_block(const SpectralDecomposition<Rational>& d, const Rational& v) {
  for (const auto& b : d.eigen)
    if (b.value == v) return &b;
  return nullptr;
}

}  // namespace

TEST(Spectral, Example1Projections) {
  const auto a = example1();
  const auto d = spectral_decompose(a);
  EXPECT_EQ(d.zero_index, 2u);
  ASSERT_EQ(d.eigen.size(), 2u);
  const auto* p2 = find_block(d, R(2));
  const auto* pm2 = find_block(d, R(-2));
  ASSERT_NE(p2, nullptr);
  ASSERT_NE(pm2, nullptr);
  EXPECT_EQ(p2->projection, example1_pi2());
  EXPECT_EQ(pm2->projection, example1_pim2());
  // pi_0 = I - A(0)
  EXPECT_EQ(d.zero_projection, QMat::identity(4) - example1_seq(0));
  EXPECT_EQ(d.minimal_polynomial(), minimal_poly(a));
}

TEST(Spectral, Identity) {
  const auto d = spectral_decompose(QMat::identity(3));
  EXPECT_EQ(d.zero_index, 0u);
  EXPECT_EQ(d.zero_projection, QMat(3));
  ASSERT_EQ(d.eigen.size(), 1u);
  EXPECT_EQ(d.eigen[0].value, R(1));
  EXPECT_EQ(d.eigen[0].multiplicity, 1u);
  EXPECT_EQ(d.eigen[0].projection, QMat::identity(3));
}

TEST(Spectral, CirculantAllOnes) {
  for (long p = 2; p <= 5; ++p) {
    const auto a = all_ones(p);
    const auto d = spectral_decompose(a);
    EXPECT_EQ(d.zero_index, 1u);
    // C = (1/p) (pI - J): diagonal (p-1)/p, off-diagonal -1/p.
    QMat c = QMat::identity(p) - a * R(1, p);
    EXPECT_EQ(d.zero_projection, c);
    ASSERT_EQ(d.eigen.size(), 1u);
    EXPECT_EQ(d.eigen[0].value, R(p));
    EXPECT_EQ(d.eigen[0].projection, a * R(1, p));
  }
}

TEST(Spectral, NonSplitPropagates) { EXPECT_THROW(spectral_decompose(sqrt2_companion()), NonSplitField); }

TEST(Index, Examples) {
  EXPECT_EQ(index(example1()), 2u);
  EXPECT_EQ(index(example2()), 0u);
  const QMat jordan3{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}};
  EXPECT_EQ(index(jordan3), 3u);
  EXPECT_EQ(rank_index(jordan3), 3u);
  EXPECT_EQ(index(QMat(2)), 1u);
}

TEST(Spectral, IdempotentPolynomialProperties) {
  // For m = (X - 1)^2 (X + 2), the idempotent for 1 is 1 mod (X-1)^2, 0 mod (X+2).
  using P = Polynomial<Rational>;
  const P rest = P::linear(-2);
  const P e = detail::spectral_idempotent(rest, R(1), 2);
  const P one_mod = (e - P::constant(1)).divmod(P::linear(1).pow(2)).second;
  EXPECT_TRUE(one_mod.is_zero());
  EXPECT_TRUE(e.divmod(rest).second.is_zero());
}

class PlantedSpectral : public ::testing::TestWithParam<unsigned> {};

TEST_P(PlantedSpectral, InvariantsHold) {
  std::mt19937 rng(GetParam());
  for (int trial = 0; trial < 10; ++trial) {
    const auto pm = planted(rng);
    const auto& a = pm.a;
    const std::size_t q = a.order();
    const auto d = spectral_decompose(a);
    const QMat id = QMat::identity(q);

    std::vector<QMat> projs;
    if (d.zero_index > 0) projs.push_back(d.zero_projection);
    for (const auto& b : d.eigen) projs.push_back(b.projection);

    QMat sum(q);
    for (const auto& p : projs) sum += p;
    EXPECT_EQ(sum, id) << "resolution of identity";
    for (std::size_t x = 0; x < projs.size(); ++x) {
      EXPECT_EQ(mat_mul(projs[x], projs[x]), projs[x]) << "idempotent";
      EXPECT_EQ(mat_mul(a, projs[x]), mat_mul(projs[x], a)) << "commutes";
      for (std::size_t y = 0; y < projs.size(); ++y)
        if (x != y) EXPECT_EQ(mat_mul(projs[x], projs[y]), QMat(q)) << "orthogonal";
    }
    EXPECT_EQ(mat_mul(naive_power(a, d.zero_index), d.zero_projection), QMat(q));
    for (const auto& b : d.eigen) {
      EXPECT_EQ(mat_mul(naive_power(a - id * b.value, b.multiplicity), b.projection), QMat(q));
      if (b.multiplicity > 0)
        EXPECT_NE(mat_mul(naive_power(a - id * b.value, b.multiplicity - 1), b.projection), QMat(q));
    }

    EXPECT_EQ(d.zero_index, pm.zero_index);
    EXPECT_EQ(index(a), rank_index(a));

    // trace(pi_j) = algebraic multiplicity.
    for (const auto& [lambda, sizes] : pm.blocks) {
      std::size_t alg = 0;
      for (auto s : sizes) alg += s;
      const QMat& p = lambda.is_zero() ? d.zero_projection : find_block(d, lambda)->projection;
      EXPECT_EQ(p.trace(), Rational(static_cast<long>(alg)));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PlantedSpectral, ::testing::Values(1u, 2u, 3u, 4u, 5u));

TEST(Spectral, ApproxBackendMatchesExact) {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = planted(rng, 5).a;
    const auto exact = spectral_decompose(a);
    const auto approx = spectral_decompose(to_complex(a));
    EXPECT_EQ(approx.zero_index, exact.zero_index);
    ASSERT_EQ(approx.eigen.size(), exact.eigen.size());
    for (std::size_t j = 0; j < exact.eigen.size(); ++j) {
      EXPECT_NEAR(approx.eigen[j].value.re(), exact.eigen[j].value.to_double(), 1e-6);
      EXPECT_EQ(approx.eigen[j].multiplicity, exact.eigen[j].multiplicity);
      EXPECT_LE(max_diff(approx.eigen[j].projection, to_complex(exact.eigen[j].projection)), 1e-5);
    }
  }
}

TEST(Spectral, ValidationRejectsBadProjections) {
  auto d = spectral_decompose(example1());
  d.eigen[0].projection = d.eigen[0].projection * R(2);
  EXPECT_THROW(validate_decomposition(d, example1(), {}), InvariantViolation);
}
