#include <gtest/gtest.h>

#include "nlslab/norms.hpp"
#include "oracles.hpp"

using namespace nlslab;

TEST(Norms, SingleModeHandValues) {
  FourierField u = make_field({1, 8, 4});
  u.ref({5, 0, 0}) = cplx(0.0, 3.0);
  EXPECT_DOUBLE_EQ(norm_l2(u), 3.0);
  EXPECT_DOUBLE_EQ(norm_weighted(u, 2.0, 2.0), 3.0 * 25.0);
  EXPECT_DOUBLE_EQ(norm_hs_sum(u, 2.0), 3.0 + 3.0 * 25.0);
  // Below the weight floor the bracket is R, not |j|.
  FourierField v = make_field({1, 8, 4});
  v.ref({1, 0, 0}) = 1.0;
  EXPECT_DOUBLE_EQ(norm_weighted(v, 3.0, 2.0), 8.0);
}

TEST(Norms, MeanModeConvention) {
  FourierField u = make_field({1, 4, 4});
  u.ref({0, 0, 0}) = cplx(2.0, 0.0);
  EXPECT_DOUBLE_EQ(norm_hs_sum(u, 3.0), 2.0);           // |j|^s kills j = 0
  EXPECT_DOUBLE_EQ(norm_weighted(u, 3.0, 2.0), 16.0);   // weight floor R^s
}

TEST(Norms, RejectsBadParams) {
  FourierField u = make_field({1, 4, 4});
  EXPECT_THROW(norm_weighted(u, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(norm_weighted(u, -1.0, 2.0), std::invalid_argument);
}

TEST(Norms, SandwichAgainstSobolevPlusScaledMass) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 64; ++t) {
    const double s = 0.5 + 0.45 * double(t % 11);
    const double R = 1.5 + 0.8 * double(t % 5);
    FourierField u = oracle::random_field({1 + t % 2, t % 2 ? 6 : 24, 4}, rng, 0.3 * (t % 4));
    const double lhs = norm_hs_sum(u, s) + std::pow(R, s) * norm_l2(u);
    const double w = norm_weighted(u, s, R);
    EXPECT_LE(lhs, 3.0 * w * (1.0 + 1e-12));
    EXPECT_LE(w, lhs * (1.0 + 1e-12));
  }
}

TEST(Norms, MonotoneInSmoothnessAndScaling) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 32; ++t) {
    FourierField u = oracle::random_field({1, 20, 4}, rng, 0.5);
    const double R = 2.0 + (t % 3);
    const double s0 = 1.0, s = 1.0 + 0.5 * (t % 7);
    EXPECT_LE(norm_weighted(u, s0, R), norm_weighted(u, s, R) * (1.0 + 1e-12));
    // One weight power converts into a factor R when stepping down in s.
    EXPECT_LE(norm_weighted(u, s0, R) * std::pow(R, s - s0),
              norm_weighted(u, s, R) * (1.0 + 1e-12));
  }
}

TEST(Norms, InterpolationConstantTwo) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 48; ++t) {
    FourierField u = oracle::random_field({1, 24, 4}, rng, 0.2 * (t % 5));
    const double s1 = 0.5 * (t % 3), s2 = s1 + 1.0 + (t % 4);
    const double lam = 0.125 * (1 + t % 7);
    const double s = lam * s1 + (1.0 - lam) * s2;
    const double R = 1.8 + 0.4 * (t % 4);
    const double rhs = std::pow(norm_weighted(u, s1, R), lam) *
                       std::pow(norm_weighted(u, s2, R), 1.0 - lam);
    EXPECT_LE(norm_weighted(u, s, R), 2.0 * rhs * (1.0 + 1e-12));
  }
}

TEST(Norms, ProjectorBoundaryInclusive) {
  FourierField u = make_field({2, 6, 4});
  u.ref({3, 4, 0}) = 1.0;  // |j| = 5 exactly
  EXPECT_EQ(project_low(u, 5.0).at({3, 4, 0}), cplx(1.0));
  EXPECT_EQ(project_high(u, 5.0).at({3, 4, 0}), cplx(0.0));
  EXPECT_EQ(project_low(u, 4.999).at({3, 4, 0}), cplx(0.0));
}

TEST(Norms, ProjectorSmoothingAndTailBounds) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 32; ++t) {
    FourierField u = oracle::random_field({1, 32, 4}, rng, 0.4);
    const double R = 2.0, s = 1.0 + (t % 3), beta = 0.5 * (1 + t % 4), N = 4.0 * (1 + t % 5);
    const double cap = std::pow(std::max(R, N), beta);
    EXPECT_LE(norm_weighted(project_low(u, N), s + beta, R),
              cap * norm_weighted(u, s, R) * (1.0 + 1e-12));
    EXPECT_LE(norm_weighted(project_high(u, N), s, R),
              norm_weighted(u, s + beta, R) / cap * (1.0 + 1e-12));
  }
}

TEST(Norms, InnerProductMatchesL2) {
  std::mt19937_64 rng(15);
  FourierField u = oracle::random_field({2, 5, 4}, rng);
  FourierField v = oracle::random_field({2, 5, 4}, rng);
  const cplx ip = inner_l2(u, v);
  EXPECT_NEAR(std::abs(inner_l2(v, u) - std::conj(ip)), 0.0, 1e-14);
  EXPECT_NEAR(inner_l2(u, u).real(), norm_l2(u) * norm_l2(u), 1e-12);
  EXPECT_NEAR(inner_l2(u, u).imag(), 0.0, 1e-14);
  // Multiplier symmetry: (op(m)u, v) = (u, op(m)v) for real symbols.
  FourierField mu = apply_jap_pow(u, -2.0);
  FourierField mv = apply_jap_pow(v, -2.0);
  EXPECT_NEAR(std::abs(inner_l2(mu, v) - inner_l2(u, mv)), 0.0, 1e-13);
}

TEST(Norms, LaplacianSymbol) {
  FourierField u = make_field({2, 4, 4});
  u.ref({1, -2, 0}) = cplx(1.0, 1.0);
  EXPECT_EQ(apply_laplacian(u).at({1, -2, 0}), cplx(-5.0, -5.0));
  EXPECT_DOUBLE_EQ(apply_jap_pow(u, -2.0).at({1, -2, 0}).real(), 1.0 / 6.0);
}
