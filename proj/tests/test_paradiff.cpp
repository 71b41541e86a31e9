#include <gtest/gtest.h>

#include "nlslab/paradiff.hpp"
#include "oracles.hpp"

using namespace nlslab;

namespace {
double rel_err(const FourierField& got, const FourierField& want) {
  double scale = 0.0;
  for (const auto& c : want.a) scale = std::max(scale, std::abs(c));
  return oracle::max_coeff_err(got, want) / std::max(scale, 1e-30);
}
}  // namespace

TEST(Paradiff, SingleModeKernelValues) {
  LatticeSpec spec{1, 16, 4};
  FourierField a = make_field(spec), h = make_field(spec);
  a.ref({1, 0, 0}) = cplx(2.0, 1.0);
  h.ref({10, 0, 0}) = cplx(0.0, 3.0);
  // |v|/<k> = 1/sqrt(101), inside the plateau for eps = 0.2.
  FourierField r = paraproduct_bruteforce(a, h, 0.2);
  EXPECT_NEAR(std::abs(r.at({11, 0, 0}) - cplx(2.0, 1.0) * cplx(0.0, 3.0)), 0.0, 1e-15);
  // eps = 0.01 pushes the same pair outside the support.
  FourierField z = paraproduct_bruteforce(a, h, 0.01);
  for (const auto& c : z.a) EXPECT_EQ(c, cplx(0.0));
  // High symbol frequency on a low input frequency never passes.
  FourierField a2 = make_field(spec), h2 = make_field(spec);
  a2.ref({5, 0, 0}) = 1.0;
  h2.ref({0, 0, 0}) = 1.0;
  FourierField z2 = paraproduct_bruteforce(a2, h2, 0.2);
  for (const auto& c : z2.a) EXPECT_EQ(c, cplx(0.0));
}

TEST(Paradiff, ShellPathMatchesBruteForce) {
  std::mt19937_64 rng(31);
  {
    LatticeSpec spec{1, 70, 2};
    FourierField a = oracle::random_field(spec, rng, 0.5);
    FourierField h = oracle::random_field(spec, rng, 0.2);
    // kcur 70 > 64 routes through the shell path.
    FourierField fast = paraproduct(a, h, 0.1);
    FourierField ref = paraproduct_bruteforce(a, h, 0.1);
    EXPECT_LT(rel_err(fast, ref), 1e-12);
  }
  {
    LatticeSpec spec{2, 5, 4};
    FourierField a = oracle::random_field(spec, rng, 0.5);
    FourierField h = oracle::random_field(spec, rng);
    EXPECT_LT(rel_err(paraproduct_shells(a, h, 0.2), paraproduct_bruteforce(a, h, 0.2)),
              1e-12);
  }
}

TEST(Paradiff, BonyPartitionReassemblesTheProduct) {
  std::mt19937_64 rng(32);
  for (double eps : {0.02, 0.1, 0.23}) {
    for (int d = 1; d <= 2; ++d) {
      LatticeSpec spec{d, d == 1 ? 12 : 4, 4};
      FourierField a = oracle::random_field(spec, rng, 0.4);
      FourierField b = oracle::random_field(spec, rng, 0.9);
      BonyDecomposition parts = bony_decompose(a, b, eps);
      FourierField sum = add(add(parts.t_ab, parts.t_ba), parts.remainder);
      EXPECT_LT(rel_err(sum, oracle::conv_direct(a, b)), 1e-12);
    }
  }
}

TEST(Paradiff, RegularizingRemainderSingleMode) {
  LatticeSpec spec{1, 16, 4};
  FourierField a = make_field(spec), h = make_field(spec);
  a.ref({1, 0, 0}) = cplx(0.5, -0.5);
  h.ref({10, 0, 0}) = cplx(4.0, 0.0);
  // Wide bump passes the pair, narrow bump rejects it: difference is 1.
  FourierField r = regularizing_remainder(a, h, 0.2, 0.05);
  EXPECT_NEAR(std::abs(r.at({11, 0, 0}) - cplx(2.0, -2.0)), 0.0, 1e-15);
  EXPECT_THROW(regularizing_remainder(a, h, 0.05, 0.2), std::invalid_argument);
  EXPECT_THROW(regularizing_remainder(a, h, 0.3, 0.05), std::invalid_argument);
}

TEST(Paradiff, RegularizingRemainderIsParaproductDifference) {
  std::mt19937_64 rng(33);
  LatticeSpec spec{1, 20, 4};
  FourierField a = oracle::random_field(spec, rng, 0.6);
  FourierField h = oracle::random_field(spec, rng);
  FourierField r = regularizing_remainder(a, h, 0.22, 0.07);
  FourierField diff =
      sub(paraproduct_bruteforce(a, h, 0.22), paraproduct_bruteforce(a, h, 0.07));
  EXPECT_LT(rel_err(r, diff), 1e-13);
}

TEST(Paradiff, AdjointPairingIdentity) {
  std::mt19937_64 rng(34);
  LatticeSpec spec{1, 12, 4};
  for (int t = 0; t < 8; ++t) {
    FourierField a = oracle::random_field(spec, rng, 0.5);
    FourierField h = oracle::random_field(spec, rng);
    FourierField v = oracle::random_field(spec, rng);
    const cplx lhs = inner_l2(paraproduct_bruteforce(a, h, 0.1), embed(v, 24));
    const cplx rhs = inner_l2(embed(h, 24), paraproduct_adjoint(a, v, 0.1));
    const double scale = norm_l2(a) * norm_l2(h) * norm_l2(v);
    EXPECT_LT(std::abs(lhs - rhs), 1e-11 * scale);
  }
}

TEST(Paradiff, ConjugationIntertwinesSymbolConjugate) {
  std::mt19937_64 rng(35);
  LatticeSpec spec{2, 4, 4};
  FourierField a = oracle::random_field(spec, rng, 0.4);
  FourierField h = oracle::random_field(spec, rng);
  FourierField lhs = conj_field(paraproduct_bruteforce(a, conj_field(h), 0.15));
  FourierField rhs = paraproduct_bruteforce(conj_field(a), h, 0.15);
  EXPECT_LT(rel_err(lhs, rhs), 1e-13);
}

TEST(Paradiff, AdjointDiffersFromConjugateSymbolAtFiniteFrequency) {
  // The adjoint kernel transposes the cutoff argument, so it is not literally
  // the paraproduct with conjugated symbol; record the finite-size gap.
  std::mt19937_64 rng(36);
  LatticeSpec spec{1, 12, 4};
  FourierField a = oracle::random_field(spec, rng, 0.5);
  FourierField v = oracle::random_field(spec, rng);
  FourierField gap = sub(paraproduct_bruteforce(conj_field(a), v, 0.1),
                         paraproduct_adjoint(a, v, 0.1));
  const double rel = norm_l2(gap) / (norm_l2(a) * norm_l2(v));
  RecordProperty("adjoint_gap_rel", std::to_string(rel));
  EXPECT_TRUE(std::isfinite(rel));
}

TEST(Paradiff, TruncationSplitsAtTheBall) {
  std::mt19937_64 rng(37);
  LatticeSpec spec{1, 16, 4};
  FourierField a = oracle::random_field(spec, rng, 0.5);
  FourierField h = oracle::random_field(spec, rng);
  FourierField whole = paraproduct_bruteforce(a, h, 0.1);
  FourierField split = add(paraproduct_low(a, h, 0.1, 8.0), paraproduct_high(a, h, 0.1, 8.0));
  EXPECT_LT(rel_err(split, whole), 1e-13);
  // Boundary mode |k| = N goes to the low side.
  FourierField hb = make_field(spec);
  hb.ref({8, 0, 0}) = 1.0;
  EXPECT_EQ(norm_l2(paraproduct_high(a, hb, 0.1, 8.0)), 0.0);
  EXPECT_GT(norm_l2(paraproduct_low(a, hb, 0.1, 8.0)), 0.0);
}

TEST(Paradiff, CommutatorSingleModeWeightDifference) {
  LatticeSpec spec{1, 16, 4};
  FourierField a = make_field(spec), h = make_field(spec);
  a.ref({1, 0, 0}) = cplx(1.0, 2.0);
  h.ref({10, 0, 0}) = cplx(3.0, 0.0);
  // Weights max{2,11} - max{2,10} = 1 at the output mode.
  FourierField r = commutator_weighted(1.0, a, h, 0.2, 2.0);
  EXPECT_NEAR(std::abs(r.at({11, 0, 0}) - cplx(3.0, 6.0)), 0.0, 1e-13);
}

TEST(Paradiff, CommutatorMatchesOperatorDifference) {
  std::mt19937_64 rng(38);
  LatticeSpec spec{1, 14, 4};
  const double R = 2.5;
  for (double q : {0.5, 1.0}) {
    FourierField a = oracle::random_field(spec, rng, 0.6);
    FourierField h = oracle::random_field(spec, rng);
    FourierField lhs = commutator_weighted(q, a, h, 0.1, R);
    FourierField rhs = sub(apply_jjap_pow(paraproduct_bruteforce(a, h, 0.1), q, R),
                           paraproduct_bruteforce(a, apply_jjap_pow(h, q, R), 0.1));
    EXPECT_LT(rel_err(lhs, rhs), 1e-12);
  }
}

TEST(Paradiff, RejectsInvalidCutoff) {
  LatticeSpec spec{1, 4, 4};
  FourierField a = make_field(spec), h = make_field(spec);
  EXPECT_THROW(paraproduct_bruteforce(a, h, 0.25), std::invalid_argument);
  EXPECT_THROW(paraproduct_bruteforce(a, h, 0.0), std::invalid_argument);
}
