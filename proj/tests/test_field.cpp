#include <gtest/gtest.h>

#include "nlslab/field.hpp"
#include "oracles.hpp"

using namespace nlslab;

TEST(Field, MakeFieldValidatesSpec) {
  EXPECT_THROW(make_field({0, 4, 4}), std::invalid_argument);
  EXPECT_THROW(make_field({4, 4, 4}), std::invalid_argument);
  EXPECT_THROW(make_field({1, 0, 4}), std::invalid_argument);
  EXPECT_THROW(make_field({1, 4, 1}), std::invalid_argument);
  FourierField f = make_field({2, 3, 4});
  EXPECT_EQ(f.kcur, 3);
  EXPECT_EQ(f.size(), 49);
  for (const auto& c : f.a) EXPECT_EQ(c, cplx(0.0));
}

TEST(Field, IndexRoundTrip) {
  const int d = 3, k = 2;
  for (std::int64_t i = 0; i < cube_size(d, k); ++i) {
    Mode j = mode_at(d, k, i);
    EXPECT_EQ(mode_index(d, k, j), i);
  }
}

TEST(Field, ConjugateFlipsAndConjugates) {
  FourierField u = make_field({2, 3, 4});
  u.ref({1, -2, 0}) = cplx(2.0, 5.0);
  FourierField v = conj_field(u);
  EXPECT_EQ(v.at({-1, 2, 0}), cplx(2.0, -5.0));
  EXPECT_EQ(v.at({1, -2, 0}), cplx(0.0));
}

TEST(Field, LincombHandlesDifferentCutoffs) {
  LatticeSpec spec{1, 4, 4};
  FourierField u = make_field(spec, 2);
  FourierField v = make_field(spec, 5);
  u.ref({2, 0, 0}) = 1.0;
  v.ref({5, 0, 0}) = cplx(0.0, 3.0);
  v.ref({2, 0, 0}) = 1.0;
  FourierField w = sub(u, v);
  EXPECT_EQ(w.kcur, 5);
  EXPECT_EQ(w.at({2, 0, 0}), cplx(0.0));
  EXPECT_EQ(w.at({5, 0, 0}), cplx(0.0, -3.0));
}

TEST(Field, EmbedRestrictRoundTrip) {
  std::mt19937_64 rng(7);
  FourierField u = oracle::random_field({2, 3, 4}, rng, 1.0);
  FourierField big = embed(u, 5);
  EXPECT_EQ(big.kcur, 5);
  FourierField back = restrict_modes(big, 3);
  EXPECT_EQ(oracle::max_coeff_err(u, back), 0.0);
}

TEST(Field, JsonRoundTripIsExact) {
  std::mt19937_64 rng(42);
  for (int d = 1; d <= 3; ++d) {
    FourierField u = oracle::random_field({d, d == 3 ? 2 : 5, 4}, rng, 0.7);
    u.a[0] = cplx(1.0 / 3.0, -1e-17);
    nlohmann::json j = to_json(u);
    FourierField v = field_from_json(nlohmann::json::parse(j.dump()));
    ASSERT_EQ(u.size(), v.size());
    for (std::int64_t i = 0; i < u.size(); ++i) {
      EXPECT_EQ(u.a[i].real(), v.a[i].real());
      EXPECT_EQ(u.a[i].imag(), v.a[i].imag());
    }
  }
}

TEST(Field, JsonRejectsMalformedInput) {
  FourierField u = make_field({1, 2, 4});
  nlohmann::json j = to_json(u);
  j["format"] = "something-else";
  EXPECT_THROW(field_from_json(j), std::invalid_argument);
  nlohmann::json k = to_json(u);
  k["modes"].push_back({99, 0.0, 0.0});
  EXPECT_THROW(field_from_json(k), std::invalid_argument);
}
