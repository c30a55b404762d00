#include <gtest/gtest.h>

#include <random>

#include "joseph/joseph_ideal.hpp"

using namespace joseph;

namespace {

LieContext make(AlgebraKind kind, int n) { return build_context(AlgebraSpec{kind, n}); }

Rational lam_so(int n) { return Rational(-(n - 4), 4 * (n - 1) * (n - 2)); }
Rational lam_sp(int n) { return Rational(-1, 16 * (n + 1)); }
Rational lam_sl(int n) { return Rational(-1, 8 * (n + 1)); }

}  // namespace

TEST(JosephIdeal, CriticalLambdaSmallCases) {
  EXPECT_EQ(critical_lambda(make(AlgebraKind::SO, 5)), lam_so(5));
  EXPECT_EQ(critical_lambda(make(AlgebraKind::SO, 7)), lam_so(7));
  EXPECT_EQ(critical_lambda(make(AlgebraKind::SP, 2)), lam_sp(2));
  EXPECT_EQ(critical_lambda(make(AlgebraKind::SP, 3)), Rational(-1, 64));
  EXPECT_EQ(critical_lambda(make(AlgebraKind::SL, 3)), lam_sl(3));
  EXPECT_EQ(critical_lambda(make(AlgebraKind::SL, 5)), lam_sl(5));
}

TEST(JosephIdeal, ReductionsMatchDisplayedCoefficients) {
  struct Case {
    AlgebraKind kind;
    int n;
    Rational c1, c2, s2;
  };
  // (n-2)(n-4); (n-2)(n-4)/2 - 2(n-1)(n-2)^2 lambda
  // -4(n-1)(n+1); -2(n-1)(n+1) + 32(n-1)(n+1)^2 lambda
  // -n(n-2)/2; -n(n-2)/4 + 2n(n-2)(n+1) lambda
  const std::vector<Case> cases = {
      {AlgebraKind::SO, 5, 3, Rational(3, 2), -72},   {AlgebraKind::SO, 6, 8, 4, -160},
      {AlgebraKind::SP, 2, -12, -6, 288},             {AlgebraKind::SP, 3, -32, -16, 1024},
      {AlgebraKind::SL, 3, Rational(-3, 2), Rational(-3, 4), 24}, {AlgebraKind::SL, 4, -4, -2, 80},
  };
  for (const auto& c : cases) {
    LieContext ctx = make(c.kind, c.n);
    Tensor t = default_seed(ctx);
    Tensor s = special_tensor(ctx, t);
    Reduction r1 = reduce(ctx, s, t, PairChoice::First);
    Reduction r2 = reduce(ctx, s, t, PairChoice::Second);
    EXPECT_EQ(r1.coefficient, (AffineLambda{c.c1, 0})) << kind_name(c.kind) << c.n;
    EXPECT_EQ(r2.coefficient, (AffineLambda{c.c2, c.s2})) << kind_name(c.kind) << c.n;
    EXPECT_EQ(expected_reduction_formula(c.kind, PairChoice::First).at(c.n), r1.coefficient);
    EXPECT_EQ(expected_reduction_formula(c.kind, PairChoice::Second).at(c.n), r2.coefficient);
  }
}

TEST(JosephIdeal, ReductionIndependentOfSeed) {
  std::mt19937_64 rng(31);
  for (auto kind : {AlgebraKind::SO, AlgebraKind::SP, AlgebraKind::SL}) {
    LieContext ctx = make(kind, minimum_parameter(kind));
    Tensor t0 = default_seed(ctx);
    AffineLambda ref = reduce(ctx, special_tensor(ctx, t0), t0, PairChoice::Second).coefficient;
    for (int i = 0; i < 3; ++i) {
      Tensor t = random_element(ctx, rng);
      if (t.is_zero()) continue;
      EXPECT_EQ(reduce(ctx, special_tensor(ctx, t), t, PairChoice::Second).coefficient, ref);
    }
  }
}

TEST(JosephIdeal, SpecialTensorSymmetriesAndCartanParts) {
  for (auto kind : {AlgebraKind::SO, AlgebraKind::SP, AlgebraKind::SL}) {
    LieContext ctx = make(kind, minimum_parameter(kind));
    Tensor t = default_seed(ctx);
    Tensor s = special_tensor(ctx, t);
    EXPECT_EQ(shuffle(s, "cdabef"), -s);
    EXPECT_TRUE(cartan_vanishes(ctx, s, PairChoice::First));
    EXPECT_TRUE(cartan_vanishes(ctx, s, PairChoice::Second));
  }
}

TEST(JosephIdeal, SpecialTensorIsEquivariant) {
  std::mt19937_64 rng(32);
  for (auto kind : {AlgebraKind::SO, AlgebraKind::SP, AlgebraKind::SL}) {
    LieContext ctx = make(kind, minimum_parameter(kind));
    Tensor t = random_element(ctx, rng);
    for (int i = 0; i < 3; ++i) {
      Tensor z = random_element(ctx, rng);
      EXPECT_EQ(special_tensor(ctx, bracket(ctx, z, t)), act(ctx, z, special_tensor(ctx, t)));
    }
  }
}

TEST(JosephIdeal, ZIdentities) {
  std::mt19937_64 rng(33);
  LieContext so = make(AlgebraKind::SO, 5), sp = make(AlgebraKind::SP, 2), sl = make(AlgebraKind::SL, 3);
  for (int i = 0; i < 3; ++i) {
    Tensor t = random_element(so, rng);
    Tensor z = young_Z(so, special_tensor(so, t));
    EXPECT_EQ(z, z_display(so, t));
    EXPECT_TRUE(trace_free_block(so, z, 2).is_zero());
    EXPECT_TRUE(young_Z(sp, special_tensor(sp, random_element(sp, rng))).is_zero());
    Tensor u = random_element(sl, rng);
    Tensor zl = young_Z(sl, special_tensor(sl, u));
    EXPECT_EQ(zl, z_display(sl, u));
    EXPECT_TRUE(trace_free_block(sl, zl, 2).is_zero());
    EXPECT_FALSE(zl.is_zero());
  }
}

TEST(JosephIdeal, OrthogonalTraceDisplays) {
  for (int n = 5; n <= 6; ++n) {
    LieContext ctx = make(AlgebraKind::SO, n);
    Tensor t = default_seed(ctx);
    Tensor s = special_tensor(ctx, t);
    EXPECT_TRUE(first_pair_trace(ctx, s).is_zero());
    EXPECT_EQ(last_pairs_trace(ctx, s), Rational(2 * (n - 1) * (n - 2)) * t);
  }
}

TEST(JosephIdeal, GeneratorShape) {
  std::mt19937_64 rng(34);
  LieContext ctx = make(AlgebraKind::SL, 3);
  Tensor x = random_element(ctx, rng), y = random_element(ctx, rng);
  InhomogeneousElement g = generator(ctx, Rational(1, 7), x, y);
  EXPECT_TRUE(cartan_project(ctx, g.degree2).is_zero());
  EXPECT_EQ(g.degree1, Rational(-1, 2) * bracket(ctx, x, y));
  EXPECT_EQ(g.degree0, Rational(-1, 7) * killing(ctx, x, y));
}

TEST(JosephIdeal, QuotientClassification) {
  const Rational crit(-1, 48);
  EXPECT_EQ(classify_quotient(crit, crit), QuotientClass::Critical);
  EXPECT_EQ(classify_quotient(crit, Rational(0)), QuotientClass::CollapsedToScalars);
  EXPECT_EQ(classify_quotient(crit, Rational(1)), QuotientClass::CollapsedEntirely);
  EXPECT_EQ(quotient_class_name(QuotientClass::Critical), "critical");
}

TEST(JosephIdeal, ExpectedFormulaValues) {
  EXPECT_EQ(*expected_lambda_formula(AlgebraKind::SO)(Rational(8)), Rational(-1, 42));
  EXPECT_EQ(*expected_lambda_formula(AlgebraKind::SP)(Rational(2)), Rational(-1, 48));
  EXPECT_EQ(*expected_lambda_formula(AlgebraKind::SL)(Rational(4)), Rational(-1, 40));
}

TEST(JosephIdeal, SymplecticZeroPadding) {
  LieContext small = make(AlgebraKind::SP, 2), big = make(AlgebraKind::SP, 3);
  Tensor s = special_tensor(small, default_seed(small));
  Tensor padded = sp_zero_pad(s, 3);
  EXPECT_EQ(padded.dim(), 6);
  EXPECT_EQ(sp_restrict(padded, 2), s);
  EXPECT_TRUE(cartan_vanishes(big, padded, PairChoice::First));
  EXPECT_TRUE(cartan_vanishes(big, padded, PairChoice::Second));
  EXPECT_THROW(sp_zero_pad(s, 2), std::invalid_argument);
}

TEST(JosephIdeal, AffineLambdaText) {
  EXPECT_EQ((AffineLambda{Rational(3, 2), Rational(-72)}).str(), "3/2 - 72*lambda");
  EXPECT_EQ((AffineLambda{Rational(3), Rational(0)}).str(), "3");
}
