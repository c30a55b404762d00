#include <gtest/gtest.h>

#include <random>

#include "joseph/dense_tensor.hpp"
#include "joseph/linalg.hpp"
#include "joseph/polynomial.hpp"
#include "joseph/rational.hpp"

using namespace joseph;

namespace {

Tensor random_tensor(int dim, std::vector<Variance> var, std::mt19937_64& rng) {
  Tensor t(dim, std::move(var));
  std::uniform_int_distribution<int> d(-4, 4);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = Rational(d(rng));
  return t;
}

}  // namespace

TEST(Rational, NormalizesSignAndGcd) {
  EXPECT_EQ(Rational(2, 4).str(), "1/2");
  EXPECT_EQ(Rational(3, -6).str(), "-1/2");
  EXPECT_EQ(Rational(-8, -4).str(), "2");
  EXPECT_THROW(Rational(1, 0), std::invalid_argument);
}

TEST(Rational, ParseRoundTrip) {
  for (const char* s : {"0", "7", "-7", "3/5", "-12/35", "123456789012345678901234567891/7"})
    EXPECT_EQ(Rational::parse(s).str(), s);
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
}

TEST(Rational, OverflowPromotesExactly) {
  Rational big(1LL << 62);
  Rational sq = big * big;
  EXPECT_FALSE(sq.is_small());
  EXPECT_EQ(sq.str(), "21267647932558653966460912964485513216");
  EXPECT_EQ(sq / big, big);
  EXPECT_TRUE((sq / big).is_small());
}

TEST(Rational, FieldAxiomsOnRandomValues) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> d(-1000000007LL, 1000000007LL);
  auto draw = [&] {
    long long q = d(rng);
    return Rational(d(rng), q == 0 ? 1 : q);
  };
  for (int i = 0; i < 200; ++i) {
    Rational a = draw(), b = draw(), c = draw();
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    if (!b.is_zero()) EXPECT_EQ(a / b * b, a);
    EXPECT_EQ(a - a, Rational(0));
  }
}

TEST(DenseTensor, ShuffleRelabelsSlots) {
  std::mt19937_64 rng(1);
  Tensor t = random_tensor(3, std::vector<Variance>(4, Variance::Upper), rng);
  Tensor s = shuffle(t, "acbd");
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) EXPECT_EQ(s({a, b, c, d}), t({a, c, b, d}));
}

TEST(DenseTensor, ContractionIsTrace) {
  std::mt19937_64 rng(2);
  Tensor m = random_tensor(4, {Variance::Upper, Variance::Lower}, rng);
  Rational tr;
  for (int i = 0; i < 4; ++i) tr += m({i, i});
  EXPECT_EQ(contract(m, 0, 1)[0], tr);
  Tensor uu = random_tensor(4, {Variance::Upper, Variance::Upper}, rng);
  EXPECT_THROW(contract(uu, 0, 1), std::invalid_argument);
}

TEST(DenseTensor, SymmetrizeIsIdempotent) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Tensor t = random_tensor(3, std::vector<Variance>(3, Variance::Lower), rng);
    Tensor s = symmetrize(t, {0, 1, 2}, SymmetryMode::Symmetric);
    Tensor a = symmetrize(t, {0, 1, 2}, SymmetryMode::Antisymmetric);
    EXPECT_EQ(symmetrize(s, {0, 1, 2}, SymmetryMode::Symmetric), s);
    EXPECT_EQ(symmetrize(a, {0, 1, 2}, SymmetryMode::Antisymmetric), a);
    EXPECT_TRUE(symmetrize(s, {0, 1}, SymmetryMode::Antisymmetric).is_zero());
  }
}

TEST(DenseTensor, RaiseLowerRoundTrip) {
  std::mt19937_64 rng(4);
  Tensor g(3, {Variance::Lower, Variance::Lower});
  Tensor ginv(3, {Variance::Upper, Variance::Upper});
  // Anti-diagonal form is its own inverse.
  for (int i = 0; i < 3; ++i) {
    g({i, 2 - i}) = Rational(1);
    ginv({i, 2 - i}) = Rational(1);
  }
  Tensor t = random_tensor(3, {Variance::Upper, Variance::Upper}, rng);
  Tensor low = raise_lower(t, 1, g);
  EXPECT_EQ(low.variance(1), Variance::Lower);
  EXPECT_EQ(raise_lower(low, 1, ginv), t);
}

TEST(DenseTensor, TensorProductEntries) {
  std::mt19937_64 rng(5);
  Tensor a = random_tensor(3, {Variance::Upper}, rng), b = random_tensor(3, {Variance::Lower}, rng);
  Tensor p = tensor_product(a, b);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(p({i, j}), a({i}) * b({j}));
}

TEST(DenseTensor, ShapeLimits) {
  EXPECT_THROW(Tensor(kMaxTensorDim + 1, {Variance::Upper}), std::invalid_argument);
  EXPECT_THROW(Tensor(2, std::vector<Variance>(kMaxTensorRank + 1, Variance::Upper)), std::invalid_argument);
}

TEST(DenseTensor, MembershipSolve) {
  std::mt19937_64 rng(6);
  Tensor a = random_tensor(3, {Variance::Upper, Variance::Upper}, rng);
  Tensor b = random_tensor(3, {Variance::Upper, Variance::Upper}, rng);
  Tensor c = Rational(3, 2) * a - Rational(5) * b;
  auto sol = linear_solve_membership(c, {a, b});
  ASSERT_TRUE(sol);
  EXPECT_EQ((*sol)[0], Rational(3, 2));
  EXPECT_EQ((*sol)[1], Rational(-5));
  Tensor e(3, {Variance::Upper, Variance::Upper});
  e({0, 0}) = Rational(1);
  Tensor f(3, {Variance::Upper, Variance::Upper});
  f({1, 1}) = Rational(1);
  EXPECT_FALSE(linear_solve_membership(f, {e}));
}

TEST(Linalg, RankNullspaceInverse) {
  RationalMatrix m(3, 3);
  m << Rational(1), Rational(2), Rational(3), Rational(4), Rational(5), Rational(6), Rational(7), Rational(8),
      Rational(9);
  EXPECT_EQ(rank(m), 2);
  RationalMatrix k = nullspace(m);
  ASSERT_EQ(k.cols(), 1);
  RationalMatrix prod = m * k;
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(prod(i, 0).is_zero());
  EXPECT_FALSE(inverse(m));
  m(2, 2) = Rational(10);
  auto inv = inverse(m);
  ASSERT_TRUE(inv);
  RationalMatrix id = m * *inv;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(id(i, j), Rational(i == j ? 1 : 0));
  EXPECT_EQ(residue_rank(m), 3);
}

TEST(Linalg, SolveDetectsInconsistency) {
  RationalMatrix a(2, 1);
  a << Rational(1), Rational(2);
  RationalVector b(2);
  b << Rational(1), Rational(3);
  EXPECT_FALSE(solve(a, b));
  b(1) = Rational(2);
  auto x = solve(a, b);
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)(0), Rational(1));
}

TEST(Polynomial, InterpolationRecoversCubic) {
  Polynomial p({Rational(1, 2), Rational(-3), Rational(0), Rational(2)});
  std::vector<std::pair<Rational, Rational>> pts;
  for (int x = -2; x <= 4; ++x) pts.emplace_back(Rational(x), p(Rational(x)));
  auto fit = fit_polynomial(pts, 5);
  ASSERT_TRUE(fit);
  EXPECT_EQ(fit->poly, p);
  EXPECT_EQ(fit->spare_points, 3);
  EXPECT_EQ(p.str("n"), "2*n^3 - 3*n + 1/2");
}

TEST(Polynomial, RationalFitFindsLowestDegree) {
  // -(n-4)/(4(n-1)(n-2))
  std::vector<std::pair<Rational, Rational>> pts;
  for (int n = 5; n <= 10; ++n) pts.emplace_back(Rational(n), Rational(-(n - 4), 4 * (n - 1) * (n - 2)));
  auto fit = fit_rational(pts, 1);
  ASSERT_TRUE(fit);
  RationalFunction expected(Polynomial({Rational(4), Rational(-1)}),
                            Polynomial({Rational(8), Rational(-12), Rational(4)}));
  EXPECT_EQ(fit->function, expected);
  EXPECT_GE(fit->spare_points, 1);
}
