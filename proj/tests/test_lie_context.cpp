#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "joseph/lie_context.hpp"
#include "joseph/rep_theory.hpp"

using namespace joseph;

namespace {

LieContext make(AlgebraKind kind, int n, OrthogonalForm form = OrthogonalForm::Euclidean) {
  AlgebraSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.orthogonal_form = form;
  return build_context(spec);
}

// Killing scale from plain floating-point matrices: so(n) as skew matrices,
// sp(2n) as J S with S symmetric, sl(n) as trace-free matrices; ad computed by
// least squares on the vectorized basis.
double killing_scale_oracle(AlgebraKind kind, int n) {
  using M = Eigen::MatrixXd;
  std::vector<M> basis;
  int d = kind == AlgebraKind::SP ? 2 * n : n;
  if (kind == AlgebraKind::SO) {
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) {
        M m = M::Zero(d, d);
        m(a, b) = 1;
        m(b, a) = -1;
        basis.push_back(m);
      }
  } else if (kind == AlgebraKind::SP) {
    M j = M::Zero(d, d);
    j.topRightCorner(n, n) = M::Identity(n, n);
    j.bottomLeftCorner(n, n) = -M::Identity(n, n);
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) {
        M s = M::Zero(d, d);
        s(a, b) = 1;
        s(b, a) = 1;
        basis.push_back(j * s);
      }
  } else {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        if (a == b && a == d - 1) continue;
        M m = M::Zero(d, d);
        m(a, b) = 1;
        if (a == b) m(d - 1, d - 1) = -1;
        basis.push_back(m);
      }
  }
  const int dim = int(basis.size());
  M vecs(d * d, dim);
  for (int i = 0; i < dim; ++i) vecs.col(i) = Eigen::Map<const Eigen::VectorXd>(basis[i].data(), d * d);
  auto coords = [&](const M& x) {
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.data(), d * d);
    return Eigen::VectorXd(vecs.colPivHouseholderQr().solve(v));
  };
  auto ad = [&](const M& x) {
    M a(dim, dim);
    for (int j = 0; j < dim; ++j) a.col(j) = coords(x * basis[j] - basis[j] * x);
    return a;
  };
  const M& x = basis[0];
  M y = x.transpose();
  double killing = (ad(x) * ad(y)).trace();
  double tr = (x * y).trace();
  return killing / tr;
}

}  // namespace

TEST(LieContext, Dimensions) {
  EXPECT_EQ(make(AlgebraKind::SO, 7).algebra_dim(), 21);
  EXPECT_EQ(make(AlgebraKind::SP, 3).algebra_dim(), 21);
  EXPECT_EQ(make(AlgebraKind::SL, 4).algebra_dim(), 15);
  EXPECT_EQ(make(AlgebraKind::SP, 3).vector_dim(), 6);
}

TEST(LieContext, RangeChecks) {
  EXPECT_THROW(make(AlgebraKind::SO, 4), std::invalid_argument);
  EXPECT_THROW(make(AlgebraKind::SP, 1), std::invalid_argument);
  EXPECT_THROW(make(AlgebraKind::SL, 2), std::invalid_argument);
  EXPECT_THROW(make(AlgebraKind::SO, 13), std::invalid_argument);
  AlgebraSpec spec{AlgebraKind::SL, 2, true};
  EXPECT_EQ(build_context(spec).algebra_dim(), 3);
}

TEST(LieContext, KillingScaleMatchesMatrixOracle) {
  for (auto [kind, n] : std::vector<std::pair<AlgebraKind, int>>{
           {AlgebraKind::SO, 5}, {AlgebraKind::SO, 6}, {AlgebraKind::SP, 2}, {AlgebraKind::SP, 3},
           {AlgebraKind::SL, 3}, {AlgebraKind::SL, 4}}) {
    const double oracle = killing_scale_oracle(kind, n);
    EXPECT_NEAR(make(kind, n).killing_scale().to_double(), oracle, 1e-9) << kind_name(kind) << n;
    EXPECT_DOUBLE_EQ(oracle, std::round(oracle));
  }
}

TEST(LieContext, OrthogonalTraceCoefficients) {
  for (int n = 5; n <= 8; ++n) {
    LieContext ctx = make(AlgebraKind::SO, n);
    const auto& c = ctx.cartan_trace_coefficients();
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0], Rational(1, n - 2));
    EXPECT_EQ(c[1], Rational(-1, (n - 1) * (n - 2)));
  }
}

TEST(LieContext, BracketIsAntisymmetricAndSatisfiesJacobi) {
  std::mt19937_64 rng(21);
  for (auto kind : {AlgebraKind::SO, AlgebraKind::SP, AlgebraKind::SL}) {
    LieContext ctx = make(kind, minimum_parameter(kind));
    for (int i = 0; i < 20; ++i) {
      Tensor x = random_element(ctx, rng), y = random_element(ctx, rng), z = random_element(ctx, rng);
      EXPECT_EQ(bracket(ctx, x, y), -bracket(ctx, y, x));
      Tensor j = bracket(ctx, x, bracket(ctx, y, z)) + bracket(ctx, y, bracket(ctx, z, x)) +
                 bracket(ctx, z, bracket(ctx, x, y));
      EXPECT_TRUE(j.is_zero());
      EXPECT_TRUE(in_algebra(ctx, bracket(ctx, x, y)));
    }
  }
}

TEST(LieContext, KillingInvariance) {
  std::mt19937_64 rng(22);
  for (auto kind : {AlgebraKind::SO, AlgebraKind::SP, AlgebraKind::SL}) {
    LieContext ctx = make(kind, minimum_parameter(kind));
    for (int i = 0; i < 20; ++i) {
      Tensor x = random_element(ctx, rng), y = random_element(ctx, rng), z = random_element(ctx, rng);
      EXPECT_EQ(killing(ctx, x, y), killing(ctx, y, x));
      EXPECT_TRUE((killing(ctx, bracket(ctx, z, x), y) + killing(ctx, x, bracket(ctx, z, y))).is_zero());
    }
  }
}

TEST(LieContext, CoordinatesRoundTrip) {
  std::mt19937_64 rng(23);
  for (auto kind : {AlgebraKind::SO, AlgebraKind::SP, AlgebraKind::SL}) {
    LieContext ctx = make(kind, minimum_parameter(kind));
    Tensor x = random_element(ctx, rng);
    EXPECT_EQ(from_coordinates(ctx, coordinates(ctx, x)), x);
    EXPECT_EQ(from_matrix(ctx, to_matrix(ctx, x)), x);
  }
}

TEST(LieContext, ProjectorRankIsDimensionOfCartanSquare) {
  for (auto [kind, n] : std::vector<std::pair<AlgebraKind, int>>{
           {AlgebraKind::SO, 5}, {AlgebraKind::SP, 2}, {AlgebraKind::SL, 3}, {AlgebraKind::SO, 6}, {AlgebraKind::SL, 4}}) {
    RootSystem rs = root_system_of(kind, n);
    Weight two_theta = highest_root(rs);
    for (auto& x : two_theta) x *= 2;
    EXPECT_EQ(cartan_projector_rank(make(kind, n)), weyl_dim(rs, two_theta)) << kind_name(kind) << n;
  }
}

TEST(LieContext, ProjectorIsIdempotentAndEquivariant) {
  std::mt19937_64 rng(24);
  for (auto kind : {AlgebraKind::SO, AlgebraKind::SP, AlgebraKind::SL}) {
    LieContext ctx = make(kind, minimum_parameter(kind));
    for (int i = 0; i < 5; ++i) {
      Tensor v = tensor_product(random_element(ctx, rng), random_element(ctx, rng));
      Tensor p = cartan_project(ctx, v);
      EXPECT_EQ(cartan_project(ctx, p), p);
      Tensor z = random_element(ctx, rng);
      EXPECT_EQ(cartan_project(ctx, act(ctx, z, v)), act(ctx, z, p));
    }
  }
}

TEST(LieContext, TraceFreePartOfYoungTensor) {
  std::mt19937_64 rng(25);
  LieContext ctx = make(AlgebraKind::SL, 3);
  Tensor xy = tensor_product(random_element(ctx, rng), random_element(ctx, rng));
  EXPECT_EQ(trace_free_part(ctx, young_part(ctx, xy)), cartan_project(ctx, xy));
  Tensor d = kronecker<Rational>(3);
  Tensor pure = young_part(ctx, tensor_product(d, d));
  EXPECT_TRUE(trace_free_part(ctx, pure).is_zero());
  Tensor bad = tensor_product(random_element(ctx, rng), random_element(ctx, rng));
  if (!(young_part(ctx, bad) == bad)) EXPECT_THROW(trace_free_part(ctx, bad), std::invalid_argument);
}

TEST(LieContext, G2DecompositionReconstructs) {
  std::mt19937_64 rng(26);
  for (auto kind : {AlgebraKind::SO, AlgebraKind::SP, AlgebraKind::SL}) {
    LieContext ctx = make(kind, minimum_parameter(kind));
    Tensor w = tensor_product(random_element(ctx, rng), random_element(ctx, rng));
    G2Decomposition g = decompose_g2(ctx, w);
    Tensor back = g.cartan + embed_bracket(ctx, g.bracket_part) + embed_killing(ctx, g.killing_part) + g.remainder;
    EXPECT_EQ(back, w);
    EXPECT_EQ(cartan_project(ctx, g.remainder).is_zero(), true);
  }
}

TEST(LieContext, SplitFormHasWeights) {
  LieContext e = make(AlgebraKind::SO, 5);
  LieContext s = make(AlgebraKind::SO, 5, OrthogonalForm::Split);
  EXPECT_FALSE(e.vector_weights());
  ASSERT_TRUE(s.vector_weights());
  EXPECT_EQ(s.killing_scale(), e.killing_scale());
}
