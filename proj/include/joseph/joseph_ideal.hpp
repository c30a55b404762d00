#pragma once

#include <optional>
#include <string>

#include "joseph/dense_tensor.hpp"
#include "joseph/lie_context.hpp"
#include "joseph/polynomial.hpp"

namespace joseph {

/// constant + slope * lambda
struct AffineLambda {
  Rational constant;
  Rational slope;

  Rational operator()(const Rational& lambda) const { return constant + slope * lambda; }
  friend bool operator==(const AffineLambda&, const AffineLambda&) = default;
  std::string str() const;
};

/// Element of g(x)g + g + C.
struct InhomogeneousElement {
  Tensor degree2;
  Tensor degree1;
  Rational degree0;
};

/// X(x)Y - X.Y - 1/2 [X,Y] - lambda <X,Y>, where X.Y is the Cartan product.
InhomogeneousElement generator(const LieContext& ctx, const Rational& lambda, const Tensor& x, const Tensor& y);

/// Rank-6 element of Lambda^2 g (x) g, linear in the seed T in g. Antisymmetric
/// under exchange of the first two index pairs.
Tensor special_tensor(const LieContext& ctx, const Tensor& seed);

/// Symmetrization of S over its last four indices matching the Young pattern
/// of the Cartan square of each kind.
Tensor young_Z(const LieContext& ctx, const Tensor& s);

/// Closed-form Z built directly from the seed (so and sl only; the sp Z is zero).
Tensor z_display(const LieContext& ctx, const Tensor& seed);

enum class PairChoice { First, Second };

/// True if the Cartan projection of S on the chosen pair of g factors vanishes.
bool cartan_vanishes(const LieContext& ctx, const Tensor& s, PairChoice pair);

struct Reduction {
  /// S reduces to coefficient * direction in the first graded piece.
  AffineLambda coefficient;
  Tensor direction;
  /// True if the result was proportional to the transpose of the seed.
  bool transposed = false;
};

/// Rewrites S modulo the ideal, starting from the chosen pair: each degree-2
/// factor W is replaced by 1/2 bracket + lambda * Killing after checking its
/// Cartan part vanishes. Throws std::runtime_error if a Cartan part is
/// nonzero, a scalar remainder survives, or the result is not a multiple of T.
Reduction reduce(const LieContext& ctx, const Tensor& s, const Tensor& seed, PairChoice pair);

/// S^{ab}_{ab}^{ef} and S^{abcd}_{cd}: the metric contractions of the first
/// pair and of the last two pairs.
Tensor first_pair_trace(const LieContext& ctx, const Tensor& s);
Tensor last_pairs_trace(const LieContext& ctx, const Tensor& s);

/// The lambda at which both reductions of S agree. Throws std::runtime_error if
/// the two coefficients coincide identically.
Rational critical_lambda(const LieContext& ctx);
Rational critical_lambda(const Reduction& first, const Reduction& second);

/// Seed used by critical_lambda: a fixed integer element of g.
Tensor default_seed(const LieContext& ctx);

/// Closed forms the critical values should obey, as functions of n.
RationalFunction expected_lambda_formula(AlgebraKind kind);

/// Rational interpolant of critical_lambda over n_min..n_max (at least five points).
RationalFit fit_lambda_formula(AlgebraKind kind, int n_min, int n_max, bool allow_out_of_range = false);

/// Reduction coefficient as polynomials in n: constant(n) + slope(n) * lambda.
struct ReductionFormula {
  Polynomial constant;
  Polynomial slope;
  AffineLambda at(int n) const { return {constant(Rational(n)), slope(Rational(n))}; }
  friend bool operator==(const ReductionFormula&, const ReductionFormula&) = default;
};

/// Closed forms of the two reductions of S.
ReductionFormula expected_reduction_formula(AlgebraKind kind, PairChoice pair);

struct ReductionFit {
  ReductionFormula formula;
  /// Fewest spare points over the two interpolations.
  int spare_points = 0;
};

/// Polynomial interpolation of reduce() over n_min..n_max. Throws if the
/// samples do not fit a polynomial of degree below the point count.
ReductionFit fit_reduction_formula(AlgebraKind kind, PairChoice pair, int n_min, int n_max,
                                   bool allow_out_of_range = false);

enum class QuotientClass { Critical, CollapsedToScalars, CollapsedEntirely };
std::string quotient_class_name(QuotientClass c);
QuotientClass classify_quotient(const LieContext& ctx, const Rational& lambda);
QuotientClass classify_quotient(const Rational& critical, const Rational& lambda);

/// Embeds a rank-6 tensor over C^{2m} into C^{2n} (n > m) by adding zero
/// components: index i < m maps to i, index i >= m to i - m + n.
Tensor sp_zero_pad(const Tensor& s, int n);
/// Inverse of sp_zero_pad on the surviving entries.
Tensor sp_restrict(const Tensor& s, int m);

}  // namespace joseph
