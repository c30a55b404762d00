#include "joseph/joseph_ideal.hpp"

#include <array>
#include <stdexcept>

namespace joseph {

namespace {

// c0 + c1/n times F^{f1} F^{f2} T^{t}, index letters naming the six slots a..f.
struct Term {
  Rational c0, c1;
  const char* f1;
  const char* f2;
  const char* t;
};

const std::vector<Term>& so_special_terms() {
  static const std::vector<Term> terms = {
      {2, 0, "af", "be", "cd"},  {-2, 0, "ae", "bf", "cd"}, {-2, 0, "cf", "de", "ab"}, {2, 0, "ce", "df", "ab"},
      {1, 0, "ac", "be", "df"},  {-1, 0, "bc", "ae", "df"}, {-1, 0, "ad", "be", "cf"}, {1, 0, "bd", "ae", "cf"},
      {-1, 0, "ac", "bf", "de"}, {1, 0, "bc", "af", "de"},  {1, 0, "ad", "bf", "ce"},  {-1, 0, "bd", "af", "ce"},
      {-1, 0, "ac", "de", "bf"}, {1, 0, "ad", "ce", "bf"},  {1, 0, "bc", "de", "af"},  {-1, 0, "bd", "ce", "af"},
      {1, 0, "ac", "df", "be"},  {-1, 0, "ad", "cf", "be"}, {-1, 0, "bc", "df", "ae"}, {1, 0, "bd", "cf", "ae"},
  };
  return terms;
}

const std::vector<Term>& sp_special_terms() {
  static const std::vector<Term> terms = {
      {4, 0, "af", "be", "cd"},  {4, 0, "ae", "bf", "cd"},  {-4, 0, "cf", "de", "ab"}, {-4, 0, "ce", "df", "ab"},
      {-1, 0, "ac", "be", "df"}, {-1, 0, "bc", "ae", "df"}, {-1, 0, "ad", "be", "cf"}, {-1, 0, "bd", "ae", "cf"},
      {-1, 0, "ac", "bf", "de"}, {-1, 0, "bc", "af", "de"}, {-1, 0, "ad", "bf", "ce"}, {-1, 0, "bd", "af", "ce"},
      {-1, 0, "ac", "de", "bf"}, {-1, 0, "ad", "ce", "bf"}, {-1, 0, "bc", "de", "af"}, {-1, 0, "bd", "ce", "af"},
      {-1, 0, "ac", "df", "be"}, {-1, 0, "ad", "cf", "be"}, {-1, 0, "bc", "df", "ae"}, {-1, 0, "bd", "cf", "ae"},
  };
  return terms;
}

// Mixed-index terms: the first letter of each pair is the upper index.
const std::vector<Term>& sl_special_terms() {
  static const std::vector<Term> terms = {
      {1, 0, "ed", "cf", "ab"}, {0, -1, "cd", "ef", "ab"}, {-1, 0, "eb", "af", "cd"}, {0, 1, "ab", "ef", "cd"},
      {1, 0, "ad", "eb", "cf"}, {0, -1, "ad", "ef", "cb"}, {-1, 0, "cb", "ed", "af"}, {0, 1, "cb", "ef", "ad"},
  };
  return terms;
}

const std::vector<Term>& so_z_terms() {
  static const Rational h(1, 2);
  static const std::vector<Term> terms = {
      {2, 0, "ce", "df", "ab"}, {-2, 0, "de", "cf", "ab"}, {-h, 0, "ac", "de", "bf"}, {h, 0, "ad", "ce", "bf"},
      {h, 0, "bc", "de", "af"}, {-h, 0, "bd", "ce", "af"}, {h, 0, "ac", "df", "be"},  {-h, 0, "ad", "cf", "be"},
      {-h, 0, "bc", "df", "ae"}, {h, 0, "bd", "cf", "ae"}, {-h, 0, "ae", "cf", "bd"}, {h, 0, "ae", "df", "bc"},
      {h, 0, "be", "cf", "ad"}, {-h, 0, "be", "df", "ac"}, {h, 0, "af", "ce", "bd"},  {-h, 0, "af", "de", "bc"},
      {-h, 0, "bf", "ce", "ad"}, {h, 0, "bf", "de", "ac"},
  };
  return terms;
}

const std::vector<Term>& sl_z_terms() {
  static const Rational h(1, 2), q(1, 4);
  static const std::vector<Term> terms = {
      {h, 0, "ed", "cf", "ab"},  {-q, 0, "cb", "ed", "af"}, {0, -h, "cd", "ef", "ab"}, {0, q, "ab", "ef", "cd"},
      {0, -q, "ad", "ef", "cb"}, {0, q, "cb", "ef", "ad"},  {-q, 0, "eb", "cf", "ad"}, {0, -q, "cd", "af", "eb"},
      {0, q, "ab", "ed", "cf"},  {0, q, "ab", "cf", "ed"},  {0, q, "cd", "eb", "af"},  {0, -h, "cf", "ed", "ab"},
      {0, q, "ab", "cd", "ef"},  {0, -q, "af", "ed", "cb"}, {0, q, "cb", "ed", "af"},  {0, -q, "ad", "cf", "eb"},
      {0, q, "eb", "cf", "ad"},  {h, 0, "ef", "cd", "ab"},  {-q, 0, "cb", "ef", "ad"}, {-q, 0, "eb", "cd", "af"},
  };
  return terms;
}

Tensor assemble(const LieContext& ctx, const Tensor& seed, const std::vector<Term>& terms) {
  const Tensor f = ctx.kind() == AlgebraKind::SL ? kronecker(ctx.vector_dim()) : *ctx.form();
  const Tensor fft = tensor_product(tensor_product(f, f), seed);
  const Rational n(ctx.n());
  Tensor out;
  bool first = true;
  for (const auto& term : terms) {
    std::string pattern = std::string(term.f1) + term.f2 + term.t;
    Tensor piece = shuffle(fft, pattern);
    piece *= term.c0 + term.c1 / n;
    if (first) {
      out = std::move(piece);
      first = false;
    } else {
      out += piece;
    }
  }
  return out;
}

void require_seed(const LieContext& ctx, const Tensor& seed) {
  if (!in_algebra(ctx, seed)) throw std::invalid_argument("seed tensor does not have the algebra's symmetry");
}

Tensor lowered(const LieContext& ctx, Tensor t, std::initializer_list<int> slots) {
  if (!ctx.inverse_form()) return t;
  for (int s : slots) t = raise_lower(t, s, *ctx.inverse_form());
  return t;
}

}  // namespace

std::string AffineLambda::str() const {
  if (slope.is_zero()) return constant.str();
  std::string s = constant.is_zero() ? "" : constant.str() + (slope.sign() < 0 ? " - " : " + ");
  Rational mag = constant.is_zero() ? slope : slope.abs();
  return s + (mag == Rational(1) ? "" : mag == Rational(-1) ? "-" : mag.str() + "*") + "lambda";
}

InhomogeneousElement generator(const LieContext& ctx, const Rational& lambda, const Tensor& x, const Tensor& y) {
  if (!in_algebra(ctx, x) || !in_algebra(ctx, y)) throw std::invalid_argument("generator: inputs must lie in the algebra");
  InhomogeneousElement g;
  Tensor xy = tensor_product(x, y);
  g.degree2 = xy - cartan_project(ctx, xy);
  g.degree1 = bracket(ctx, x, y);
  g.degree1 *= Rational(-1, 2);
  g.degree0 = -lambda * killing(ctx, x, y);
  return g;
}

Tensor special_tensor(const LieContext& ctx, const Tensor& seed) {
  require_seed(ctx, seed);
  switch (ctx.kind()) {
    case AlgebraKind::SO: return assemble(ctx, seed, so_special_terms());
    case AlgebraKind::SP: return assemble(ctx, seed, sp_special_terms());
    case AlgebraKind::SL: return assemble(ctx, seed, sl_special_terms());
  }
  return {};
}

Tensor young_Z(const LieContext& ctx, const Tensor& s) {
  if (s.rank() != 6) throw std::invalid_argument("young_Z: expected a rank-6 tensor");
  switch (ctx.kind()) {
    case AlgebraKind::SO: {
      Tensor z = s + shuffle(s, "abefcd");
      z *= Rational(1, 3);
      Tensor w = shuffle(s, "abcedf") - shuffle(s, "abdecf") - shuffle(s, "abcfde") + shuffle(s, "abdfce");
      z.add_scaled(Rational(1, 6), w);
      return z;
    }
    case AlgebraKind::SP: return symmetrize(s, {2, 3, 4, 5}, SymmetryMode::Symmetric);
    case AlgebraKind::SL: {
      Tensor z = s + shuffle(s, "abedcf") + shuffle(s, "abcfed") + shuffle(s, "abefcd");
      z *= Rational(1, 4);
      return z;
    }
  }
  return s;
}

Tensor z_display(const LieContext& ctx, const Tensor& seed) {
  require_seed(ctx, seed);
  switch (ctx.kind()) {
    case AlgebraKind::SO: return assemble(ctx, seed, so_z_terms());
    case AlgebraKind::SL: return assemble(ctx, seed, sl_z_terms());
    case AlgebraKind::SP: {
      std::vector<Variance> v(6, Variance::Upper);
      return Tensor(ctx.vector_dim(), v);
    }
  }
  return {};
}

bool cartan_vanishes(const LieContext& ctx, const Tensor& s, PairChoice pair) {
  return cartan_project_block(ctx, s, pair == PairChoice::First ? 0 : 2).is_zero();
}

Reduction reduce(const LieContext& ctx, const Tensor& s, const Tensor& seed, PairChoice pair) {
  require_seed(ctx, seed);
  if (s.rank() != 6) throw std::invalid_argument("reduce: expected a rank-6 tensor");
  const int p = pair == PairChoice::First ? 0 : 2;
  if (!cartan_project_block(ctx, s, p).is_zero()) throw std::runtime_error("reduce: Cartan part of the chosen pair is nonzero");

  Tensor w = pair_bracket(ctx, s, p);
  w *= Rational(1, 2);
  Tensor slope = pair_killing(ctx, s, p);
  if (!in_g_tensor_g(ctx, w)) throw std::logic_error("reduce: residue left g (x) g");
  if (!cartan_project(ctx, w).is_zero()) throw std::runtime_error("reduce: Cartan part of the residue is nonzero");
  Tensor constant = pair_bracket(ctx, w, 0);
  constant *= Rational(1, 2);
  if (!pair_killing(ctx, w, 0)[0].is_zero()) throw std::runtime_error("reduce: scalar remainder survives");

  std::vector<Tensor> directions = {seed};
  if (ctx.kind() != AlgebraKind::SL) directions.push_back(shuffle(seed, "ba"));
  for (std::size_t k = 0; k < directions.size(); ++k) {
    auto c = linear_solve_membership(constant, {directions[k]});
    auto l = linear_solve_membership(slope, {directions[k]});
    if (c && l) return Reduction{AffineLambda{(*c)[0], (*l)[0]}, directions[k], k == 1};
  }
  throw std::runtime_error("reduce: result is not proportional to the seed");
}

Tensor first_pair_trace(const LieContext& ctx, const Tensor& s) {
  if (ctx.kind() == AlgebraKind::SL) return contract(contract(s, 1, 2), 0, 1);
  return contract(contract(lowered(ctx, s, {2, 3}), 0, 2), 0, 1);
}

Tensor last_pairs_trace(const LieContext& ctx, const Tensor& s) {
  if (ctx.kind() == AlgebraKind::SL) return contract(contract(s, 3, 4), 2, 3);
  return contract(contract(lowered(ctx, s, {4, 5}), 2, 4), 2, 3);
}

Rational critical_lambda(const Reduction& first, const Reduction& second) {
  const Rational ds = second.coefficient.slope - first.coefficient.slope;
  if (ds.is_zero()) throw std::runtime_error("critical_lambda: the two reductions have equal slope");
  return (first.coefficient.constant - second.coefficient.constant) / ds;
}

Tensor default_seed(const LieContext& ctx) {
  std::mt19937_64 rng(20240601ULL);
  Tensor t;
  do t = random_element(ctx, rng);
  while (t.is_zero());
  return t;
}

Rational critical_lambda(const LieContext& ctx) {
  Tensor seed = default_seed(ctx);
  Tensor s = special_tensor(ctx, seed);
  Reduction r1 = reduce(ctx, s, seed, PairChoice::First);
  Reduction r2 = reduce(ctx, s, seed, PairChoice::Second);
  if (r1.transposed != r2.transposed) {
    // Express both against the same direction.
    r2.coefficient.constant = -r2.coefficient.constant;
    r2.coefficient.slope = -r2.coefficient.slope;
  }
  return critical_lambda(r1, r2);
}

RationalFunction expected_lambda_formula(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::SO:
      return RationalFunction(Polynomial({Rational(4), Rational(-1)}), Polynomial({Rational(8), Rational(-12), Rational(4)}));
    case AlgebraKind::SP: return RationalFunction(Polynomial::constant(-1), Polynomial({Rational(16), Rational(16)}));
    case AlgebraKind::SL: return RationalFunction(Polynomial::constant(-1), Polynomial({Rational(8), Rational(8)}));
  }
  return {};
}

RationalFit fit_lambda_formula(AlgebraKind kind, int n_min, int n_max, bool allow_out_of_range) {
  if (n_max - n_min + 1 < 5) throw std::invalid_argument("fit_lambda_formula: need at least five sample points");
  std::vector<std::pair<Rational, Rational>> points;
  for (int n = n_min; n <= n_max; ++n) {
    AlgebraSpec spec{kind, n, allow_out_of_range};
    points.emplace_back(Rational(n), critical_lambda(build_context(spec)));
  }
  auto fit = fit_rational(points, 1);
  if (!fit) throw std::runtime_error("fit_lambda_formula: no consistent rational interpolant");
  return *fit;
}

ReductionFormula expected_reduction_formula(AlgebraKind kind, PairChoice pair) {
  const Polynomial n({Rational(0), Rational(1)});
  auto shift = [](int c) { return Polynomial({Rational(c), Rational(1)}); };
  const bool first = pair == PairChoice::First;
  switch (kind) {
    case AlgebraKind::SO: {
      Polynomial base = shift(-2) * shift(-4);
      if (first) return {base, Polynomial()};
      return {Rational(1, 2) * base, Rational(-2) * shift(-1) * shift(-2) * shift(-2)};
    }
    case AlgebraKind::SP: {
      Polynomial base = shift(-1) * shift(1);
      if (first) return {Rational(-4) * base, Polynomial()};
      return {Rational(-2) * base, Rational(32) * base * shift(1)};
    }
    case AlgebraKind::SL: {
      Polynomial base = n * shift(-2);
      if (first) return {Rational(-1, 2) * base, Polynomial()};
      return {Rational(-1, 4) * base, Rational(2) * base * shift(1)};
    }
  }
  throw std::invalid_argument("expected_reduction_formula: unknown kind");
}

ReductionFit fit_reduction_formula(AlgebraKind kind, PairChoice pair, int n_min, int n_max, bool allow_out_of_range) {
  std::vector<std::pair<Rational, Rational>> constants, slopes;
  for (int n = n_min; n <= n_max; ++n) {
    LieContext ctx = build_context(AlgebraSpec{kind, n, allow_out_of_range});
    Tensor seed = default_seed(ctx);
    Reduction r = reduce(ctx, special_tensor(ctx, seed), seed, pair);
    constants.emplace_back(Rational(n), r.coefficient.constant);
    slopes.emplace_back(Rational(n), r.coefficient.slope);
  }
  const int max_degree = int(constants.size()) - 1;
  auto c = fit_polynomial(constants, max_degree), s = fit_polynomial(slopes, max_degree);
  if (!c || !s) throw std::runtime_error("fit_reduction_formula: no polynomial interpolant");
  return {{c->poly, s->poly}, std::min(c->spare_points, s->spare_points)};
}

std::string quotient_class_name(QuotientClass c) {
  switch (c) {
    case QuotientClass::Critical: return "critical";
    case QuotientClass::CollapsedToScalars: return "collapsed-to-scalars";
    case QuotientClass::CollapsedEntirely: return "collapsed-entirely";
  }
  return "?";
}

QuotientClass classify_quotient(const Rational& critical, const Rational& lambda) {
  if (lambda == critical) return QuotientClass::Critical;
  if (lambda.is_zero()) return QuotientClass::CollapsedToScalars;
  return QuotientClass::CollapsedEntirely;
}

QuotientClass classify_quotient(const LieContext& ctx, const Rational& lambda) {
  return classify_quotient(critical_lambda(ctx), lambda);
}

Tensor sp_zero_pad(const Tensor& s, int n) {
  if (s.dim() % 2 != 0) throw std::invalid_argument("sp_zero_pad: odd dimension");
  const int m = s.dim() / 2;
  if (n <= m) throw std::invalid_argument("sp_zero_pad: target must be larger");
  Tensor out(2 * n, s.variances());
  std::array<int, kMaxTensorRank> target{};
  detail::for_each_index(s.dim(), s.rank(), [&](const auto& idx, std::size_t flat) {
    if (s[flat].is_zero()) return;
    for (int k = 0; k < s.rank(); ++k) target[std::size_t(k)] = idx[std::size_t(k)] < m ? idx[std::size_t(k)] : idx[std::size_t(k)] - m + n;
    out.at(std::span<const int>(target.data(), std::size_t(s.rank()))) = s[flat];
  });
  return out;
}

Tensor sp_restrict(const Tensor& s, int m) {
  if (s.dim() % 2 != 0) throw std::invalid_argument("sp_restrict: odd dimension");
  const int n = s.dim() / 2;
  if (m >= n) throw std::invalid_argument("sp_restrict: target must be smaller");
  Tensor out(2 * m, s.variances());
  std::array<int, kMaxTensorRank> source{};
  detail::for_each_index(2 * m, s.rank(), [&](const auto& idx, std::size_t flat) {
    for (int k = 0; k < s.rank(); ++k) source[std::size_t(k)] = idx[std::size_t(k)] < m ? idx[std::size_t(k)] : idx[std::size_t(k)] - m + n;
    out[flat] = s.at(std::span<const int>(source.data(), std::size_t(s.rank())));
  });
  return out;
}

}  // namespace joseph
