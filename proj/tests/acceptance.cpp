// One line per acceptance criterion; exit status 1 if any line fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "joseph/joseph_ideal.hpp"
#include "joseph/rep_theory.hpp"
#include "joseph/verification.hpp"
#include "joseph/weyl_ops.hpp"

using namespace joseph;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

LieContext make(AlgebraKind kind, int n, bool allow = false) { return build_context(AlgebraSpec{kind, n, allow}); }

Rational lam_so(int n) { return Rational(-(n - 4), 4 * (n - 1) * (n - 2)); }
Rational lam_sp(int n) { return Rational(-1, 16 * (n + 1)); }
Rational lam_sl(int n) { return Rational(-1, 8 * (n + 1)); }

Polynomial nvar() { return Polynomial({Rational(0), Rational(1)}); }
Polynomial shift(int k) { return nvar() + Polynomial::constant(Rational(k)); }

// Literal reduction displays, built from factors.
ReductionFormula literal(AlgebraKind kind, PairChoice pair) {
  const Polynomial n = nvar();
  Polynomial c;
  Polynomial s;
  switch (kind) {
    case AlgebraKind::SO:
      c = shift(-2) * shift(-4);
      if (pair == PairChoice::Second) {
        c = Rational(1, 2) * c;
        s = Rational(-2) * shift(-1) * shift(-2) * shift(-2);
      }
      break;
    case AlgebraKind::SP:
      c = Rational(-4) * shift(-1) * shift(1);
      if (pair == PairChoice::Second) {
        c = Rational(1, 2) * c;
        s = Rational(32) * shift(-1) * shift(1) * shift(1);
      }
      break;
    case AlgebraKind::SL:
      c = Rational(-1, 2) * n * shift(-2);
      if (pair == PairChoice::Second) {
        c = Rational(1, 2) * c;
        s = Rational(2) * n * shift(-2) * shift(1);
      }
      break;
  }
  return {c, s};
}

Verdict critical_range(AlgebraKind kind, int lo, int hi, Rational (*closed)(int), double budget_s) {
  Verdict v;
  const auto t0 = Clock::now();
  for (int n = lo; n <= hi; ++n) {
    Rational got = critical_lambda(make(kind, n));
    v.require(got == closed(n), kind_name(kind) + std::to_string(n) + " got " + got.str());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  v.require(secs < budget_s, "took " + std::to_string(secs) + " s");
  std::ostringstream os;
  os << "n=" << lo << ".." << hi << " in " << std::fixed;
  os.precision(1);
  os << secs << " s";
  if (v.detail.empty()) v.detail = os.str();
  return v;
}

Verdict criterion4() {
  Verdict v;
  Rational a = critical_lambda(make(AlgebraKind::SO, 5)), b = critical_lambda(make(AlgebraKind::SP, 2));
  Rational c = critical_lambda(make(AlgebraKind::SO, 6)), d = critical_lambda(make(AlgebraKind::SL, 4));
  v.require(a == Rational(-1, 48) && b == a, "so5/sp2: " + a.str() + ", " + b.str());
  v.require(c == Rational(-1, 40) && d == c, "so6/sl4: " + c.str() + ", " + d.str());
  if (v.pass) v.detail = "so5 = sp2 = -1/48, so6 = sl4 = -1/40";
  return v;
}

Verdict criterion5() {
  Verdict v;
  const int seeds = 10;
  int checked = 0;
  for (int n = 5; n <= 8; ++n) {
    LieContext ctx = make(AlgebraKind::SO, n);
    for (int s = 0; s < seeds; ++s) {
      std::mt19937_64 rng(kDefaultSeed + 100 * n + s);
      Tensor t = random_element(ctx, rng);
      Tensor z = young_Z(ctx, special_tensor(ctx, t));
      v.require(z == z_display(ctx, t), "so" + std::to_string(n) + " display");
      v.require(trace_free_block(ctx, z, 2).is_zero(), "so" + std::to_string(n) + " trace-free part");
      ++checked;
    }
  }
  for (int n = 2; n <= 4; ++n) {
    LieContext ctx = make(AlgebraKind::SP, n);
    for (int s = 0; s < seeds; ++s) {
      std::mt19937_64 rng(kDefaultSeed + 200 * n + s);
      v.require(young_Z(ctx, special_tensor(ctx, random_element(ctx, rng))).is_zero(), "sp" + std::to_string(n));
      ++checked;
    }
  }
  for (int n = 3; n <= 6; ++n) {
    LieContext ctx = make(AlgebraKind::SL, n);
    for (int s = 0; s < seeds; ++s) {
      std::mt19937_64 rng(kDefaultSeed + 300 * n + s);
      Tensor z = young_Z(ctx, special_tensor(ctx, random_element(ctx, rng)));
      v.require(trace_free_block(ctx, z, 2).is_zero(), "sl" + std::to_string(n) + " not pure trace");
      ++checked;
    }
  }
  if (v.pass) v.detail = std::to_string(checked) + " seeded instances";
  return v;
}

Verdict criterion6() {
  Verdict v;
  struct Grid {
    AlgebraKind kind;
    int lo, hi;
  };
  for (Grid g : {Grid{AlgebraKind::SO, 5, 9}, Grid{AlgebraKind::SP, 2, 6}, Grid{AlgebraKind::SL, 3, 7}})
    for (PairChoice p : {PairChoice::First, PairChoice::Second}) {
      ReductionFit fit = fit_reduction_formula(g.kind, p, g.lo, g.hi);
      const std::string tag = kind_name(g.kind) + (p == PairChoice::First ? " first" : " second");
      v.require(fit.formula == literal(g.kind, p), tag + " got " + fit.formula.constant.str() + " + (" +
                                                       fit.formula.slope.str() + ")*lambda");
      v.require(fit.spare_points >= 1, tag + " unconfirmed");
    }
  if (v.pass) v.detail = "6 interpolated displays match";
  return v;
}

Verdict criterion7() {
  Verdict v;
  for (int n = 5; n <= 8; ++n) {
    LieContext ctx = make(AlgebraKind::SO, n);
    Tensor t = default_seed(ctx);
    Tensor s = special_tensor(ctx, t);
    v.require(first_pair_trace(ctx, s).is_zero(), "so" + std::to_string(n) + " first trace");
    v.require(last_pairs_trace(ctx, s) == Rational(2 * (n - 1) * (n - 2)) * t, "so" + std::to_string(n) + " last");
  }
  if (v.pass) v.detail = "so n=5..8";
  return v;
}

Verdict criterion8() {
  Verdict v;
  const auto t0 = Clock::now();
  // so(6) is sl(4), so it takes the sl values.
  for (int n = 5; n <= 8; ++n)
    v.require(hom_dims(AlgebraKind::SO, n) == (n == 6 ? HomDims{4, 1} : HomDims{2, 1}), "so" + std::to_string(n));
  for (int n = 2; n <= 4; ++n) v.require(hom_dims(AlgebraKind::SP, n) == HomDims{2, 1}, "sp" + std::to_string(n));
  for (int n = 3; n <= 6; ++n) v.require(hom_dims(AlgebraKind::SL, n) == HomDims{4, 1}, "sl" + std::to_string(n));
  v.require(hom_dims(AlgebraKind::SL, 2) == HomDims{1, 1}, "sl2");
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  v.require(secs < 120, "took " + std::to_string(secs) + " s");
  if (v.pass) v.detail = "so6 = sl4 gives (4,1); others as listed";
  return v;
}

Verdict criterion9() {
  Verdict v;
  KerPhiResult so = dim_hom_ker_phi(make(AlgebraKind::SO, 5), false);
  KerPhiResult sp = dim_hom_ker_phi(make(AlgebraKind::SP, 2), false);
  LieContext sl3 = make(AlgebraKind::SL, 3);
  KerPhiResult sl = dim_hom_ker_phi(sl3, false);
  KerPhiResult psi = dim_hom_ker_phi(sl3, true);
  v.require(so.dimension == 1 && so.special_tensor_in_span, "so5");
  v.require(sp.dimension == 1 && sp.special_tensor_in_span, "sp2");
  v.require(sl.dimension == 3 && sl.special_tensor_in_span, "sl3");
  // The special tensor must lie outside ker Psi to produce the critical value.
  v.require(psi.dimension == 2 && !psi.special_tensor_in_span, "sl3 with Psi");
  if (v.pass) v.detail = "1, 1, 3, 2";
  return v;
}

Verdict criterion10() {
  Verdict v;
  std::mt19937_64 rng(kDefaultSeed);
  for (int n = 2; n <= 4; ++n) v.require(commutator_check(n, rng, 0), "commutator n=" + std::to_string(n));
  const std::vector<int> degrees = {1, 2, 3, 4};
  for (int n = 3; n <= 4; ++n) {
    CompositionLaw law = composition_law(n, degrees, rng);
    const Rational nn(n);
    const Polynomial c1({nn / (2 * (nn + 2)), Rational(1) / (nn + 2)});
    const Rational den = 2 * nn * (nn + 1) * (nn + 2);
    const Polynomial c2({Rational(0), Rational(-1) / den, Rational(1) / den});
    v.require(law.c1 && law.c1->poly == c1, "c1 n=" + std::to_string(n));
    v.require(law.c2 && law.c2->poly == c2, "c2 n=" + std::to_string(n));
    if (law.c1 && law.c2) {
      v.require(law.c1->poly(-nn / 2).is_zero(), "c1(-n/2) n=" + std::to_string(n));
      v.require(-law.c2->poly(-nn / 2) == lam_sl(n), "critical weight n=" + std::to_string(n));
    }
  }
  // n = 2: c1 and c2 are not separately identifiable; the combined coefficient
  // and consistency with the closed forms are checked instead.
  CompositionLaw two = composition_law(2, degrees, rng);
  const Polynomial sl2({Rational(0), Rational(1, 12), Rational(1, 24)});
  v.require(two.combined && two.combined->poly == sl2, "sl2 combined");
  v.require(sl2_law(degrees, rng).poly == sl2, "sl2 law");
  v.require(sl2(Rational(-1)) == lam_sl(2), "sl2 critical weight");
  const Polynomial c1_2({Rational(1, 4), Rational(1, 4)}), c2_2({Rational(0), Rational(-1, 48), Rational(1, 48)});
  v.require(composition_law_holds(2, degrees, c1_2, c2_2, rng), "n=2 closed forms");
  IndependenceWitness s1 = independence_witness(3, 1, 1), s2 = independence_witness(3, 2, 2);
  v.require(s1.injective && s2.injective && s2.rank == 27, "independence");
  if (v.pass) v.detail = "n=2..4, critical weight gives -1/(8(n+1)), rank 27";
  return v;
}

Verdict criterion11() {
  Verdict v;
  LieContext small = make(AlgebraKind::SP, 2), big = make(AlgebraKind::SP, 3);
  Tensor padded = sp_zero_pad(special_tensor(small, default_seed(small)), 3);
  v.require(cartan_vanishes(big, padded, PairChoice::First), "first pair");
  v.require(cartan_vanishes(big, padded, PairChoice::Second), "second pair");
  if (v.pass) v.detail = "sp(4) tensor inside sp(6)";
  return v;
}

Rational ad_trace(const LieContext& ctx, const Tensor& x, const Tensor& y) {
  const int dim = ctx.algebra_dim();
  Rational tr;
  for (int j = 0; j < dim; ++j) {
    RationalVector e = RationalVector::Zero(dim);
    e(j) = Rational(1);
    Tensor b = from_coordinates(ctx, e);
    tr += coordinates(ctx, bracket(ctx, x, bracket(ctx, y, b)))(j);
  }
  return tr;
}

WeylElement random_operator(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(0, 2), c(-3, 3);
  WeylElement w(n);
  for (int t = 0; t < 3; ++t) {
    Exponents z(static_cast<std::size_t>(n)), d(static_cast<std::size_t>(n));
    for (auto& x : z) x = e(rng);
    for (auto& x : d) x = e(rng);
    w.add_term(z, d, Rational(c(rng)));
  }
  return w;
}

Verdict criterion12() {
  Verdict v;
  const int count = 100;
  std::mt19937_64 rng(kDefaultSeed);
  std::vector<LieContext> ctxs;
  for (auto kind : {AlgebraKind::SO, AlgebraKind::SP, AlgebraKind::SL}) ctxs.push_back(make(kind, minimum_parameter(kind)));
  int idem = 0, jacobi = 0, kill = 0, klimyk = 0, confluence = 0;
  for (int i = 0; i < count; ++i) {
    const LieContext& ctx = ctxs[i % ctxs.size()];
    Tensor x = random_element(ctx, rng), y = random_element(ctx, rng), z = random_element(ctx, rng);
    Tensor p = cartan_project(ctx, tensor_product(x, y));
    idem += cartan_project(ctx, p) == p;
    jacobi += (bracket(ctx, x, bracket(ctx, y, z)) + bracket(ctx, y, bracket(ctx, z, x)) +
               bracket(ctx, z, bracket(ctx, x, y)))
                  .is_zero();
    kill += killing(ctx, x, y) == ad_trace(ctx, x, y);
  }
  std::uniform_int_distribution<int> coin(0, 1);
  const std::vector<std::pair<RootType, int>> types = {{RootType::A, 2}, {RootType::B, 2}, {RootType::C, 2},
                                                       {RootType::D, 4}, {RootType::A, 3}};
  for (int i = 0; i < count; ++i) {
    auto [type, rank] = types[i % types.size()];
    RootSystem rs = make_root_system(type, rank);
    Weight a(static_cast<std::size_t>(rank)), b(static_cast<std::size_t>(rank));
    for (auto& w : a) w = coin(rng);
    for (auto& w : b) w = coin(rng);
    klimyk += total_dimension(rs, klimyk_decompose(rs, a, b)) == weyl_dim(rs, a) * weyl_dim(rs, b);
  }
  for (int i = 0; i < count; ++i) {
    WeylElement a = random_operator(2, rng), b = random_operator(2, rng), c = random_operator(2, rng);
    confluence += compose(compose(a, b), c) == compose(a, compose(b, c));
  }
  v.require(idem == count, "projector " + std::to_string(idem));
  v.require(jacobi == count, "jacobi " + std::to_string(jacobi));
  v.require(kill == count, "killing " + std::to_string(kill));
  v.require(klimyk == count, "klimyk " + std::to_string(klimyk));
  v.require(confluence == count, "normal ordering " + std::to_string(confluence));
  if (v.pass) v.detail = "5 suites x " + std::to_string(count) + " instances";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"critical lambda, so", [] { return critical_range(AlgebraKind::SO, 5, 9, lam_so, 60); }},
      {"critical lambda, sp", [] { return critical_range(AlgebraKind::SP, 2, 5, lam_sp, 30); }},
      {"critical lambda, sl", [] { return critical_range(AlgebraKind::SL, 3, 6, lam_sl, 30); }},
      {"isomorphism coincidences", criterion4},
      {"Z identities", criterion5},
      {"reduction displays", criterion6},
      {"orthogonal trace displays", criterion7},
      {"hom dimensions", criterion8},
      {"ker Phi dimensions", criterion9},
      {"Weyl realization", criterion10},
      {"sp zero-padding", criterion11},
      {"property suites", criterion12},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("error: ") + e.what();
    }
    failures += !v.pass;
    std::printf("criterion %2zu %s: %s (%s)\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
