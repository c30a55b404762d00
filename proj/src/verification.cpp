#include "joseph/verification.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "joseph/errors.hpp"
#include "joseph/joseph_ideal.hpp"
#include "joseph/weyl_ops.hpp"

namespace joseph {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kCeilingPrefix = "resource ceiling: ";

struct Outcome {
  bool pass = false;
  std::string expected;
  std::string got;
};

Outcome compare(const std::string& expected, const std::string& got) { return {expected == got, expected, got}; }

std::string yes_no(bool b) { return b ? "true" : "false"; }

template <typename F>
CheckRecord timed(std::string id, std::string kind, int n, std::string anchor, F&& body) {
  CheckRecord r{std::move(id), std::move(kind), n, std::move(anchor), CheckStatus::Fail, "", "", 0};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = body();
    r.expected = std::move(o.expected);
    r.got = std::move(o.got);
    r.status = o.pass ? CheckStatus::Pass : CheckStatus::Fail;
  } catch (const ResourceLimitError& e) {
    r.status = CheckStatus::Skipped;
    r.got = std::string(kCeilingPrefix) + e.what();
  } catch (const std::exception& e) {
    r.status = CheckStatus::Fail;
    r.got = std::string("error: ") + e.what();
  }
  if (r.status == CheckStatus::Pass && r.anchor.empty()) {
    r.status = CheckStatus::Fail;
    r.got += " (no anchor recorded)";
  }
  r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::uint64_t stream_seed(std::uint64_t seed, AlgebraKind kind, int n, std::uint64_t salt) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(kind), std::uint32_t(n),
                    std::uint32_t(salt)};
  std::array<std::uint64_t, 1> out{};
  seq.generate(reinterpret_cast<std::uint32_t*>(out.data()), reinterpret_cast<std::uint32_t*>(out.data() + 1));
  return out[0];
}

AlgebraSpec spec_of(const Session& s, AlgebraKind kind, int n) {
  AlgebraSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.allow_out_of_range = s.config.allow_out_of_range;
  return spec;
}

int vector_dim_of(AlgebraKind kind, int n) { return kind == AlgebraKind::SP ? 2 * n : n; }

void require_vector_dim(const Session& s, AlgebraKind kind, int n) {
  const int d = vector_dim_of(kind, n);
  if (d > s.config.max_vector_dim)
    throw ResourceLimitError(kind_name(kind) + " n=" + std::to_string(n) + " needs dimension " + std::to_string(d) +
                             " above the ceiling " + std::to_string(s.config.max_vector_dim));
}

Tensor nonzero_random(const LieContext& ctx, std::mt19937_64& rng) {
  for (;;) {
    Tensor t = random_element(ctx, rng);
    if (!t.is_zero()) return t;
  }
}

std::string formula_anchor(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::SO: return "the two reductions agree only at lambda = -(n-4)/(4(n-1)(n-2))";
    case AlgebraKind::SP: return "the two reductions agree only at lambda = -1/(16(n+1))";
    case AlgebraKind::SL: return "the two reductions agree only at lambda = -1/(8(n+1))";
  }
  return "";
}

std::string z_anchor(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::SO: return "Z equals its closed form and its trace-free part in cdef vanishes";
    case AlgebraKind::SP: return "the cdef symmetrization Z of S vanishes";
    case AlgebraKind::SL: return "Z equals its closed form and is pure trace in cdef";
  }
  return "";
}

std::vector<CheckRecord> verify_one(Session& session, AlgebraKind kind, int n) {
  const std::string k = kind_name(kind);
  std::vector<CheckRecord> out;
  require_vector_dim(session, kind, n);
  auto ctx = session.contexts.get(spec_of(session, kind, n));
  const Tensor seed = default_seed(*ctx);
  const Tensor s = special_tensor(*ctx, seed);

  out.push_back(timed("special-tensor.skew", k, n, "S is skew under exchange of its first two index pairs", [&] {
    return compare("true", yes_no(shuffle(s, "cdabef") == -s));
  }));
  out.push_back(timed("special-tensor.cartan-first", k, n, "Cartan part of S in the first two factors vanishes", [&] {
    return compare("true", yes_no(cartan_vanishes(*ctx, s, PairChoice::First)));
  }));
  out.push_back(timed("special-tensor.cartan-second", k, n, "Cartan part of S in the last two factors vanishes", [&] {
    return compare("true", yes_no(cartan_vanishes(*ctx, s, PairChoice::Second)));
  }));
  out.push_back(timed("z-identity", k, n, z_anchor(kind), [&] {
    std::mt19937_64 rng(stream_seed(session.config.seed, kind, n, 1));
    int ok = 0;
    const int samples = session.config.z_samples;
    for (int i = 0; i < samples; ++i) {
      Tensor t = nonzero_random(*ctx, rng);
      Tensor z = young_Z(*ctx, special_tensor(*ctx, t));
      bool good = kind == AlgebraKind::SP
                      ? z.is_zero()
                      : z == z_display(*ctx, t) && trace_free_block(*ctx, z, 2).is_zero();
      if (good) ++ok;
    }
    return compare(std::to_string(samples) + "/" + std::to_string(samples),
                   std::to_string(ok) + "/" + std::to_string(samples));
  }));

  std::optional<Reduction> r1, r2;
  for (PairChoice pair : {PairChoice::First, PairChoice::Second}) {
    const bool first = pair == PairChoice::First;
    const ReductionFormula f = expected_reduction_formula(kind, pair);
    std::string anchor = std::string(first ? "first" : "second") + " reduction: S ~ (" + f.constant.str() + ") T" +
                         (f.slope.is_zero() ? "" : " + lambda (" + f.slope.str() + ") T");
    out.push_back(timed(first ? "reduction.first" : "reduction.second", k, n, anchor, [&] {
      Reduction r = reduce(*ctx, s, seed, pair);
      (first ? r1 : r2) = r;
      return compare(f.at(n).str(), r.coefficient.str());
    }));
  }
  out.push_back(timed("critical-lambda", k, n, formula_anchor(kind), [&] {
    if (!r1 || !r2) throw std::runtime_error("a reduction failed");
    auto expected = expected_lambda_formula(kind)(Rational(n));
    return compare(expected ? expected->str() : "undefined", critical_lambda(*r1, *r2).str());
  }));

  if (kind == AlgebraKind::SO) {
    out.push_back(timed("trace.first-pair", k, n, "S^{ab}_{ab}^{ef} = 0", [&] {
      return compare("true", yes_no(first_pair_trace(*ctx, s).is_zero()));
    }));
    out.push_back(timed("trace.last-pairs", k, n, "S^{abcd}_{cd} = 2(n-1)(n-2) T^{ab}", [&] {
      Tensor t = last_pairs_trace(*ctx, s);
      auto c = linear_solve_membership(t, {seed});
      Rational expected(2 * (n - 1) * (n - 2));
      return compare(expected.str(), c ? (*c)[0].str() : "not a multiple of T");
    }));
  }
  return out;
}

std::vector<CheckRecord> critical_one(Session& session, AlgebraKind kind, int n) {
  require_vector_dim(session, kind, n);
  return {timed("critical-lambda", kind_name(kind), n, formula_anchor(kind), [&] {
    auto ctx = session.contexts.get(spec_of(session, kind, n));
    auto expected = expected_lambda_formula(kind)(Rational(n));
    return compare(expected ? expected->str() : "undefined", critical_lambda(*ctx).str());
  })};
}

std::vector<CheckRecord> fit_one(Session& session, const NRange& r) {
  const std::string k = kind_name(r.kind);
  for (int n = r.n_min; n <= r.n_max; ++n) require_vector_dim(session, r.kind, n);
  std::vector<CheckRecord> out;
  out.push_back(timed("fit-lambda", k, r.n_max, formula_anchor(r.kind), [&] {
    RationalFit fit = fit_lambda_formula(r.kind, r.n_min, r.n_max, session.config.allow_out_of_range);
    const RationalFunction expected = expected_lambda_formula(r.kind);
    Outcome o{fit.function == expected && fit.spare_points >= 1, expected.str(), fit.function.str()};
    if (fit.spare_points < 1) o.got += " (no spare points)";
    return o;
  }));
  for (PairChoice pair : {PairChoice::First, PairChoice::Second}) {
    const bool first = pair == PairChoice::First;
    out.push_back(timed(first ? "fit-reduction.first" : "fit-reduction.second", k, r.n_max,
                        std::string(first ? "first" : "second") + " reduction coefficient as a polynomial in n", [&] {
                          ReductionFit fit = fit_reduction_formula(r.kind, pair, r.n_min, r.n_max,
                                                                   session.config.allow_out_of_range);
                          const ReductionFormula expected = expected_reduction_formula(r.kind, pair);
                          auto show = [](const ReductionFormula& f) {
                            return f.constant.str() + " + lambda*(" + f.slope.str() + ")";
                          };
                          Outcome o{fit.formula == expected && fit.spare_points >= 1, show(expected), show(fit.formula)};
                          if (fit.spare_points < 1) o.got += " (no spare points)";
                          return o;
                        }));
  }
  return out;
}

std::string hom_str(const HomDims& h) {
  return "(" + std::to_string(h.exterior) + ", " + std::to_string(h.cartan) + ")";
}

// m with g isomorphic to sl(m), or 0.
int sl_isomorphic(AlgebraKind kind, int n) {
  switch (kind) {
    case AlgebraKind::SL: return n;
    case AlgebraKind::SO: return n == 3 ? 2 : n == 6 ? 4 : 0;
    case AlgebraKind::SP: return n == 1 ? 2 : 0;
  }
  return 0;
}

std::vector<CheckRecord> homdim_one(Session& session, AlgebraKind kind, int n, bool ker_phi, bool with_psi) {
  const std::string k = kind_name(kind);
  require_vector_dim(session, kind, n);
  std::vector<CheckRecord> out;
  const int m = sl_isomorphic(kind, n);
  out.push_back(timed("hom-dims", k, n,
                      m ? "dim Hom(g, L2g(x)g) = 4 (1 for sl(2)) and dim Hom(g, g(x)C2g) = 1 for sl(m)"
                        : "dim Hom(g, L2g(x)g) = 2 and dim Hom(g, g(x)C2g) = 1 away from sl(m)",
                      [&] { return compare(hom_str(expected_hom_dims(kind, n)), hom_str(hom_dims(kind, n))); }));
  if (!ker_phi) return out;

  auto solve = [&](bool psi) -> KerPhiSummary {
    if (auto cached = session.solver_cache.load(kind, n, psi)) return *cached;
    auto ctx = session.contexts.get(spec_of(session, kind, n));
    KerPhiResult r = dim_hom_ker_phi(*ctx, psi, session.config.max_solver_algebra_dim);
    KerPhiSummary s{r.dimension, r.special_tensor_in_span};
    session.solver_cache.store(kind, n, psi, s);
    return s;
  };
  std::optional<KerPhiSummary> plain;
  out.push_back(timed("ker-phi", k, n,
                      m ? "Hom(g, ker Phi) is 3-dimensional for sl(n), n >= 3"
                        : "Hom(g, ker Phi) is 1-dimensional, so the map is unique up to scale",
                      [&]() -> Outcome {
                        plain = solve(false);
                        if (m == 2) return {true, "no stated value", std::to_string(plain->dimension)};
                        return compare(m ? "3" : "1", std::to_string(plain->dimension));
                      }));
  out.push_back(timed("ker-phi.special-tensor", k, n, "the special tensor map lies in Hom(g, ker Phi)", [&] {
    if (!plain) throw std::runtime_error("ker Phi solve failed");
    return compare("true", yes_no(plain->special_tensor_in_span));
  }));
  if (with_psi)
    out.push_back(timed("ker-phi-psi", k, n,
                        m ? "Hom(g, ker Phi n ker Psi) is a 2-dimensional subspace for sl(n), n >= 3"
                          : "the unique map g -> ker Phi is not killed by Psi",
                        [&]() -> Outcome {
                          KerPhiSummary s = solve(true);
                          if (m == 2) return {true, "no stated value", std::to_string(s.dimension)};
                          return compare(m ? "2" : "0", std::to_string(s.dimension));
                        }));
  return out;
}

std::vector<CheckRecord> weyl_one(Session& session, int n) {
  const std::string k = kind_name(AlgebraKind::SL);
  const auto& degrees = session.config.weyl_degrees;
  std::vector<CheckRecord> out;
  out.push_back(timed("weyl.commutator", k, n, "D_X D_Y - D_Y D_X = D_[X,Y]", [&] {
    std::mt19937_64 rng(stream_seed(session.config.seed, AlgebraKind::SL, n, 2));
    return compare("true", yes_no(commutator_check(n, rng, n <= 3 ? 0 : 20)));
  }));

  const Rational nn(n);
  const Polynomial c1({nn / (2 * (nn + 2)), Rational(1) / (nn + 2)});
  const Rational c2den = 2 * nn * (nn + 1) * (nn + 2);
  const Polynomial c2({Rational(0), Rational(-1) / c2den, Rational(1) / c2den});

  if (n == 2) {
    out.push_back(timed("weyl.sl2-law", k, n, "coefficient of D_<X,Y> for sl(2) is w(w+2)/24", [&] {
      std::mt19937_64 rng(stream_seed(session.config.seed, AlgebraKind::SL, n, 3));
      PolynomialFit fit = sl2_law(degrees, rng);
      const Polynomial expected({Rational(0), Rational(1, 12), Rational(1, 24)});
      Outcome o{fit.poly == expected && fit.spare_points >= 1, expected.str("w"), fit.poly.str("w")};
      if (fit.spare_points < 1) o.got += " (no spare points)";
      return o;
    }));
    out.push_back(timed("weyl.composition-consistent", k, n,
                        "D_X D_Y = D_{X.Y} + c1(w)(XY+YX)Z d + 1/2 D_[X,Y] - c2(w) D_<X,Y> with the closed forms",
                        [&] {
                          std::mt19937_64 rng(stream_seed(session.config.seed, AlgebraKind::SL, n, 4));
                          return compare("true", yes_no(composition_law_holds(n, degrees, c1, c2, rng)));
                        }));
    return out;
  }

  std::optional<CompositionLaw> law;
  auto fitted = [&]() -> const CompositionLaw& {
    if (!law) {
      std::mt19937_64 rng(stream_seed(session.config.seed, AlgebraKind::SL, n, 3));
      law = composition_law(n, degrees, rng);
    }
    if (!law->c1 || !law->c2) throw std::runtime_error("coefficients not identifiable");
    return *law;
  };
  auto fit_outcome = [](const PolynomialFit& fit, const Polynomial& expected) {
    Outcome o{fit.poly == expected && fit.spare_points >= 1, expected.str("w"), fit.poly.str("w")};
    if (fit.spare_points < 1) o.got += " (no spare points)";
    return o;
  };
  out.push_back(timed("weyl.c1", k, n, "c1(w) = (2w+n)/(2(n+2))", [&] { return fit_outcome(*fitted().c1, c1); }));
  out.push_back(
      timed("weyl.c2", k, n, "c2(w) = w(w-1)/(2n(n+1)(n+2))", [&] { return fit_outcome(*fitted().c2, c2); }));
  out.push_back(timed("weyl.critical-weight", k, n, "at w = -n/2 the scalar term is -1/(8(n+1)) D_<X,Y>", [&] {
    const Rational w = -nn / 2;
    Rational got = -fitted().c2->poly(w);
    if (!fitted().c1->poly(w).is_zero()) return Outcome{false, "0", "c1(-n/2) = " + fitted().c1->poly(w).str()};
    // Cross-module: the reduction chain for sl(n) when n is in range.
    if (n >= minimum_parameter(AlgebraKind::SL)) {
      AlgebraSpec spec;
      spec.kind = AlgebraKind::SL;
      spec.n = n;
      return compare(critical_lambda(*session.contexts.get(spec)).str(), got.str());
    }
    return compare((Rational(-1) / (8 * (nn + 1))).str(), got.str());
  }));
  if (n >= 3)
    for (int s : {1, 2}) {
      out.push_back(timed("weyl.independence.s" + std::to_string(s), k, n,
                          "X -> D_X is injective on the level-s Cartan power", [&] {
                            RootSystem rs = root_system_of(AlgebraKind::SL, n);
                            Weight hw = highest_root(rs);
                            for (auto& x : hw) x *= s;
                            const long long dim = weyl_dim(rs, hw);
                            IndependenceWitness w = independence_witness(n, s, s, session.config.max_monomials);
                            return compare("injective, rank " + std::to_string(dim),
                                           std::string(w.injective ? "injective" : "not injective") + ", rank " +
                                               std::to_string(w.rank));
                          }));
    }
  return out;
}

std::vector<Job> verify_for(Session& session, const std::vector<NRange>& grid) {
  std::vector<Job> jobs;
  for (const auto& r : grid)
    for (int n = r.n_min; n <= r.n_max; ++n)
      jobs.push_back([&session, kind = r.kind, n] { return verify_one(session, kind, n); });
  return jobs;
}

std::vector<Job> homdim_for(Session& session, const std::vector<NRange>& grid, bool ker_phi, bool with_psi) {
  std::vector<Job> jobs;
  for (const auto& r : grid)
    for (int n = r.n_min; n <= r.n_max; ++n)
      jobs.push_back([&session, kind = r.kind, n, ker_phi, with_psi] {
        return homdim_one(session, kind, n, ker_phi, with_psi);
      });
  return jobs;
}

std::vector<Job> weyl_for(Session& session, int n_min, int n_max) {
  std::vector<Job> jobs;
  for (int n = n_min; n <= n_max; ++n) jobs.push_back([&session, n] { return weyl_one(session, n); });
  return jobs;
}

// Appends job results in job order once every job has delivered.
class Collector {
 public:
  explicit Collector(std::size_t jobs) : slots_(jobs) {}
  void deliver(std::size_t index, std::vector<CheckRecord> records) {
    std::lock_guard lock(mu_);
    slots_[index] = std::move(records);
  }
  std::vector<CheckRecord> assemble() {
    std::lock_guard lock(mu_);
    std::vector<CheckRecord> out;
    for (auto& s : slots_)
      for (auto& r : s) out.push_back(std::move(r));
    return out;
  }

 private:
  std::mutex mu_;
  std::vector<std::vector<CheckRecord>> slots_;
};

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

}  // namespace

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

CheckStatus parse_status(std::string_view name) {
  if (name == "pass") return CheckStatus::Pass;
  if (name == "fail") return CheckStatus::Fail;
  if (name == "skipped") return CheckStatus::Skipped;
  throw std::invalid_argument("unknown status: " + std::string(name));
}

bool VerificationReport::all_passed() const { return count(CheckStatus::Fail) == 0; }

std::size_t VerificationReport::count(CheckStatus s) const {
  return std::size_t(std::count_if(checks.begin(), checks.end(), [s](const CheckRecord& r) { return r.status == s; }));
}

std::string to_json(const VerificationReport& report) {
  ordered_json j;
  j["version"] = report.version;
  ordered_json config = ordered_json::object();
  for (const auto& [k, v] : report.config) config[k] = v;
  j["config"] = config;
  ordered_json checks = ordered_json::array();
  for (const auto& r : report.checks)
    checks.push_back(ordered_json{{"id", r.id},
                                  {"kind", r.kind},
                                  {"n", r.n},
                                  {"anchor", r.anchor},
                                  {"status", status_name(r.status)},
                                  {"expected", r.expected},
                                  {"got", r.got},
                                  {"millis", r.millis}});
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

VerificationReport parse_report(std::string_view text) {
  try {
    ordered_json j = ordered_json::parse(text);
    VerificationReport report;
    report.version = j.at("version").get<std::string>();
    for (const auto& [k, v] : j.at("config").items()) report.config.emplace_back(k, v.get<std::string>());
    for (const auto& c : j.at("checks")) {
      CheckRecord r;
      r.id = c.at("id").get<std::string>();
      r.kind = c.at("kind").get<std::string>();
      r.n = c.at("n").get<int>();
      r.anchor = c.at("anchor").get<std::string>();
      r.status = parse_status(c.at("status").get<std::string>());
      r.expected = c.at("expected").get<std::string>();
      r.got = c.at("got").get<std::string>();
      r.millis = c.at("millis").get<std::int64_t>();
      report.checks.push_back(std::move(r));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("parse_report: ") + e.what());
  }
}

std::string to_text(const VerificationReport& report) {
  std::ostringstream os;
  os << "josephcheck " << report.version << "\n";
  for (const auto& r : report.checks) {
    std::string status = status_name(r.status);
    std::transform(status.begin(), status.end(), status.begin(), ::toupper);
    os << status << "  " << r.id;
    if (!r.kind.empty()) os << "  " << r.kind << " n=" << r.n;
    os << "  got " << r.got << "  expected " << r.expected << "  (" << r.millis << " ms)\n";
    os << "    " << r.anchor << "\n";
  }
  os << report.count(CheckStatus::Pass) << " passed, " << report.count(CheckStatus::Fail) << " failed, "
     << report.count(CheckStatus::Skipped) << " skipped\n";
  return os.str();
}

VerificationReport without_timings(VerificationReport report) {
  for (auto& r : report.checks) r.millis = 0;
  return report;
}

std::pair<int, int> parse_n_range(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw std::invalid_argument("bad n range: " + std::string(text));
    return std::stoi(std::string(s));
  };
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    int n = parse_int(text);
    return {n, n};
  }
  int a = parse_int(text.substr(0, dots)), b = parse_int(text.substr(dots + 2));
  if (a > b) throw std::invalid_argument("empty n range: " + std::string(text));
  return {a, b};
}

void RunConfig::validate() const {
  if (jobs < 1) throw std::invalid_argument("--jobs must be at least 1");
  for (const auto& r : grid) {
    if (r.n_min > r.n_max) throw std::invalid_argument("empty n range");
    if (!allow_out_of_range && r.n_min < minimum_parameter(r.kind))
      throw std::invalid_argument(kind_name(r.kind) + " needs n >= " + std::to_string(minimum_parameter(r.kind)) +
                                  " (use --allow-out-of-range to override)");
    if (r.n_min < 1) throw std::invalid_argument("n must be positive");
    const int d = vector_dim_of(r.kind, r.n_max);
    if (d > max_vector_dim)
      throw ResourceLimitError(kind_name(r.kind) + " n=" + std::to_string(r.n_max) + " needs dimension " +
                               std::to_string(d) + " above the ceiling " + std::to_string(max_vector_dim));
  }
}

std::vector<std::pair<std::string, std::string>> RunConfig::describe() const {
  std::string g;
  for (const auto& r : grid)
    g += (g.empty() ? "" : ",") + kind_name(r.kind) + ":" + std::to_string(r.n_min) + ".." + std::to_string(r.n_max);
  return {{"grid", g},
          {"seed", std::to_string(seed)},
          {"jobs", std::to_string(jobs)},
          {"allow_out_of_range", allow_out_of_range ? "true" : "false"},
          {"cache_dir", cache_dir ? cache_dir->string() : ""},
          {"max_vector_dim", std::to_string(max_vector_dim)},
          {"max_solver_algebra_dim", std::to_string(max_solver_algebra_dim)},
          {"max_monomials", std::to_string(max_monomials)},
          {"z_samples", std::to_string(z_samples)},
          {"weyl_degrees", join(weyl_degrees)},
          {"ker_phi", ker_phi ? "true" : "false"},
          {"with_psi", with_psi ? "true" : "false"}};
}

std::shared_ptr<const LieContext> ContextCache::get(const AlgebraSpec& spec) {
  const Key key{int(spec.kind), spec.n, spec.allow_out_of_range, int(spec.orthogonal_form)};
  std::promise<std::shared_ptr<const LieContext>> promise;
  std::shared_future<std::shared_ptr<const LieContext>> future;
  bool builder = false;
  {
    std::lock_guard lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      future = promise.get_future().share();
      entries_.emplace(key, future);
      ++builds_;
      builder = true;
    } else {
      future = it->second;
    }
  }
  if (builder) {
    try {
      promise.set_value(std::make_shared<const LieContext>(build_context(spec)));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return future.get();
}

std::size_t ContextCache::builds() const {
  std::lock_guard lock(mu_);
  return builds_;
}

SolverCache::SolverCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {
  if (dir_) std::filesystem::create_directories(*dir_);
}

std::filesystem::path SolverCache::file(AlgebraKind kind, int n, bool with_psi) const {
  return *dir_ / ("kerphi-" + kind_name(kind) + "-" + std::to_string(n) + (with_psi ? "-psi" : "") + ".json");
}

std::optional<KerPhiSummary> SolverCache::load(AlgebraKind kind, int n, bool with_psi) const {
  if (!dir_) return std::nullopt;
  std::ifstream in(file(kind, n, with_psi));
  if (!in) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    return KerPhiSummary{j.at("dimension").get<int>(), j.at("special_tensor_in_span").get<bool>()};
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

void SolverCache::store(AlgebraKind kind, int n, bool with_psi, const KerPhiSummary& s) const {
  if (!dir_) return;
  const auto path = file(kind, n, with_psi);
  if (std::filesystem::exists(path)) return;
  const auto tmp = path.string() + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp);
    out << nlohmann::json{{"dimension", s.dimension}, {"special_tensor_in_span", s.special_tensor_in_span}}.dump()
        << "\n";
  }
  std::error_code ec;
  if (std::filesystem::exists(path)) std::filesystem::remove(tmp, ec);
  else std::filesystem::rename(tmp, path, ec);
}

RunResult run_jobs(const std::vector<Job>& jobs, int workers) {
  Collector collector(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      std::vector<CheckRecord> records;
      try {
        records = jobs[i]();
      } catch (const ResourceLimitError& e) {
        records.push_back({"job", "", 0, "", CheckStatus::Skipped, "", std::string(kCeilingPrefix) + e.what(), 0});
      } catch (const std::exception& e) {
        records.push_back({"job", "", 0, "", CheckStatus::Fail, "", std::string("error: ") + e.what(), 0});
      }
      collector.deliver(i, std::move(records));
    }
  };
  const int threads = std::max(1, std::min(workers, int(jobs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  RunResult result;
  result.report.checks = collector.assemble();
  for (const auto& r : result.report.checks)
    if (r.status == CheckStatus::Skipped && r.got.starts_with(kCeilingPrefix)) result.ceiling_hit = true;
  return result;
}

int exit_code(const RunResult& result) {
  if (result.ceiling_hit) return 3;
  return result.report.all_passed() ? 0 : 1;
}

NRange default_range(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::SO: return {kind, 5, 8};
    case AlgebraKind::SP: return {kind, 2, 4};
    case AlgebraKind::SL: return {kind, 3, 6};
  }
  return {};
}

HomDims expected_hom_dims(AlgebraKind kind, int n) {
  if (kind == AlgebraKind::SO && n == 4) throw std::invalid_argument("so(4) is not simple");
  const int m = sl_isomorphic(kind, n);
  if (m == 0) return {2, 1};
  return {m >= 3 ? 4 : 1, 1};
}

std::vector<Job> verify_jobs(Session& session) { return verify_for(session, session.config.grid); }

std::vector<Job> critical_lambda_jobs(Session& session) {
  std::vector<Job> jobs;
  for (const auto& r : session.config.grid)
    for (int n = r.n_min; n <= r.n_max; ++n)
      jobs.push_back([&session, kind = r.kind, n] { return critical_one(session, kind, n); });
  return jobs;
}

std::vector<Job> fit_lambda_jobs(Session& session) {
  std::vector<Job> jobs;
  for (const auto& r : session.config.grid) jobs.push_back([&session, r] { return fit_one(session, r); });
  return jobs;
}

std::vector<Job> homdim_jobs(Session& session) {
  return homdim_for(session, session.config.grid, session.config.ker_phi, session.config.with_psi);
}

std::vector<Job> weyl_jobs(Session& session) {
  std::vector<Job> jobs;
  for (const auto& r : session.config.grid) {
    auto more = weyl_for(session, r.n_min, r.n_max);
    jobs.insert(jobs.end(), more.begin(), more.end());
  }
  return jobs;
}

std::vector<Job> report_jobs(Session& session) {
  std::vector<NRange> grid = {default_range(AlgebraKind::SO), default_range(AlgebraKind::SP),
                              default_range(AlgebraKind::SL)};
  std::vector<Job> jobs = verify_for(session, grid);
  for (const auto& r : std::vector<NRange>{{AlgebraKind::SO, 5, 9}, {AlgebraKind::SP, 2, 6}, {AlgebraKind::SL, 3, 7}})
    jobs.push_back([&session, r] { return fit_one(session, r); });
  auto homs = homdim_for(session, {{AlgebraKind::SO, 5, 8}, {AlgebraKind::SP, 2, 4}, {AlgebraKind::SL, 2, 6}}, false,
                         false);
  jobs.insert(jobs.end(), homs.begin(), homs.end());
  for (auto kind : {AlgebraKind::SO, AlgebraKind::SP, AlgebraKind::SL}) {
    const int n = minimum_parameter(kind);
    jobs.push_back([&session, kind, n] {
      auto records = homdim_one(session, kind, n, true, true);
      records.erase(records.begin());
      return records;
    });
  }
  auto weyl = weyl_for(session, 2, 4);
  jobs.insert(jobs.end(), weyl.begin(), weyl.end());
  return jobs;
}

}  // namespace joseph
