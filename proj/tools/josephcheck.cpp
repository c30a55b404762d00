#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "joseph/errors.hpp"
#include "joseph/verification.hpp"

using namespace joseph;

namespace {

struct Options {
  std::string format = "text";
  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;
  std::string cache_dir;
  bool allow_out_of_range = false;
  std::string kind;
  std::string n;
  std::string degrees = "1..4";
  int z_samples = 2;
  bool ker_phi = false;
  bool with_psi = false;
};

std::vector<NRange> grid_from(const Options& o, const std::map<AlgebraKind, NRange>& defaults) {
  std::vector<AlgebraKind> kinds;
  if (o.kind.empty())
    for (const auto& [k, r] : defaults) kinds.push_back(k);
  else
    kinds.push_back(parse_kind(o.kind));
  std::vector<NRange> grid;
  for (AlgebraKind k : kinds) {
    NRange r{k, 0, 0};
    if (o.n.empty()) {
      auto it = defaults.find(k);
      if (it == defaults.end()) throw std::invalid_argument("--n is required");
      r = it->second;
    } else {
      auto [a, b] = parse_n_range(o.n);
      r = {k, a, b};
    }
    grid.push_back(r);
  }
  return grid;
}

std::vector<int> degree_list(const std::string& text) {
  auto [a, b] = parse_n_range(text);
  std::vector<int> out;
  for (int d = a; d <= b; ++d) out.push_back(d);
  return out;
}

std::string label(const CheckRecord& r, bool multiple) {
  return multiple ? r.kind + " " + std::to_string(r.n) + ": " : "";
}

// Bare values for the query-style subcommands; failures go to stderr.
void print_values(const VerificationReport& report, const std::vector<std::string>& shown) {
  std::map<std::pair<std::string, int>, int> algebras;
  for (const auto& r : report.checks) algebras[{r.kind, r.n}] = 1;
  const bool multiple = algebras.size() > 1;
  for (const auto& r : report.checks) {
    if (std::find(shown.begin(), shown.end(), r.id) != shown.end()) std::cout << label(r, multiple) << r.got << "\n";
    if (r.status != CheckStatus::Pass)
      std::cerr << status_name(r.status) << ": " << r.id << " " << r.kind << " n=" << r.n << " got " << r.got
                << " expected " << r.expected << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the Joseph ideal parameter computations"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", o.cache_dir, "Directory for equivariant-solver results");
  app.add_flag("--allow-out-of-range", o.allow_out_of_range, "Admit parameters outside the supported ranges");

  auto* verify = app.add_subcommand("verify", "Special tensors, Z identities, reductions, critical lambda");
  auto* critical = app.add_subcommand("critical-lambda", "Print the critical lambda");
  auto* fit = app.add_subcommand("fit-lambda", "Interpolate lambda and the reductions over a range of n");
  auto* homdim = app.add_subcommand("homdim", "Equivariant hom dimensions");
  auto* weyl = app.add_subcommand("weyl-check", "Differential-operator realization for sl(n)");
  auto* report = app.add_subcommand("report", "Run every suite on the default grids");

  for (auto* sub : {verify, critical, fit, homdim}) {
    sub->add_option("--kind", o.kind, "so, sp or sl")->check(CLI::IsMember({"so", "sp", "sl"}));
    sub->add_option("--n", o.n, "n or a range a..b");
  }
  critical->get_option("--kind")->required();
  critical->get_option("--n")->required();
  homdim->get_option("--kind")->required();
  homdim->get_option("--n")->required();
  verify->add_option("--z-samples", o.z_samples, "Random seeds per algebra for the Z identities")
      ->check(CLI::PositiveNumber);
  homdim->add_flag("--ker-phi", o.ker_phi, "Also solve for Hom(g, ker Phi)");
  homdim->add_flag("--with-psi", o.with_psi, "Also intersect with ker Psi (implies --ker-phi)");
  weyl->add_option("--n", o.n, "Number of variables or a range a..b");
  weyl->add_option("--degrees", o.degrees, "Degree range for the fits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig config;
  config.seed = o.seed;
  config.jobs = o.jobs;
  config.format = o.format == "json" ? OutputFormat::Json : OutputFormat::Text;
  config.allow_out_of_range = o.allow_out_of_range;
  if (!o.cache_dir.empty()) config.cache_dir = o.cache_dir;
  config.z_samples = o.z_samples;
  config.ker_phi = o.ker_phi || o.with_psi;
  config.with_psi = o.with_psi;

  std::unique_ptr<Session> session;
  std::vector<Job> jobs;
  std::vector<std::string> shown;
  try {
    if (*verify) {
      config.grid = grid_from(o, {{AlgebraKind::SO, default_range(AlgebraKind::SO)},
                                  {AlgebraKind::SP, default_range(AlgebraKind::SP)},
                                  {AlgebraKind::SL, default_range(AlgebraKind::SL)}});
    } else if (*critical) {
      config.grid = grid_from(o, {});
      shown = {"critical-lambda"};
    } else if (*fit) {
      config.grid = grid_from(o, {{AlgebraKind::SO, {AlgebraKind::SO, 5, 9}},
                                  {AlgebraKind::SP, {AlgebraKind::SP, 2, 6}},
                                  {AlgebraKind::SL, {AlgebraKind::SL, 3, 7}}});
      for (const auto& r : config.grid)
        if (r.n_max - r.n_min + 1 < 5) throw std::invalid_argument("fit-lambda needs at least five values of n");
    } else if (*homdim) {
      config.grid = grid_from(o, {});
      shown = {"hom-dims", "ker-phi", "ker-phi-psi"};
    } else if (*weyl) {
      auto [a, b] = o.n.empty() ? std::pair{2, 4} : parse_n_range(o.n);
      if (a < 2) throw std::invalid_argument("weyl-check needs n >= 2");
      config.weyl_degrees = degree_list(o.degrees);
      if (config.weyl_degrees.size() < 3 || config.weyl_degrees.front() < 0)
        throw std::invalid_argument("weyl-check needs at least three non-negative degrees");
      config.grid = {{AlgebraKind::SL, a, b}};
    }
    if (!*weyl && !*report) config.validate();
    if (*weyl && config.grid[0].n_max > config.max_vector_dim)
      throw ResourceLimitError("weyl-check n above the ceiling " + std::to_string(config.max_vector_dim));
    session = std::make_unique<Session>(config);
    if (*verify) jobs = verify_jobs(*session);
    else if (*critical) jobs = critical_lambda_jobs(*session);
    else if (*fit) jobs = fit_lambda_jobs(*session);
    else if (*homdim) jobs = homdim_jobs(*session);
    else if (*weyl) jobs = weyl_jobs(*session);
    else jobs = report_jobs(*session);
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource ceiling: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  RunResult result = run_jobs(jobs, config.jobs);
  result.report.config = config.describe();
  if (config.format == OutputFormat::Json) std::cout << to_json(result.report);
  else if (!shown.empty()) print_values(result.report, shown);
  else std::cout << to_text(result.report);
  return exit_code(result);
}
