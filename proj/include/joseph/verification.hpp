#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "joseph/lie_context.hpp"
#include "joseph/rep_theory.hpp"

namespace joseph {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr std::uint64_t kDefaultSeed = 20240601;

enum class CheckStatus { Pass, Fail, Skipped };
std::string status_name(CheckStatus s);
/// Throws std::invalid_argument for an unknown name.
CheckStatus parse_status(std::string_view name);

struct CheckRecord {
  std::string id;
  /// "so", "sp", "sl" or empty when the check is not tied to one algebra.
  std::string kind;
  int n = 0;
  /// The identity being checked, stated in words.
  std::string anchor;
  CheckStatus status = CheckStatus::Skipped;
  std::string expected;
  std::string got;
  std::int64_t millis = 0;
  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct VerificationReport {
  std::string version = kToolVersion;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<CheckRecord> checks;

  bool all_passed() const;
  std::size_t count(CheckStatus s) const;
  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// Pretty-printed JSON; rationals appear as "p/q" strings.
std::string to_json(const VerificationReport& report);
/// Throws std::invalid_argument on malformed input.
VerificationReport parse_report(std::string_view json);
std::string to_text(const VerificationReport& report);
/// Copy with every wall-time field zeroed.
VerificationReport without_timings(VerificationReport report);

enum class OutputFormat { Text, Json };

struct NRange {
  AlgebraKind kind = AlgebraKind::SO;
  int n_min = 0;
  int n_max = 0;
};

/// "6" or "5..8". Throws std::invalid_argument.
std::pair<int, int> parse_n_range(std::string_view text);

struct RunConfig {
  std::vector<NRange> grid;
  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;
  OutputFormat format = OutputFormat::Text;
  bool allow_out_of_range = false;
  std::optional<std::filesystem::path> cache_dir;
  /// Largest defining-representation dimension any check may build.
  int max_vector_dim = kMaxTensorDim;
  /// Largest algebra handed to the equivariant solver.
  int max_solver_algebra_dim = 21;
  /// Largest monomial basis per degree for the operator checks.
  int max_monomials = 4000;
  /// Random seeds per algebra for the Z identities.
  int z_samples = 2;
  std::vector<int> weyl_degrees = {1, 2, 3, 4};
  bool ker_phi = false;
  bool with_psi = false;

  /// Throws std::invalid_argument for ranges outside the supported ranges
  /// (unless overridden) and ResourceLimitError above max_vector_dim.
  void validate() const;
  std::vector<std::pair<std::string, std::string>> describe() const;
};

/// Write-once in-memory cache of built contexts keyed by the algebra spec.
/// Safe for concurrent use; a context is built at most once.
class ContextCache {
 public:
  std::shared_ptr<const LieContext> get(const AlgebraSpec& spec);
  std::size_t builds() const;

 private:
  using Key = std::tuple<int, int, bool, int>;
  mutable std::mutex mu_;
  std::map<Key, std::shared_future<std::shared_ptr<const LieContext>>> entries_;
  std::size_t builds_ = 0;
};

/// Equivariant-solver summaries persisted under an opt-in directory. Entries
/// are never overwritten once written.
struct KerPhiSummary {
  int dimension = 0;
  bool special_tensor_in_span = false;
};

class SolverCache {
 public:
  explicit SolverCache(std::optional<std::filesystem::path> dir = std::nullopt);
  std::optional<KerPhiSummary> load(AlgebraKind kind, int n, bool with_psi) const;
  void store(AlgebraKind kind, int n, bool with_psi, const KerPhiSummary& summary) const;

 private:
  std::filesystem::path file(AlgebraKind kind, int n, bool with_psi) const;
  std::optional<std::filesystem::path> dir_;
};

/// A unit of work producing one or more records. Jobs must be pure apart from
/// the caches they are handed.
using Job = std::function<std::vector<CheckRecord>()>;

struct RunResult {
  VerificationReport report;
  /// Some job stopped at a resource ceiling.
  bool ceiling_hit = false;
};

/// Runs jobs on at most `jobs` worker threads; records keep job order.
RunResult run_jobs(const std::vector<Job>& jobs, int workers);

struct Session {
  RunConfig config;
  ContextCache contexts;
  SolverCache solver_cache;
  explicit Session(RunConfig c) : config(std::move(c)), solver_cache(config.cache_dir) {}
};

/// Per-algebra suites. Each returns jobs over session.config.grid.
std::vector<Job> verify_jobs(Session& session);
std::vector<Job> critical_lambda_jobs(Session& session);
std::vector<Job> fit_lambda_jobs(Session& session);
std::vector<Job> homdim_jobs(Session& session);
/// grid entries must be sl; n is the number of variables.
std::vector<Job> weyl_jobs(Session& session);

/// Everything, on the default grids.
std::vector<Job> report_jobs(Session& session);

/// Default grid per kind: the supported range used by `verify`.
NRange default_range(AlgebraKind kind);

/// Exit code for a finished run: 3 on a ceiling, 1 on any failure, else 0.
int exit_code(const RunResult& result);

/// (exterior, cartan) expected from the structure theory: (2, 1) unless the
/// algebra is isomorphic to some sl(m), then (4, 1) for m >= 3 and (1, 1) for m = 2.
HomDims expected_hom_dims(AlgebraKind kind, int n);

}  // namespace joseph
