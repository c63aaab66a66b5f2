#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <ostream>
#include <string>
#include <vector>

#include "ecadr/config.hpp"
#include "ecadr/metrics.hpp"

namespace ecadr::sweep {

struct RunCell {
  Protocol protocol = Protocol::Eca;
  int n_stations = 0;
  std::uint64_t seed = 0;
};

/// The cartesian product protocols x station_counts x seeds over one scenario.
struct SweepPlan {
  ScenarioConfig scenario;
  std::filesystem::path out_dir = "results";
  int jobs = 1;
  int trace_level = 0;  // > 0 writes one trace file per run under out_dir/traces

  /// Builds a plan from a scenario; the sweep lists come from its sweep block.
  static SweepPlan from_scenario(ScenarioConfig cfg);

  /// --quick preset: 5 s runs, seeds {1, 2, 3}, station counts {10, 30, 50}.
  void apply_quick_preset();

  /// Throws ConfigError on an invalid plan.
  void validate() const;

  /// Every (protocol, n, seed) exactly once, protocol-major.
  std::vector<RunCell> cells() const;
};

/// Stable hash of the plan's inputs, as 16 hex digits.
std::string plan_digest(const SweepPlan& plan);

/// Run count, estimated wall time and digest. No side effects.
std::string describe(const SweepPlan& plan);

struct SweepResult {
  std::vector<metrics::RunMetrics> runs;  // in cells() order
  std::vector<metrics::SummaryRow> summary;
};

/// A run failed. `partial` holds the runs that completed, in cells() order.
class SweepError : public std::runtime_error {
 public:
  SweepError(const std::string& what, SweepResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const SweepResult& partial() const { return partial_; }

 private:
  SweepResult partial_;
};

/// Runs every cell, `jobs` at a time. Output order does not depend on `jobs`.
/// Throws SweepError if any run fails.
SweepResult execute(const SweepPlan& plan, const std::function<void(const RunCell&)>& on_done = {});

/// Writes runs.csv, summary.csv and results.json into `dir`, each through a
/// temporary file renamed into place.
void write_outputs(const std::filesystem::path& dir, const SweepResult& result);

/// Exit codes of run_sweep and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/// Validates, checks the output directory is writable, executes, writes.
/// Diagnostics go to `log`.
int run_sweep(const SweepPlan& plan, std::ostream& log);

}  // namespace ecadr::sweep
