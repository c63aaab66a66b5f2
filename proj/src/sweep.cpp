#include "ecadr/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "ecadr/engine.hpp"

namespace fs = std::filesystem;

namespace ecadr::sweep {

namespace {

// Rough cost of one simulated second per station, measured on a single core.
constexpr double kWallSecondsPerStationSecond = 2e-4;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_atomically(const fs::path& target, const std::string& content) {
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string trace_name(const RunCell& c) {
  return std::string(to_string(c.protocol)) + "_n" + std::to_string(c.n_stations) + "_s" +
         std::to_string(c.seed) + ".log";
}

void check_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  const fs::path probe = dir / ".ecadr-write-probe";
  {
    std::ofstream out(probe);
    if (!out) throw std::runtime_error("output directory is not writable: " + dir.string());
  }
  fs::remove(probe, ec);
}

std::vector<metrics::SummaryRow> summarize(const SweepPlan& plan, const std::vector<metrics::RunMetrics>& runs) {
  std::map<std::pair<int, int>, std::vector<metrics::RunMetrics>> groups;
  std::vector<std::pair<int, int>> order;
  for (const auto& r : runs) {
    const std::pair<int, int> key{static_cast<int>(r.protocol), r.n_stations};
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(r);
  }
  (void)plan;
  std::vector<metrics::SummaryRow> out;
  for (const auto& key : order) out.push_back(metrics::aggregate(groups[key]));
  return out;
}

}  // namespace

SweepPlan SweepPlan::from_scenario(ScenarioConfig cfg) {
  SweepPlan p;
  p.scenario = std::move(cfg);
  return p;
}

void SweepPlan::apply_quick_preset() {
  scenario.sim_duration_s = 5.0;
  scenario.seeds = {1, 2, 3};
  scenario.station_counts = {10, 30, 50};
}

void SweepPlan::validate() const {
  scenario.validate();
  if (jobs < 1) throw ConfigError("jobs: must be at least 1", 0, "jobs");
  if (out_dir.empty()) throw ConfigError("output directory must be set", 0, "out");
}

std::vector<RunCell> SweepPlan::cells() const {
  std::vector<RunCell> out;
  for (auto p : scenario.protocols) {
    for (int n : scenario.station_counts) {
      for (auto seed : scenario.seeds) out.push_back({p, n, seed});
    }
  }
  return out;
}

std::string plan_digest(const SweepPlan& plan) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(serialize_scenario(plan.scenario))));
  return buf;
}

std::string describe(const SweepPlan& plan) {
  plan.validate();
  const auto cells = plan.cells();
  double station_seconds = 0.0;
  for (const auto& c : cells) station_seconds += c.n_stations * plan.scenario.sim_duration_s;
  const double est = station_seconds * kWallSecondsPerStationSecond / plan.jobs;

  std::ostringstream out;
  out << "scenario:   " << plan.scenario.name << " (" << to_string(plan.scenario.profile) << ")\n";
  out << "protocols:  ";
  for (std::size_t i = 0; i < plan.scenario.protocols.size(); ++i) {
    out << (i ? ", " : "") << to_string(plan.scenario.protocols[i]);
  }
  out << "\nstations:   ";
  for (std::size_t i = 0; i < plan.scenario.station_counts.size(); ++i) {
    out << (i ? ", " : "") << plan.scenario.station_counts[i];
  }
  out << "\nseeds:      " << plan.scenario.seeds.size() << "\n";
  out << "duration:   " << plan.scenario.sim_duration_s << " s per run\n";
  out << cells.size() << " runs, estimated wall time ~" << static_cast<long long>(est + 0.5) << " s with "
      << plan.jobs << " job(s)\n";
  out << "digest:     " << plan_digest(plan) << "\n";
  return out.str();
}

SweepResult execute(const SweepPlan& plan, const std::function<void(const RunCell&)>& on_done) {
  const auto cells = plan.cells();
  std::vector<std::optional<metrics::RunMetrics>> results(cells.size());
  std::vector<std::string> errors(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex done_mu;

  if (plan.trace_level > 0) fs::create_directories(plan.out_dir / "traces");

  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const auto& c = cells[i];
      try {
        engine::RunOptions opts;
        std::ofstream trace;
        if (plan.trace_level > 0) {
          trace.open(plan.out_dir / "traces" / trace_name(c));
          opts.trace = &trace;
          opts.trace_level = plan.trace_level;
        }
        results[i] = engine::run(plan.scenario, c.protocol, c.n_stations, c.seed, opts);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
      if (on_done) {
        std::lock_guard lock(done_mu);
        on_done(c);
      }
    }
  };

  const int n_threads = std::max(1, std::min<int>(plan.jobs, static_cast<int>(cells.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SweepResult result;
  std::string failure;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (results[i]) {
      result.runs.push_back(std::move(*results[i]));
    } else if (failure.empty()) {
      const auto& c = cells[i];
      failure = "run " + std::string(to_string(c.protocol)) + " n=" + std::to_string(c.n_stations) +
                " seed=" + std::to_string(c.seed) + " failed: " + errors[i];
    }
  }
  result.summary = summarize(plan, result.runs);
  if (!failure.empty()) throw SweepError(failure, std::move(result));
  return result;
}

void write_outputs(const fs::path& dir, const SweepResult& result) {
  std::string runs = metrics::run_csv_header() + "\n";
  for (const auto& r : result.runs) runs += metrics::run_csv_row(r) + "\n";
  std::string summary = metrics::summary_csv_header() + "\n";
  for (const auto& s : result.summary) summary += metrics::summary_csv_row(s) + "\n";
  write_atomically(dir / "runs.csv", runs);
  write_atomically(dir / "summary.csv", summary);
  write_atomically(dir / "results.json", metrics::runs_json(result.runs, result.summary));
}

int run_sweep(const SweepPlan& plan, std::ostream& log) {
  try {
    plan.validate();
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  try {
    check_writable(plan.out_dir);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitRuntime;
  }

  const auto total = plan.cells().size();
  std::size_t done = 0;
  try {
    auto result = execute(plan, [&](const RunCell& c) {
      ++done;
      log << "[" << done << "/" << total << "] " << to_string(c.protocol) << " n=" << c.n_stations
          << " seed=" << c.seed << "\n";
    });
    write_outputs(plan.out_dir, result);
  } catch (const SweepError& e) {
    log << "error: " << e.what() << "\n";
    const auto partial_dir = plan.out_dir / "partial";
    try {
      fs::create_directories(partial_dir);
      write_outputs(partial_dir, e.partial());
      log << "completed runs written to " << partial_dir.string() << " (INCOMPLETE SWEEP)\n";
    } catch (const std::exception& w) {
      log << "error: could not write partial results: " << w.what() << "\n";
    }
    return kExitRuntime;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  log << "wrote " << (plan.out_dir / "runs.csv").string() << ", summary.csv, results.json\n";
  return kExitOk;
}

}  // namespace ecadr::sweep
