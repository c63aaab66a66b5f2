#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "ecadr/sweep.hpp"

using namespace ecadr;
using namespace ecadr::sweep;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ecadr_sweep_" + name);
  fs::remove_all(dir);
  return dir;
}

SweepPlan small_plan() {
  auto plan = SweepPlan::from_scenario(default_scenario(TrafficProfile::Unsaturated));
  plan.scenario.station_counts = {3, 6};
  plan.scenario.seeds = {1, 2};
  plan.scenario.sim_duration_s = 0.5;
  return plan;
}

}  // namespace

TEST_CASE("full-size plan enumerates 360 runs") {
  auto plan = SweepPlan::from_scenario(default_scenario());
  plan.scenario.station_counts.clear();
  for (int n = 5; n <= 90; n += 5) plan.scenario.station_counts.push_back(n);
  plan.scenario.seeds.clear();
  for (std::uint64_t s = 1; s <= 10; ++s) plan.scenario.seeds.push_back(s);

  const auto cells = plan.cells();
  CHECK(cells.size() == 360);
  std::set<std::tuple<int, int, std::uint64_t>> unique;
  for (const auto& c : cells) unique.emplace(static_cast<int>(c.protocol), c.n_stations, c.seed);
  CHECK(unique.size() == 360);
  CHECK(describe(plan).find("360 runs") != std::string::npos);
}

TEST_CASE("quick preset") {
  auto plan = SweepPlan::from_scenario(default_scenario());
  plan.apply_quick_preset();
  CHECK(plan.scenario.sim_duration_s == 5.0);
  CHECK(plan.scenario.seeds == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(plan.scenario.station_counts == std::vector<int>{10, 30, 50});
  CHECK(plan.cells().size() == 18);
}

TEST_CASE("validation") {
  auto plan = small_plan();
  plan.scenario.seeds.clear();
  CHECK_THROWS_AS(plan.validate(), ConfigError);
  CHECK_THROWS_AS(describe(plan), ConfigError);
  std::ostringstream log;
  CHECK(run_sweep(plan, log) == kExitValidation);

  auto jobs = small_plan();
  jobs.jobs = 0;
  CHECK_THROWS_AS(jobs.validate(), ConfigError);
}

TEST_CASE("digest") {
  const auto a = small_plan();
  auto b = small_plan();
  CHECK(plan_digest(a) == plan_digest(b));
  CHECK(plan_digest(a).size() == 16);
  b.scenario.seeds.push_back(3);
  CHECK(plan_digest(a) != plan_digest(b));
}

TEST_CASE("describe has no side effects") {
  auto plan = small_plan();
  plan.out_dir = scratch("describe");
  describe(plan);
  CHECK_FALSE(fs::exists(plan.out_dir));
}

TEST_CASE("single cell gives a single row") {
  auto plan = small_plan();
  plan.scenario.protocols = {Protocol::Eca};
  plan.scenario.station_counts = {4};
  plan.scenario.seeds = {7};
  plan.out_dir = scratch("single");
  std::ostringstream log;
  REQUIRE(run_sweep(plan, log) == kExitOk);
  const auto runs = slurp(plan.out_dir / "runs.csv");
  CHECK(std::count(runs.begin(), runs.end(), '\n') == 2);
  const auto summary = slurp(plan.out_dir / "summary.csv");
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 2);
  CHECK(fs::exists(plan.out_dir / "results.json"));
  fs::remove_all(plan.out_dir);
}

TEST_CASE("unwritable output directory fails before any run") {
  auto plan = small_plan();
  const auto blocker = scratch("blocker");
  { std::ofstream(blocker) << "x"; }
  plan.out_dir = blocker / "out";
  std::ostringstream log;
  CHECK(run_sweep(plan, log) == kExitRuntime);
  CHECK(log.str().find("error") != std::string::npos);
  CHECK(log.str().find("[1/") == std::string::npos);
  fs::remove(blocker);
}

TEST_CASE("serial and parallel sweeps write identical files") {
  auto serial = small_plan();
  serial.out_dir = scratch("serial");
  auto parallel = small_plan();
  parallel.out_dir = scratch("parallel");
  parallel.jobs = 4;
  std::ostringstream log;
  REQUIRE(run_sweep(serial, log) == kExitOk);
  REQUIRE(run_sweep(parallel, log) == kExitOk);
  for (const char* f : {"runs.csv", "summary.csv", "results.json"}) {
    CHECK(slurp(serial.out_dir / f) == slurp(parallel.out_dir / f));
  }

  // Re-running overwrites with identical content.
  const auto before = slurp(serial.out_dir / "runs.csv");
  REQUIRE(run_sweep(serial, log) == kExitOk);
  CHECK(slurp(serial.out_dir / "runs.csv") == before);
  CHECK_FALSE(fs::exists(serial.out_dir / "runs.csv.tmp"));

  const auto runs = slurp(serial.out_dir / "runs.csv");
  CHECK(std::count(runs.begin(), runs.end(), '\n') == 1 + 8);
  const auto summary = slurp(serial.out_dir / "summary.csv");
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 1 + 4);
  fs::remove_all(serial.out_dir);
  fs::remove_all(parallel.out_dir);
}

TEST_CASE("traces are written per run") {
  auto plan = small_plan();
  plan.scenario.protocols = {Protocol::EcaDr};
  plan.scenario.station_counts = {3};
  plan.scenario.seeds = {1};
  plan.trace_level = 2;
  plan.out_dir = scratch("traces");
  std::ostringstream log;
  REQUIRE(run_sweep(plan, log) == kExitOk);
  const auto trace = slurp(plan.out_dir / "traces" / "EcaDr_n3_s1.log");
  CHECK(trace.find(" IDLE ") != std::string::npos);
  CHECK(trace.find(" SUCCESS ") != std::string::npos);
  CHECK(trace.find(" NAC ") != std::string::npos);
  fs::remove_all(plan.out_dir);
}
