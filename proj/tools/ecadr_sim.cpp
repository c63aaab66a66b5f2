// ecadr_sim: sweep runner for the CSMA/ECA and CSMA/ECA-DR simulator.

#include <CLI11.hpp>

#include <charconv>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ecadr/config.hpp"
#include "ecadr/sweep.hpp"

namespace {

using ecadr::ConfigError;

// Accepts "10,30,50", "5:90:5" (inclusive, with step) or a mix of both.
template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& flag) {
  std::vector<T> out;
  auto number = [&](std::string_view s) {
    T v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
      throw ConfigError(flag + ": not a number: '" + std::string(s) + "'", 0, flag);
    }
    return v;
  };
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    const auto c1 = item.find(':');
    if (c1 == std::string_view::npos) {
      out.push_back(number(item));
      continue;
    }
    const auto c2 = item.find(':', c1 + 1);
    const T lo = number(item.substr(0, c1));
    const T hi = number(item.substr(c1 + 1, c2 == std::string_view::npos ? std::string_view::npos : c2 - c1 - 1));
    const T step = c2 == std::string_view::npos ? T{1} : number(item.substr(c2 + 1));
    if (step <= 0 || hi < lo) throw ConfigError(flag + ": bad range '" + std::string(item) + "'", 0, flag);
    for (T v = lo; v <= hi; v += step) out.push_back(v);
  }
  if (out.empty()) throw ConfigError(flag + ": empty list", 0, flag);
  return out;
}

struct Options {
  std::string scenario;
  std::string profile;
  std::string out = "results";
  std::vector<std::string> protocols;
  std::string stations;
  std::string seeds;
  std::optional<double> duration;
  bool quick = false;
  int jobs = 1;
  int trace_level = 0;
};

ecadr::sweep::SweepPlan build_plan(const Options& o) {
  ecadr::ScenarioConfig cfg;
  if (!o.scenario.empty()) {
    cfg = ecadr::load_scenario(o.scenario);
  } else {
    auto profile = ecadr::TrafficProfile::Saturated;
    if (!o.profile.empty()) {
      auto p = ecadr::parse_profile(o.profile);
      if (!p) throw ConfigError("--profile: unknown profile '" + o.profile + "'", 0, "profile");
      profile = *p;
    }
    cfg = ecadr::default_scenario(profile);
  }

  auto plan = ecadr::sweep::SweepPlan::from_scenario(std::move(cfg));
  if (o.quick) plan.apply_quick_preset();
  auto& sc = plan.scenario;
  if (!o.protocols.empty()) {
    sc.protocols.clear();
    for (const auto& name : o.protocols) {
      auto p = ecadr::parse_protocol(name);
      if (!p) throw ConfigError("--protocol: unknown protocol '" + name + "'", 0, "protocol");
      sc.protocols.push_back(*p);
    }
  }
  if (!o.stations.empty()) sc.station_counts = parse_list<int>(o.stations, "stations");
  if (!o.seeds.empty()) sc.seeds = parse_list<std::uint64_t>(o.seeds, "seeds");
  if (o.duration) sc.sim_duration_s = *o.duration;
  plan.out_dir = o.out;
  plan.jobs = o.jobs;
  plan.trace_level = o.trace_level;
  plan.validate();
  return plan;
}

void add_plan_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("-s,--scenario", o.scenario, "Scenario YAML file")->check(CLI::ExistingFile);
  cmd->add_option("--profile", o.profile, "Built-in profile when no scenario is given (saturated|unsaturated)");
  cmd->add_option("-p,--protocol", o.protocols, "Protocols to run (csma_ca, eca, eca_dr); repeatable");
  cmd->add_option("-n,--stations", o.stations, "Station counts, e.g. 10,30,50 or 5:90:5");
  cmd->add_option("--seeds", o.seeds, "Seeds, e.g. 1,2,3 or 1:10");
  cmd->add_option("-d,--duration", o.duration, "Simulated seconds per run");
  cmd->add_flag("--quick", o.quick, "Smoke preset: 5 s, seeds 1..3, stations 10,30,50");
  cmd->add_option("-j,--jobs", o.jobs, "Runs executed in parallel");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slot-level simulator of CSMA/CA, CSMA/ECA and CSMA/ECA-DR"};
  app.require_subcommand(1);

  Options o;
  auto* run = app.add_subcommand("run", "Execute a sweep and write runs.csv, summary.csv, results.json");
  add_plan_flags(run, o);
  run->add_option("-o,--out", o.out, "Output directory");
  run->add_option("-t,--trace-level", o.trace_level, "0 off, 1 per-slot traces, 2 adds estimator updates")
      ->check(CLI::Range(0, 2));

  auto* describe = app.add_subcommand("describe", "Print run count, estimated wall time and digest");
  add_plan_flags(describe, o);

  auto* dump = app.add_subcommand("dump-config", "Print the effective scenario as YAML");
  add_plan_flags(dump, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ecadr::sweep::kExitOk : ecadr::sweep::kExitValidation;
  }

  ecadr::sweep::SweepPlan plan;
  try {
    plan = build_plan(o);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ecadr::sweep::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ecadr::sweep::kExitRuntime;
  }

  if (*describe) {
    std::cout << ecadr::sweep::describe(plan);
    return ecadr::sweep::kExitOk;
  }
  if (*dump) {
    std::cout << ecadr::serialize_scenario(plan.scenario);
    return ecadr::sweep::kExitOk;
  }
  return ecadr::sweep::run_sweep(plan, std::cerr);
}
