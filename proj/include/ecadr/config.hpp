#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecadr/traffic.hpp"
#include "ecadr/types.hpp"

namespace ecadr {

/// Raised for malformed or invalid scenario input. `line` is 1-based, 0 when
/// the problem is not tied to a location in a file.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string field = {});
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

/// How the data-bits-per-OFDM-symbol figure is obtained.
enum class OfdmRateMode : std::uint8_t {
  RateDerived,        // phy_rate_bps * t_sym_us * 1e-6
  SubcarrierProduct,  // subcarriers * bits/subcarrier * coding rate * streams
  Explicit,           // bits_per_ofdm_symbol as given
};

struct PhyConfig {
  std::int64_t phy_rate_bps = 65'000'000;
  int channel_width_mhz = 20;
  int n_streams = 2;
  Micros slot_us = 9;
  Micros difs_us = 28;
  Micros sifs_us = 10;
  Micros t_phy_us = 32;
  Micros t_sym_us = 4;
  OfdmRateMode ofdm_rate_mode = OfdmRateMode::RateDerived;
  int subcarriers = 234;
  int bits_per_subcarrier = 6;
  double coding_rate = 0.75;
  std::int64_t bits_per_ofdm_symbol = 260;

  /// Recomputes bits_per_ofdm_symbol from the mode (no-op for Explicit).
  void derive_bits_per_symbol();
  void validate() const;
  bool operator==(const PhyConfig&) const = default;
};

struct AcParams {
  Ac ac = Ac::BE;
  int cw_min = 32;
  bool delay_sensitive = false;
  bool operator==(const AcParams&) const = default;
};

struct MacConfig {
  int retry_limit = 6;
  int max_stage = 5;
  std::size_t queue_capacity = 2000;
  std::int32_t payload_bytes = 1470;
  Protocol protocol = Protocol::EcaDr;

  void validate() const;
  bool operator==(const MacConfig&) const = default;
};

/// How busy periods count toward the collision probability window.
enum class SlotCounting : std::uint8_t { PerEvent, DurationWeighted };

struct EstimatorConfig {
  std::int64_t window_slots = 1000;
  std::int64_t update_interval_slots = 100;
  double ema_alpha = 0.1;
  double pcc_cap = 0.999;
  double nac_cap_factor = 10.0;  // nac <= factor * n_stations
  SlotCounting counting = SlotCounting::PerEvent;

  void validate() const;
  bool operator==(const EstimatorConfig&) const = default;
};

struct PaperDefaults {
  PhyConfig phy;
  MacConfig mac;
  PerAc<AcParams> ac;
};

/// Table-1 PHY/MAC values and the [BK, BE, VI, VO] = [32, 32, 16, 8] CW_min table.
PaperDefaults default_paper_config();

struct ScenarioConfig {
  std::string name = "scenario";
  PhyConfig phy;
  MacConfig mac;
  PerAc<AcParams> ac;
  EstimatorConfig estimator;
  TrafficProfile profile = TrafficProfile::Saturated;
  PerAc<SourceModel> sources;
  std::vector<Protocol> protocols = {Protocol::Eca, Protocol::EcaDr};
  std::vector<int> station_counts = {10};
  double sim_duration_s = 60.0;
  std::vector<std::uint64_t> seeds = {1};

  const AcParams& params(Ac a) const { return ac[index(a)]; }
  const SourceModel& source(Ac a) const { return sources[index(a)]; }

  void validate() const;
  bool operator==(const ScenarioConfig&) const = default;
};

/// Per-AC sources of a traffic profile: iLBC voice, VBR video, and BE/BK at
/// 65 Mbps (saturated) or 1 Mbps (unsaturated).
PerAc<SourceModel> profile_sources(TrafficProfile profile);

ScenarioConfig default_scenario(TrafficProfile profile = TrafficProfile::Saturated);

ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario(const std::string& text, const std::string& origin = "<string>");
std::string serialize_scenario(const ScenarioConfig& cfg);

}  // namespace ecadr
