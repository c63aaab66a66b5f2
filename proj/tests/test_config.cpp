#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ecadr/config.hpp"

using namespace ecadr;

namespace {

int error_line(const std::string& yaml) {
  try {
    parse_scenario(yaml);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string error_text(const std::string& yaml) {
  try {
    parse_scenario(yaml);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("default configuration") {
  const auto d = default_paper_config();
  CHECK(d.phy.slot_us == 9);
  CHECK(d.phy.difs_us == 28);
  CHECK(d.phy.sifs_us == 10);
  CHECK(d.phy.t_phy_us == 32);
  CHECK(d.phy.t_sym_us == 4);
  CHECK(d.phy.phy_rate_bps == 65'000'000);
  CHECK(d.phy.bits_per_ofdm_symbol == 260);
  CHECK(d.mac.retry_limit == 6);
  CHECK(d.mac.max_stage == 5);
  CHECK(d.mac.queue_capacity == 2000);
  CHECK(d.mac.payload_bytes == 1470);

  CHECK(d.ac[index(Ac::BK)].cw_min == 32);
  CHECK(d.ac[index(Ac::BE)].cw_min == 32);
  CHECK(d.ac[index(Ac::VI)].cw_min == 16);
  CHECK(d.ac[index(Ac::VO)].cw_min == 8);
  for (Ac a : kAllAcs) {
    CHECK(d.ac[index(a)].ac == a);
    CHECK(d.ac[index(a)].delay_sensitive == (a == Ac::VO || a == Ac::VI));
  }
}

TEST_CASE("bits per symbol derivations") {
  PhyConfig p;
  p.derive_bits_per_symbol();
  CHECK(p.bits_per_ofdm_symbol == 260);

  p.ofdm_rate_mode = OfdmRateMode::SubcarrierProduct;
  p.derive_bits_per_symbol();
  CHECK(p.bits_per_ofdm_symbol == 2106);  // 234 * 6 * 3/4 * 2

  p.ofdm_rate_mode = OfdmRateMode::Explicit;
  p.bits_per_ofdm_symbol = 117;
  p.derive_bits_per_symbol();
  CHECK(p.bits_per_ofdm_symbol == 117);
}

TEST_CASE("fifty-station saturated scenario") {
  const auto cfg = parse_scenario(R"(
name: fig1-50
traffic:
  profile: saturated
sweep:
  n_stations: [50]
  sim_duration_s: 60
seeds: [1, 2, 3]
)");
  CHECK(cfg.name == "fig1-50");
  CHECK(cfg.profile == TrafficProfile::Saturated);
  CHECK(cfg.station_counts == std::vector<int>{50});
  CHECK(cfg.seeds.size() == 3);
  CHECK(cfg.source(Ac::BE).kind == SourceKind::SaturatedCbr);
  CHECK(cfg.source(Ac::VO).kind == SourceKind::VoiceIlbc);
  CHECK(cfg.phy == default_paper_config().phy);
}

TEST_CASE("unsaturated profile switches BE and BK to 1 Mbps") {
  const auto cfg = parse_scenario("traffic:\n  profile: unsaturated\n");
  CHECK(cfg.source(Ac::BE).kind == SourceKind::UnsaturatedCbr);
  CHECK(cfg.source(Ac::BE).rate_bps == 1e6);
  CHECK(cfg.source(Ac::BK).rate_bps == 1e6);
}

TEST_CASE("cw_min table") {
  const auto cfg = parse_scenario("mac:\n  cw_min: [32, 32, 16, 8]\n");
  CHECK(cfg.params(Ac::VO).cw_min == 8);

  CHECK(error_line("mac:\n  cw_min: [32, 32, 12, 8]\n") == 2);
  CHECK(error_text("mac:\n  cw_min: [32, 32, 16]\n").find("4 values") != std::string::npos);
}

TEST_CASE("max stage 7 clashes with the sentinel") {
  const std::string yaml = "name: x\nmac:\n  max_stage: 7\n";
  CHECK(error_line(yaml) == 3);
  CHECK(error_text(yaml).find("sentinel") != std::string::npos);
  CHECK(error_line("mac:\n  max_stage: 6\n") == -1);
}

TEST_CASE("rejections") {
  CHECK(error_line("name: x\nphy:\n  slot_us: 9\n  slotus: 9\n") == 4);
  CHECK(error_text("bogus: 1\n").find("unknown key") != std::string::npos);
  CHECK(error_line("sweep:\n  n_stations: [0]\n") > 0);
  CHECK(error_line("seeds: []\n") > 0);
  CHECK(error_line("seeds: [1, 1]\n") > 0);
  CHECK(error_line("sweep:\n  sim_duration_s: 0\n") > 0);
  CHECK(error_line("sweep:\n  protocols: [aloha]\n") == 2);
  CHECK(error_line("phy:\n  slot_us: nine\n") == 2);
  CHECK(error_line("phy: [\n") > 0);
  CHECK(error_line("phy:\n  difs_us: 10\n  sifs_us: 10\n") > 0);
}

TEST_CASE("round trip") {
  auto cfg = default_scenario(TrafficProfile::Unsaturated);
  cfg.name = "round trip";
  cfg.station_counts = {5, 10, 90};
  cfg.seeds = {3, 1, 4, 15};
  cfg.protocols = {Protocol::CsmaCa, Protocol::EcaDr};
  cfg.sim_duration_s = 12.5;
  cfg.estimator.ema_alpha = 0.3;
  cfg.estimator.counting = SlotCounting::DurationWeighted;
  cfg.phy.ofdm_rate_mode = OfdmRateMode::Explicit;
  cfg.phy.bits_per_ofdm_symbol = 1560;
  cfg.sources[index(Ac::BE)].arrivals = ArrivalPattern::Poisson;
  cfg.sources[index(Ac::VO)].always_on = true;

  const auto text = serialize_scenario(cfg);
  const auto back = parse_scenario(text);
  CHECK(back == cfg);
  CHECK(serialize_scenario(back) == text);

  const auto def = default_scenario();
  CHECK(parse_scenario(serialize_scenario(def)) == def);
}

TEST_CASE("load from file") {
  const auto path = std::filesystem::temp_directory_path() / "ecadr_test_config.yaml";
  {
    std::ofstream out(path);
    out << "name: from-file\nsweep:\n  n_stations: [20, 50]\n";
  }
  const auto cfg = load_scenario(path.string());
  CHECK(cfg.name == "from-file");
  CHECK(cfg.station_counts == std::vector<int>{20, 50});
  std::filesystem::remove(path);

  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.yaml"), ConfigError);
}

TEST_CASE("token parsing") {
  CHECK(parse_protocol("ECA-DR") == Protocol::EcaDr);
  CHECK(parse_protocol("csma_ca") == Protocol::CsmaCa);
  CHECK(parse_protocol("eca") == Protocol::Eca);
  CHECK_FALSE(parse_protocol("aloha"));
  CHECK(parse_ac("vo") == Ac::VO);
  CHECK(parse_profile("Unsaturated") == TrafficProfile::Unsaturated);
}
