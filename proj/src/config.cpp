#include "ecadr/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ecadr {

ConfigError::ConfigError(const std::string& what, int line, std::string field)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line),
      field_(std::move(field)) {}

namespace {

bool is_power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

std::string_view to_string(OfdmRateMode m) {
  switch (m) {
    case OfdmRateMode::RateDerived: return "rate_derived";
    case OfdmRateMode::SubcarrierProduct: return "subcarrier_product";
    case OfdmRateMode::Explicit: return "explicit";
  }
  return "?";
}

std::optional<OfdmRateMode> parse_ofdm_mode(std::string_view s) {
  const auto n = normalize_token(s);
  if (n == "ratederived") return OfdmRateMode::RateDerived;
  if (n == "subcarrierproduct") return OfdmRateMode::SubcarrierProduct;
  if (n == "explicit") return OfdmRateMode::Explicit;
  return std::nullopt;
}

std::string_view to_string(SlotCounting c) {
  return c == SlotCounting::PerEvent ? "per_event" : "duration_weighted";
}

std::optional<SlotCounting> parse_counting(std::string_view s) {
  const auto n = normalize_token(s);
  if (n == "perevent") return SlotCounting::PerEvent;
  if (n == "durationweighted") return SlotCounting::DurationWeighted;
  return std::nullopt;
}

std::string_view to_string(ArrivalPattern a) {
  return a == ArrivalPattern::Periodic ? "periodic" : "poisson";
}

std::optional<ArrivalPattern> parse_arrivals(std::string_view s) {
  const auto n = normalize_token(s);
  if (n == "periodic") return ArrivalPattern::Periodic;
  if (n == "poisson") return ArrivalPattern::Poisson;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// YAML reading with line diagnostics

int line_of(const YAML::Node& n) { return n.Mark().is_null() ? 0 : n.Mark().line + 1; }

[[noreturn]] void fail(const YAML::Node& n, const std::string& field, const std::string& msg) {
  throw ConfigError(field + ": " + msg, line_of(n), field);
}

template <typename T>
T scalar(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) fail(n, field, "expected a scalar value");
  try {
    return n.as<T>();
  } catch (const YAML::BadConversion&) {
    fail(n, field, "cannot convert '" + n.Scalar() + "'");
  }
}

void check_keys(const YAML::Node& map, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!map.IsMap()) fail(map, where, "expected a mapping");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      fail(kv.first, where + "." + key, "unknown key");
    }
  }
}

template <typename T>
void read(const YAML::Node& map, const char* key, const std::string& where, T& out) {
  if (const auto n = map[key]) out = scalar<T>(n, where + "." + key);
}

template <typename E, typename Parser>
void read_enum(const YAML::Node& map, const char* key, const std::string& where, E& out, Parser parse) {
  if (const auto n = map[key]) {
    const auto field = where + "." + key;
    const auto text = scalar<std::string>(n, field);
    const auto v = parse(text);
    if (!v) fail(n, field, "unrecognized value '" + text + "'");
    out = *v;
  }
}

template <typename T>
std::vector<T> read_list(const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence()) fail(n, field, "expected a list");
  std::vector<T> out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    out.push_back(scalar<T>(n[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// Validation errors are reported against the node that carried the value.
template <typename Fn>
void validate_at(const YAML::Node& n, Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    if (e.line() > 0 || !n) throw;
    throw ConfigError(e.what(), line_of(n), e.field());
  }
}

SourceModel default_source_for(SourceKind kind) {
  switch (kind) {
    case SourceKind::None: return SourceModel{};
    case SourceKind::SaturatedCbr: return saturated_cbr();
    case SourceKind::UnsaturatedCbr: return unsaturated_cbr();
    case SourceKind::VoiceIlbc: return voice_ilbc();
    case SourceKind::VideoVbr: return video_vbr();
    case SourceKind::VideoTrace: {
      auto m = video_vbr();
      m.kind = SourceKind::VideoTrace;
      return m;
    }
  }
  return {};
}

SourceModel read_source(const YAML::Node& n, const std::string& where, const SourceModel& fallback) {
  check_keys(n, where,
             {"kind", "rate_bps", "payload_bytes", "arrivals", "interval_us", "talk_mean_s",
              "silence_mean_s", "always_on", "frame_rate_hz", "size_sigma", "trace"});
  SourceModel m = fallback;
  if (const auto k = n["kind"]) {
    const auto text = scalar<std::string>(k, where + ".kind");
    const auto kind = parse_source_kind(text);
    if (!kind) fail(k, where + ".kind", "unrecognized source kind '" + text + "'");
    if (*kind != fallback.kind) m = default_source_for(*kind);
  }
  read(n, "rate_bps", where, m.rate_bps);
  read(n, "payload_bytes", where, m.payload_bytes);
  read_enum(n, "arrivals", where, m.arrivals, parse_arrivals);
  read(n, "interval_us", where, m.voice_interval_us);
  read(n, "talk_mean_s", where, m.talk_mean_s);
  read(n, "silence_mean_s", where, m.silence_mean_s);
  read(n, "always_on", where, m.always_on);
  read(n, "frame_rate_hz", where, m.frame_rate_hz);
  read(n, "size_sigma", where, m.size_sigma);
  read(n, "trace", where, m.trace_path);
  return m;
}

void validate_source(const SourceModel& m, const std::string& field) {
  auto bad = [&](const std::string& msg) { throw ConfigError(field + ": " + msg, 0, field); };
  if (m.kind == SourceKind::None) return;
  if (m.payload_bytes <= 0) bad("payload_bytes must be positive");
  switch (m.kind) {
    case SourceKind::SaturatedCbr:
    case SourceKind::UnsaturatedCbr:
      if (!(m.rate_bps > 0)) bad("rate_bps must be positive");
      break;
    case SourceKind::VoiceIlbc:
      if (m.voice_interval_us <= 0) bad("interval_us must be positive");
      if (!m.always_on && (!(m.talk_mean_s > 0) || !(m.silence_mean_s > 0))) {
        bad("talk_mean_s and silence_mean_s must be positive");
      }
      break;
    case SourceKind::VideoVbr:
      if (!(m.rate_bps > 0)) bad("rate_bps must be positive");
      if (!(m.frame_rate_hz > 0)) bad("frame_rate_hz must be positive");
      if (!(m.size_sigma >= 0)) bad("size_sigma must be non-negative");
      break;
    case SourceKind::VideoTrace:
      if (!(m.frame_rate_hz > 0)) bad("frame_rate_hz must be positive");
      if (m.trace_path.empty() && m.trace_frames.empty()) bad("trace path required");
      break;
    case SourceKind::None:
      break;
  }
}

}  // namespace

void PhyConfig::derive_bits_per_symbol() {
  switch (ofdm_rate_mode) {
    case OfdmRateMode::RateDerived:
      bits_per_ofdm_symbol = phy_rate_bps * t_sym_us / 1'000'000;
      break;
    case OfdmRateMode::SubcarrierProduct:
      bits_per_ofdm_symbol = std::llround(subcarriers * bits_per_subcarrier * coding_rate * n_streams);
      break;
    case OfdmRateMode::Explicit:
      break;
  }
}

void PhyConfig::validate() const {
  auto bad = [](const std::string& field, const std::string& msg) {
    throw ConfigError("phy." + field + ": " + msg, 0, "phy." + field);
  };
  if (phy_rate_bps <= 0) bad("phy_rate_bps", "must be positive");
  if (channel_width_mhz <= 0) bad("channel_width_mhz", "must be positive");
  if (n_streams <= 0) bad("n_streams", "must be positive");
  if (slot_us <= 0) bad("slot_us", "must be positive");
  if (difs_us <= 0) bad("difs_us", "must be positive");
  if (sifs_us <= 0) bad("sifs_us", "must be positive");
  if (t_phy_us <= 0) bad("t_phy_us", "must be positive");
  if (t_sym_us <= 0) bad("t_sym_us", "must be positive");
  if (difs_us <= sifs_us) bad("difs_us", "must exceed sifs_us");
  if (bits_per_ofdm_symbol <= 0) bad("bits_per_ofdm_symbol", "must be positive");
}

void MacConfig::validate() const {
  auto bad = [](const std::string& field, const std::string& msg) {
    throw ConfigError("mac." + field + ": " + msg, 0, "mac." + field);
  };
  if (retry_limit < 1) bad("retry_limit", "must be at least 1");
  if (max_stage < 0) bad("max_stage", "must be non-negative");
  if (max_stage > 6) bad("max_stage", "must be <= 6; stage field value 7 is the empty-queue sentinel");
  if (queue_capacity < 1) bad("queue_capacity", "must be at least 1");
  if (payload_bytes < 0) bad("payload_bytes", "must be non-negative");
}

void EstimatorConfig::validate() const {
  auto bad = [](const std::string& field, const std::string& msg) {
    throw ConfigError("estimator." + field + ": " + msg, 0, "estimator." + field);
  };
  if (window_slots < 1) bad("window_slots", "must be positive");
  if (update_interval_slots < 1) bad("update_interval_slots", "must be positive");
  if (!(ema_alpha > 0 && ema_alpha <= 1)) bad("ema_alpha", "must be in (0, 1]");
  if (!(pcc_cap > 0 && pcc_cap < 1)) bad("pcc_cap", "must be in (0, 1)");
  if (!(nac_cap_factor >= 1)) bad("nac_cap_factor", "must be >= 1");
}

void ScenarioConfig::validate() const {
  phy.validate();
  mac.validate();
  estimator.validate();
  for (Ac a : kAllAcs) {
    const auto& p = ac[index(a)];
    const std::string field = "mac.cw_min[" + std::string(to_string(a)) + "]";
    if (p.ac != a) throw ConfigError(field + ": AC table out of [BK, BE, VI, VO] order", 0, field);
    if (p.cw_min < 2 || !is_power_of_two(p.cw_min)) {
      throw ConfigError(field + ": must be a power of two >= 2", 0, field);
    }
    if (p.delay_sensitive != is_delay_sensitive(a)) {
      throw ConfigError(field + ": delay_sensitive must hold exactly for VO and VI", 0, field);
    }
    validate_source(sources[index(a)], "traffic." + std::string(to_string(a)));
  }
  if (protocols.empty()) throw ConfigError("sweep.protocols: must not be empty", 0, "sweep.protocols");
  if (station_counts.empty()) throw ConfigError("sweep.n_stations: must not be empty", 0, "sweep.n_stations");
  for (int n : station_counts) {
    if (n < 1) throw ConfigError("sweep.n_stations: every count must be >= 1", 0, "sweep.n_stations");
  }
  if (!(sim_duration_s > 0)) {
    throw ConfigError("sweep.sim_duration_s: must be positive", 0, "sweep.sim_duration_s");
  }
  if (seeds.empty()) throw ConfigError("seeds: must not be empty", 0, "seeds");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw ConfigError("seeds: must be distinct", 0, "seeds");
  }
}

PaperDefaults default_paper_config() {
  PaperDefaults d;
  d.phy = PhyConfig{};
  d.phy.derive_bits_per_symbol();
  d.mac = MacConfig{};
  const std::array<int, kNumAcs> cw = {32, 32, 16, 8};
  for (Ac a : kAllAcs) d.ac[index(a)] = AcParams{a, cw[index(a)], is_delay_sensitive(a)};
  return d;
}

PerAc<SourceModel> profile_sources(TrafficProfile profile) {
  PerAc<SourceModel> s;
  s[index(Ac::VO)] = voice_ilbc();
  s[index(Ac::VI)] = video_vbr();
  if (profile == TrafficProfile::Saturated) {
    s[index(Ac::BE)] = saturated_cbr();
    s[index(Ac::BK)] = saturated_cbr();
  } else {
    s[index(Ac::BE)] = unsaturated_cbr();
    s[index(Ac::BK)] = unsaturated_cbr();
  }
  return s;
}

ScenarioConfig default_scenario(TrafficProfile profile) {
  const auto d = default_paper_config();
  ScenarioConfig cfg;
  cfg.phy = d.phy;
  cfg.mac = d.mac;
  cfg.ac = d.ac;
  cfg.profile = profile;
  cfg.sources = profile_sources(profile);
  return cfg;
}

ScenarioConfig parse_scenario(const std::string& text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(origin + ": YAML syntax error: " + e.msg, e.mark.line + 1);
  }
  if (!root || root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  check_keys(root, "scenario", {"name", "phy", "mac", "estimator", "traffic", "sweep", "seeds"});

  ScenarioConfig cfg = default_scenario(TrafficProfile::Saturated);
  read(root, "name", "scenario", cfg.name);

  if (const auto phy = root["phy"]) {
    check_keys(phy, "phy",
               {"phy_rate_bps", "channel_width_mhz", "n_streams", "slot_us", "difs_us", "sifs_us",
                "t_phy_us", "t_sym_us", "ofdm_rate", "subcarriers", "bits_per_subcarrier",
                "coding_rate", "bits_per_ofdm_symbol"});
    auto& p = cfg.phy;
    read(phy, "phy_rate_bps", "phy", p.phy_rate_bps);
    read(phy, "channel_width_mhz", "phy", p.channel_width_mhz);
    read(phy, "n_streams", "phy", p.n_streams);
    read(phy, "slot_us", "phy", p.slot_us);
    read(phy, "difs_us", "phy", p.difs_us);
    read(phy, "sifs_us", "phy", p.sifs_us);
    read(phy, "t_phy_us", "phy", p.t_phy_us);
    read(phy, "t_sym_us", "phy", p.t_sym_us);
    read_enum(phy, "ofdm_rate", "phy", p.ofdm_rate_mode, parse_ofdm_mode);
    read(phy, "subcarriers", "phy", p.subcarriers);
    read(phy, "bits_per_subcarrier", "phy", p.bits_per_subcarrier);
    read(phy, "coding_rate", "phy", p.coding_rate);
    if (const auto b = phy["bits_per_ofdm_symbol"]) {
      if (!phy["ofdm_rate"]) p.ofdm_rate_mode = OfdmRateMode::Explicit;
      if (p.ofdm_rate_mode != OfdmRateMode::Explicit) {
        fail(b, "phy.bits_per_ofdm_symbol", "only allowed with ofdm_rate: explicit");
      }
      p.bits_per_ofdm_symbol = scalar<std::int64_t>(b, "phy.bits_per_ofdm_symbol");
    }
    p.derive_bits_per_symbol();
    validate_at(phy, [&] { p.validate(); });
  }

  if (const auto mac = root["mac"]) {
    check_keys(mac, "mac", {"retry_limit", "max_stage", "queue_capacity", "payload_bytes", "cw_min"});
    auto& m = cfg.mac;
    read(mac, "retry_limit", "mac", m.retry_limit);
    if (const auto k = mac["max_stage"]) {
      m.max_stage = scalar<int>(k, "mac.max_stage");
      validate_at(k, [&] { m.validate(); });
    }
    read(mac, "queue_capacity", "mac", m.queue_capacity);
    read(mac, "payload_bytes", "mac", m.payload_bytes);
    if (const auto cw = mac["cw_min"]) {
      const auto values = read_list<int>(cw, "mac.cw_min");
      if (values.size() != kNumAcs) fail(cw, "mac.cw_min", "expected 4 values in [BK, BE, VI, VO] order");
      for (Ac a : kAllAcs) {
        const int v = values[index(a)];
        if (v < 2 || !is_power_of_two(v)) {
          fail(cw[index(a)], "mac.cw_min[" + std::string(to_string(a)) + "]", "must be a power of two >= 2");
        }
        cfg.ac[index(a)].cw_min = v;
      }
    }
    validate_at(mac, [&] { m.validate(); });
  }

  if (const auto est = root["estimator"]) {
    check_keys(est, "estimator",
               {"window_slots", "update_interval_slots", "ema_alpha", "pcc_cap", "nac_cap_factor",
                "slot_counting"});
    auto& e = cfg.estimator;
    read(est, "window_slots", "estimator", e.window_slots);
    read(est, "update_interval_slots", "estimator", e.update_interval_slots);
    read(est, "ema_alpha", "estimator", e.ema_alpha);
    read(est, "pcc_cap", "estimator", e.pcc_cap);
    read(est, "nac_cap_factor", "estimator", e.nac_cap_factor);
    read_enum(est, "slot_counting", "estimator", e.counting, parse_counting);
    validate_at(est, [&] { e.validate(); });
  }

  if (const auto traffic = root["traffic"]) {
    check_keys(traffic, "traffic", {"profile", "VO", "VI", "BE", "BK"});
    read_enum(traffic, "profile", "traffic", cfg.profile, parse_profile);
    cfg.sources = profile_sources(cfg.profile);
    for (Ac a : kAllAcs) {
      const std::string key(to_string(a));
      if (const auto s = traffic[key]) {
        const std::string where = "traffic." + key;
        cfg.sources[index(a)] = read_source(s, where, cfg.sources[index(a)]);
        validate_at(s, [&] { validate_source(cfg.sources[index(a)], where); });
      }
    }
  }

  if (const auto sweep = root["sweep"]) {
    check_keys(sweep, "sweep", {"protocols", "n_stations", "sim_duration_s"});
    if (const auto p = sweep["protocols"]) {
      cfg.protocols.clear();
      const auto names = read_list<std::string>(p, "sweep.protocols");
      for (std::size_t i = 0; i < names.size(); ++i) {
        const auto proto = parse_protocol(names[i]);
        if (!proto) fail(p[i], "sweep.protocols", "unrecognized protocol '" + names[i] + "'");
        cfg.protocols.push_back(*proto);
      }
    }
    if (const auto n = sweep["n_stations"]) {
      cfg.station_counts = n.IsScalar() ? std::vector<int>{scalar<int>(n, "sweep.n_stations")}
                                        : read_list<int>(n, "sweep.n_stations");
    }
    read(sweep, "sim_duration_s", "sweep", cfg.sim_duration_s);
    validate_at(sweep, [&] { cfg.validate(); });
  }

  if (const auto seeds = root["seeds"]) {
    cfg.seeds = read_list<std::uint64_t>(seeds, "seeds");
    validate_at(seeds, [&] { cfg.validate(); });
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_scenario(ss.str(), path);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what(), 0, e.field());
  }
}

namespace {

std::string shortest(double v) {
  if (v == std::floor(v) && std::fabs(v) < 1e15) return std::to_string(static_cast<std::int64_t>(v));
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

std::string serialize_scenario(const ScenarioConfig& cfg) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << cfg.name;

  const auto& p = cfg.phy;
  out << YAML::Key << "phy" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "phy_rate_bps" << YAML::Value << p.phy_rate_bps;
  out << YAML::Key << "channel_width_mhz" << YAML::Value << p.channel_width_mhz;
  out << YAML::Key << "n_streams" << YAML::Value << p.n_streams;
  out << YAML::Key << "slot_us" << YAML::Value << p.slot_us;
  out << YAML::Key << "difs_us" << YAML::Value << p.difs_us;
  out << YAML::Key << "sifs_us" << YAML::Value << p.sifs_us;
  out << YAML::Key << "t_phy_us" << YAML::Value << p.t_phy_us;
  out << YAML::Key << "t_sym_us" << YAML::Value << p.t_sym_us;
  out << YAML::Key << "ofdm_rate" << YAML::Value << std::string(to_string(p.ofdm_rate_mode));
  out << YAML::Key << "subcarriers" << YAML::Value << p.subcarriers;
  out << YAML::Key << "bits_per_subcarrier" << YAML::Value << p.bits_per_subcarrier;
  out << YAML::Key << "coding_rate" << YAML::Value << shortest(p.coding_rate);
  if (p.ofdm_rate_mode == OfdmRateMode::Explicit) {
    out << YAML::Key << "bits_per_ofdm_symbol" << YAML::Value << p.bits_per_ofdm_symbol;
  }
  out << YAML::EndMap;

  const auto& m = cfg.mac;
  out << YAML::Key << "mac" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "retry_limit" << YAML::Value << m.retry_limit;
  out << YAML::Key << "max_stage" << YAML::Value << m.max_stage;
  out << YAML::Key << "queue_capacity" << YAML::Value << m.queue_capacity;
  out << YAML::Key << "payload_bytes" << YAML::Value << m.payload_bytes;
  out << YAML::Key << "cw_min" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (Ac a : kAllAcs) out << cfg.ac[index(a)].cw_min;
  out << YAML::EndSeq;
  out << YAML::EndMap;

  const auto& e = cfg.estimator;
  out << YAML::Key << "estimator" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "window_slots" << YAML::Value << e.window_slots;
  out << YAML::Key << "update_interval_slots" << YAML::Value << e.update_interval_slots;
  out << YAML::Key << "ema_alpha" << YAML::Value << shortest(e.ema_alpha);
  out << YAML::Key << "pcc_cap" << YAML::Value << shortest(e.pcc_cap);
  out << YAML::Key << "nac_cap_factor" << YAML::Value << shortest(e.nac_cap_factor);
  out << YAML::Key << "slot_counting" << YAML::Value << std::string(to_string(e.counting));
  out << YAML::EndMap;

  out << YAML::Key << "traffic" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "profile" << YAML::Value << std::string(to_string(cfg.profile));
  for (Ac a : {Ac::VO, Ac::VI, Ac::BE, Ac::BK}) {
    const auto& s = cfg.sources[index(a)];
    out << YAML::Key << std::string(to_string(a)) << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "kind" << YAML::Value << std::string(to_string(s.kind));
    out << YAML::Key << "rate_bps" << YAML::Value << shortest(s.rate_bps);
    out << YAML::Key << "payload_bytes" << YAML::Value << s.payload_bytes;
    out << YAML::Key << "arrivals" << YAML::Value << std::string(to_string(s.arrivals));
    out << YAML::Key << "interval_us" << YAML::Value << s.voice_interval_us;
    out << YAML::Key << "talk_mean_s" << YAML::Value << shortest(s.talk_mean_s);
    out << YAML::Key << "silence_mean_s" << YAML::Value << shortest(s.silence_mean_s);
    out << YAML::Key << "always_on" << YAML::Value << s.always_on;
    out << YAML::Key << "frame_rate_hz" << YAML::Value << shortest(s.frame_rate_hz);
    out << YAML::Key << "size_sigma" << YAML::Value << shortest(s.size_sigma);
    if (!s.trace_path.empty()) out << YAML::Key << "trace" << YAML::Value << s.trace_path;
    out << YAML::EndMap;
  }
  out << YAML::EndMap;

  out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "protocols" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (auto proto : cfg.protocols) out << std::string(to_string(proto));
  out << YAML::EndSeq;
  out << YAML::Key << "n_stations" << YAML::Value << YAML::Flow << cfg.station_counts;
  out << YAML::Key << "sim_duration_s" << YAML::Value << shortest(cfg.sim_duration_s);
  out << YAML::EndMap;

  out << YAML::Key << "seeds" << YAML::Value << YAML::Flow << cfg.seeds;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace ecadr
