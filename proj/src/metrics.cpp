#include "ecadr/metrics.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ecadr::metrics {

std::optional<double> jain(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  double sum = 0.0, sum_sq = 0.0;
  for (double x : xs) {
    sum += x;
    sum_sq += x * x;
  }
  if (sum_sq <= 0.0) return std::nullopt;
  return sum * sum / (static_cast<double>(xs.size()) * sum_sq);
}

Collector::Collector(int n_stations, const PerAc<bool>& active_acs)
    : n_stations_(n_stations), active_(active_acs), flows_(static_cast<std::size_t>(n_stations)) {}

void Collector::on_arrival(int station, Ac ac) { ++flows_[station][index(ac)].arrivals; }

void Collector::on_queue_drop(int station, Ac ac) { ++flows_[station][index(ac)].queue_drops; }

void Collector::on_attempt(const TxAttempt& a) { ++flows_[a.station_id][index(a.ac)].attempts; }

void Collector::on_collision(const TxAttempt& a, bool virtual_collision) {
  auto& f = flows_[a.station_id][index(a.ac)];
  ++f.collisions;
  if (virtual_collision) ++f.virtual_collisions;
}

void Collector::record_success(const TxAttempt& a, const std::vector<PacketRecord>& delivered,
                               Micros completed_us) {
  auto& f = flows_[a.station_id][index(a.ac)];
  ++f.successes;
  for (const auto& pkt : delivered) {
    ++f.delivered;
    f.delivered_bytes += pkt.payload_bytes;
    delays_[index(a.ac)].push_back(completed_us - pkt.arrival_time_us);
  }
  if (f.last_success_us >= 0) {
    f.gap_sum_us += static_cast<double>(completed_us - f.last_success_us);
    ++f.gap_count;
  }
  f.last_success_us = completed_us;
}

void Collector::on_retry_drop(int station, Ac ac, std::int64_t n_packets) {
  flows_[station][index(ac)].retry_drops += n_packets;
}

void Collector::on_slot(SlotKind kind, Micros duration, std::int64_t count) {
  switch (kind) {
    case SlotKind::Idle:
      idle_slots_ += count;
      idle_us_ += duration;
      break;
    case SlotKind::Success:
      busy_slots_ += count;
      busy_us_ += duration;
      break;
    case SlotKind::Collision:
      collision_slots_ += count;
      collision_us_ += duration;
      break;
  }
}

namespace {

std::optional<double> mean_of(const std::vector<Micros>& v) {
  if (v.empty()) return std::nullopt;
  const double s = std::accumulate(v.begin(), v.end(), 0.0, [](double acc, Micros x) { return acc + x; });
  return s / static_cast<double>(v.size());
}

std::optional<double> p95_of(std::vector<Micros> v) {
  if (v.empty()) return std::nullopt;
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(v.size()))) - 1;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(rank), v.end());
  return static_cast<double>(v[rank]);
}

}  // namespace

RunMetrics Collector::finish(double duration_s, Micros simulated_us,
                             const std::vector<PerAc<std::int64_t>>& residual) const {
  RunMetrics m;
  m.duration_s = duration_s;
  m.simulated_us = simulated_us;
  m.n_stations = n_stations_;
  m.idle_slots = idle_slots_;
  m.busy_slots = busy_slots_;
  m.collision_slots = collision_slots_;
  m.idle_time_us = idle_us_;
  m.busy_time_us = busy_us_;
  m.collision_time_us = collision_us_;

  std::vector<double> station_total(static_cast<std::size_t>(n_stations_), 0.0);
  std::vector<Micros> all_delays;
  double all_gap_sum = 0.0;
  std::int64_t all_gap_count = 0;

  for (Ac a : kAllAcs) {
    auto& am = m.per_ac[index(a)];
    std::vector<double> per_station;
    double gap_sum = 0.0;
    std::int64_t gap_count = 0;
    for (int s = 0; s < n_stations_; ++s) {
      const auto& f = flows_[s][index(a)];
      const auto res = residual[s][index(a)];
      if (f.arrivals != f.delivered + f.queue_drops + f.retry_drops + res) {
        std::ostringstream msg;
        msg << "conservation violated for station " << s << " AC " << to_string(a) << ": arrivals "
            << f.arrivals << " != delivered " << f.delivered << " + queue drops " << f.queue_drops
            << " + retry drops " << f.retry_drops << " + residual " << res;
        throw ConservationError(msg.str());
      }
      am.delivered_packets += f.delivered;
      am.delivered_bytes += f.delivered_bytes;
      am.tx_attempts += f.attempts;
      am.successes += f.successes;
      am.collisions += f.collisions;
      am.virtual_collisions += f.virtual_collisions;
      am.queue_drops += f.queue_drops;
      am.retry_drops += f.retry_drops;
      am.arrivals += f.arrivals;
      am.residual += res;
      gap_sum += f.gap_sum_us;
      gap_count += f.gap_count;
      const double tput = static_cast<double>(f.delivered_bytes) * 8.0 / duration_s;
      per_station.push_back(tput);
      station_total[static_cast<std::size_t>(s)] += tput;
    }
    am.throughput_bps = static_cast<double>(am.delivered_bytes) * 8.0 / duration_s;
    am.mean_delay_us = mean_of(delays_[index(a)]);
    am.p95_delay_us = p95_of(delays_[index(a)]);
    if (gap_count > 0) am.mean_inter_success_us = gap_sum / static_cast<double>(gap_count);
    if (active_[index(a)]) am.jain_index = jain(per_station);
    all_delays.insert(all_delays.end(), delays_[index(a)].begin(), delays_[index(a)].end());
    all_gap_sum += gap_sum;
    all_gap_count += gap_count;

    auto& o = m.overall;
    o.throughput_bps += am.throughput_bps;
    o.delivered_packets += am.delivered_packets;
    o.delivered_bytes += am.delivered_bytes;
    o.tx_attempts += am.tx_attempts;
    o.successes += am.successes;
    o.collisions += am.collisions;
    o.virtual_collisions += am.virtual_collisions;
    o.queue_drops += am.queue_drops;
    o.retry_drops += am.retry_drops;
    o.arrivals += am.arrivals;
    o.residual += am.residual;
  }
  m.overall.mean_delay_us = mean_of(all_delays);
  m.overall.p95_delay_us = p95_of(std::move(all_delays));
  if (all_gap_count > 0) m.overall.mean_inter_success_us = all_gap_sum / static_cast<double>(all_gap_count);
  m.overall.jain_index = jain(station_total);
  return m;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

void flatten_ac(std::vector<std::pair<std::string, std::optional<double>>>& out, const std::string& prefix,
                const AcMetrics& a, int n_stations) {
  auto num = [](std::int64_t v) { return std::optional<double>(static_cast<double>(v)); };
  out.emplace_back(prefix + "throughput_bps", a.throughput_bps);
  out.emplace_back(prefix + "throughput_per_station_bps",
                   n_stations > 0 ? std::optional<double>(a.throughput_bps / n_stations) : std::nullopt);
  out.emplace_back(prefix + "delivered_packets", num(a.delivered_packets));
  out.emplace_back(prefix + "tx_attempts", num(a.tx_attempts));
  out.emplace_back(prefix + "successes", num(a.successes));
  out.emplace_back(prefix + "collisions", num(a.collisions));
  out.emplace_back(prefix + "virtual_collisions", num(a.virtual_collisions));
  out.emplace_back(prefix + "queue_drops", num(a.queue_drops));
  out.emplace_back(prefix + "retry_drops", num(a.retry_drops));
  out.emplace_back(prefix + "arrivals", num(a.arrivals));
  out.emplace_back(prefix + "residual", num(a.residual));
  out.emplace_back(prefix + "mean_delay_us", a.mean_delay_us);
  out.emplace_back(prefix + "p95_delay_us", a.p95_delay_us);
  out.emplace_back(prefix + "mean_inter_success_us", a.mean_inter_success_us);
  out.emplace_back(prefix + "jain_index", a.jain_index);
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

std::vector<std::pair<std::string, std::optional<double>>> flatten(const RunMetrics& m) {
  std::vector<std::pair<std::string, std::optional<double>>> out;
  flatten_ac(out, "all_", m.overall, m.n_stations);
  for (Ac a : kAllAcs) flatten_ac(out, std::string(to_string(a)) + "_", m.per_ac[index(a)], m.n_stations);
  auto num = [](std::int64_t v) { return std::optional<double>(static_cast<double>(v)); };
  out.emplace_back("idle_slots", num(m.idle_slots));
  out.emplace_back("busy_slots", num(m.busy_slots));
  out.emplace_back("collision_slots", num(m.collision_slots));
  out.emplace_back("idle_time_us", num(m.idle_time_us));
  out.emplace_back("busy_time_us", num(m.busy_time_us));
  out.emplace_back("collision_time_us", num(m.collision_time_us));
  out.emplace_back("simulated_us", num(m.simulated_us));
  return out;
}

SummaryRow aggregate(const std::vector<RunMetrics>& runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate: no runs");
  SummaryRow row;
  row.protocol = runs.front().protocol;
  row.profile = runs.front().profile;
  row.n_stations = runs.front().n_stations;
  row.n_runs = static_cast<int>(runs.size());
  for (const auto& r : runs) {
    if (r.protocol != row.protocol || r.profile != row.profile || r.n_stations != row.n_stations) {
      throw std::invalid_argument("aggregate: runs belong to different sweep points");
    }
  }
  std::vector<std::vector<std::pair<std::string, std::optional<double>>>> flat;
  for (const auto& r : runs) flat.push_back(flatten(r));
  const std::size_t n_cols = flat.front().size();
  for (std::size_t c = 0; c < n_cols; ++c) {
    row.names.push_back(flat.front()[c].first);
    std::vector<double> xs;
    for (const auto& f : flat) {
      if (f[c].second) xs.push_back(*f[c].second);
    }
    if (xs.empty()) {
      row.mean.emplace_back();
      row.stddev.emplace_back();
      continue;
    }
    const bool constant = std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); });
    const double mean = constant ? xs.front() : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
    row.mean.emplace_back(mean);
    row.stddev.emplace_back(sd);
  }
  return row;
}

std::string run_csv_header() {
  std::string h = "schema_version,protocol,profile,n_stations,seed,duration_s";
  for (const auto& [name, _] : flatten(RunMetrics{})) h += "," + name;
  return h;
}

std::string run_csv_row(const RunMetrics& m) {
  std::string r = std::to_string(kSchemaVersion) + "," + std::string(to_string(m.protocol)) + "," +
                  std::string(to_string(m.profile)) + "," + std::to_string(m.n_stations) + "," +
                  std::to_string(m.seed) + "," + format_number(m.duration_s);
  for (const auto& [_, v] : flatten(m)) r += "," + cell(v);
  return r;
}

std::string summary_csv_header() {
  std::string h = "schema_version,protocol,profile,n_stations,n_runs";
  for (const auto& [name, _] : flatten(RunMetrics{})) h += "," + name + "_mean," + name + "_std";
  return h;
}

std::string summary_csv_row(const SummaryRow& s) {
  std::string r = std::to_string(kSchemaVersion) + "," + std::string(to_string(s.protocol)) + "," +
                  std::string(to_string(s.profile)) + "," + std::to_string(s.n_stations) + "," +
                  std::to_string(s.n_runs);
  for (std::size_t c = 0; c < s.names.size(); ++c) r += "," + cell(s.mean[c]) + "," + cell(s.stddev[c]);
  return r;
}

std::string runs_json(const std::vector<RunMetrics>& runs, const std::vector<SummaryRow>& summary) {
  using nlohmann::ordered_json;
  auto value = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["runs"] = ordered_json::array();
  for (const auto& m : runs) {
    ordered_json j;
    j["protocol"] = std::string(to_string(m.protocol));
    j["profile"] = std::string(to_string(m.profile));
    j["n_stations"] = m.n_stations;
    j["seed"] = m.seed;
    j["duration_s"] = m.duration_s;
    for (const auto& [name, v] : flatten(m)) j[name] = value(v);
    doc["runs"].push_back(std::move(j));
  }
  doc["summary"] = ordered_json::array();
  for (const auto& s : summary) {
    ordered_json j;
    j["protocol"] = std::string(to_string(s.protocol));
    j["profile"] = std::string(to_string(s.profile));
    j["n_stations"] = s.n_stations;
    j["n_runs"] = s.n_runs;
    for (std::size_t c = 0; c < s.names.size(); ++c) {
      j[s.names[c] + "_mean"] = value(s.mean[c]);
      j[s.names[c] + "_std"] = value(s.stddev[c]);
    }
    doc["summary"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace ecadr::metrics
