#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ecadr/config.hpp"
#include "ecadr/slot.hpp"
#include "ecadr/traffic.hpp"

namespace ecadr::metrics {

inline constexpr int kSchemaVersion = 1;

/// Jain's fairness index (sum x)^2 / (n sum x^2); nullopt for empty or all-zero input.
std::optional<double> jain(const std::vector<double>& xs);

struct AcMetrics {
  double throughput_bps = 0.0;  // MAC payload goodput
  std::int64_t delivered_packets = 0;
  std::int64_t delivered_bytes = 0;
  std::int64_t tx_attempts = 0;  // including attempts lost to internal collisions
  std::int64_t successes = 0;
  std::int64_t collisions = 0;
  std::int64_t virtual_collisions = 0;
  std::int64_t queue_drops = 0;
  std::int64_t retry_drops = 0;
  std::int64_t arrivals = 0;
  std::int64_t residual = 0;  // packets still queued at the end
  std::optional<double> mean_delay_us;
  std::optional<double> p95_delay_us;
  std::optional<double> mean_inter_success_us;
  std::optional<double> jain_index;

  bool operator==(const AcMetrics&) const = default;
};

struct RunMetrics {
  Protocol protocol = Protocol::Eca;
  TrafficProfile profile = TrafficProfile::Saturated;
  int n_stations = 0;
  std::uint64_t seed = 0;
  double duration_s = 0.0;
  Micros simulated_us = 0;
  PerAc<AcMetrics> per_ac;
  AcMetrics overall;
  std::int64_t idle_slots = 0;
  std::int64_t busy_slots = 0;
  std::int64_t collision_slots = 0;
  Micros idle_time_us = 0;
  Micros busy_time_us = 0;
  Micros collision_time_us = 0;

  const AcMetrics& ac(Ac a) const { return per_ac[index(a)]; }
  bool operator==(const RunMetrics&) const = default;
};

/// Thrown when arrivals != delivered + drops + residual for some (station, AC).
class ConservationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Per-run accumulator. Single-threaded; owned by the engine.
class Collector {
 public:
  Collector(int n_stations, const PerAc<bool>& active_acs);

  void on_arrival(int station, Ac ac);
  void on_queue_drop(int station, Ac ac);
  void on_attempt(const TxAttempt& a);
  void on_collision(const TxAttempt& a, bool virtual_collision);
  /// `completed_us` is when the Block ACK has been received.
  void record_success(const TxAttempt& a, const std::vector<PacketRecord>& delivered, Micros completed_us);
  void on_retry_drop(int station, Ac ac, std::int64_t n_packets);
  void on_slot(SlotKind kind, Micros duration, std::int64_t count = 1);

  /// Closes the run. `residual[station][ac]` is the final queue length.
  /// Throws ConservationError if any (station, AC) does not balance.
  RunMetrics finish(double duration_s, Micros simulated_us, const std::vector<PerAc<std::int64_t>>& residual) const;

 private:
  struct Flow {
    std::int64_t arrivals = 0;
    std::int64_t delivered = 0;
    std::int64_t delivered_bytes = 0;
    std::int64_t queue_drops = 0;
    std::int64_t retry_drops = 0;
    std::int64_t attempts = 0;
    std::int64_t successes = 0;
    std::int64_t collisions = 0;
    std::int64_t virtual_collisions = 0;
    Micros last_success_us = -1;
    double gap_sum_us = 0.0;
    std::int64_t gap_count = 0;
  };

  int n_stations_;
  PerAc<bool> active_;
  std::vector<PerAc<Flow>> flows_;
  PerAc<std::vector<Micros>> delays_;
  std::int64_t idle_slots_ = 0, busy_slots_ = 0, collision_slots_ = 0;
  Micros idle_us_ = 0, busy_us_ = 0, collision_us_ = 0;
};

struct SummaryRow {
  Protocol protocol = Protocol::Eca;
  TrafficProfile profile = TrafficProfile::Saturated;
  int n_stations = 0;
  int n_runs = 0;
  std::vector<std::string> names;
  std::vector<std::optional<double>> mean;
  std::vector<std::optional<double>> stddev;  // sample standard deviation
};

/// Named numeric columns of a run, in CSV order. Missing values are nullopt.
std::vector<std::pair<std::string, std::optional<double>>> flatten(const RunMetrics& m);

/// Mean and sample std per column over seeds of one sweep point. Throws
/// std::invalid_argument for an empty list or mixed (protocol, n, profile).
SummaryRow aggregate(const std::vector<RunMetrics>& runs);

std::string run_csv_header();
std::string run_csv_row(const RunMetrics& m);
std::string summary_csv_header();
std::string summary_csv_row(const SummaryRow& s);

/// JSON mirror of the CSV files.
std::string runs_json(const std::vector<RunMetrics>& runs, const std::vector<SummaryRow>& summary);

/// Shortest round-trip decimal form, so identical runs give identical text.
std::string format_number(double v);

}  // namespace ecadr::metrics
