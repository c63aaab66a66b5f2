#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "ecadr/ac_state.hpp"
#include "ecadr/config.hpp"
#include "ecadr/estimator.hpp"
#include "ecadr/metrics.hpp"
#include "ecadr/protocols.hpp"
#include "ecadr/reservation.hpp"
#include "ecadr/slot.hpp"
#include "ecadr/traffic.hpp"

namespace ecadr::engine {

/// Read-only hooks into a run, for traces and audits.
class Observer {
 public:
  virtual ~Observer() = default;
  /// `n` consecutive idle slots starting at `start_us`; `idle_index` counts
  /// idle slots elapsed before this run of them.
  virtual void on_idle(Micros /*start_us*/, std::int64_t /*n*/, std::int64_t /*idle_index*/) {}
  /// A busy period. `losers` lost an internal collision in this slot.
  virtual void on_busy(Micros /*start_us*/, const SlotOutcome& /*outcome*/,
                       const std::vector<TxAttempt>& /*losers*/, std::int64_t /*idle_index*/) {}
};

struct RunOptions {
  std::ostream* trace = nullptr;  // per-slot log, see docs/trace-format.md
  int trace_level = 1;            // 2 adds estimator updates
  Observer* observer = nullptr;
};

struct Station {
  int id = 0;
  PerAc<AcState> acs;
  std::vector<TrafficSource> sources;  // indexed by AC
  reservation::ReservationLedger ledger;
  estimator::PccCounters pcc;
  estimator::NacEstimate estimate;
  std::int64_t idle_slots_seen = 0;
  std::int64_t injected = 0;

  AcState& ac(Ac a) { return acs[index(a)]; }
  const AcState& ac(Ac a) const { return acs[index(a)]; }
};

/// One seeded run. Strictly single-threaded and deterministic for fixed
/// (scenario, protocol, n_stations, seed).
class Simulation {
 public:
  Simulation(const ScenarioConfig& scenario, Protocol protocol, int n_stations, std::uint64_t seed,
             RunOptions options = {});

  /// Processes one event: a run of idle slots or one busy period.
  /// Returns false once simulated time has reached the configured duration.
  bool step();

  /// Runs to the end and returns the metrics. Throws
  /// metrics::ConservationError if packet accounting does not balance.
  metrics::RunMetrics run();

  /// Closes the run at the current time.
  metrics::RunMetrics finish() const;

  Micros now() const { return now_; }
  Micros end_time() const { return end_us_; }
  std::int64_t idle_index() const { return idle_index_; }
  std::int64_t slot_index() const { return slot_index_; }

  int n_stations() const { return static_cast<int>(stations_.size()); }
  Station& station(int i) { return stations_[static_cast<std::size_t>(i)]; }
  const Station& station(int i) const { return stations_[static_cast<std::size_t>(i)]; }
  const ScenarioConfig& scenario() const { return cfg_; }
  Protocol protocol() const { return protocol_; }

  /// Enqueues `count` packets stamped with the current time, as if they had
  /// just arrived; an empty queue takes the wait path.
  void inject_packets(int station, Ac ac, int count, std::int32_t payload_bytes);

  /// Overrides stage and backoff of one AC (tests and what-if setups).
  void force_state(int station, Ac ac, int stage, std::int64_t backoff);

  /// True iff every station has counted exactly idle_index() idle slots.
  bool audit_alignment() const;

 private:
  protocols::Context context(const Station& st, Ac ac) const;
  void enqueue(Station& st, Ac ac, const PacketRecord& pkt, bool defer_wake,
               std::vector<std::pair<int, Ac>>* woken);
  void deliver_arrivals(std::vector<std::pair<int, Ac>>* woken);
  std::int64_t idle_run_length() const;
  void advance_idle(std::int64_t n);
  void busy_period(std::vector<TxAttempt>& attempts);
  void observe_all(SlotKind kind, Micros duration);
  void maybe_update_estimates();
  double mean_cw(const Station& st) const;

  ScenarioConfig cfg_;
  Protocol protocol_;
  std::uint64_t seed_;
  RunOptions opts_;
  std::vector<Station> stations_;
  metrics::Collector collector_;
  Micros now_ = 0;
  Micros end_us_ = 0;
  std::int64_t idle_index_ = 0;
  std::int64_t slot_index_ = 0;
};

metrics::RunMetrics run(const ScenarioConfig& scenario, Protocol protocol, int n_stations, std::uint64_t seed,
                        RunOptions options = {});

}  // namespace ecadr::engine
