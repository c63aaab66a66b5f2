#include "ecadr/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ecadr/airtime.hpp"
#include "ecadr/protocols.hpp"

namespace ecadr::engine {

namespace {

// Stream purposes for derive_seed.
constexpr std::uint64_t kBackoffStream = 1;
constexpr std::uint64_t kSourceStream = 2;

PerAc<bool> active_acs(const ScenarioConfig& cfg) {
  PerAc<bool> a{};
  for (Ac ac : kAllAcs) a[index(ac)] = cfg.source(ac).kind != SourceKind::None;
  return a;
}

std::string_view kind_name(SlotKind k) {
  switch (k) {
    case SlotKind::Idle: return "IDLE";
    case SlotKind::Success: return "SUCCESS";
    case SlotKind::Collision: return "COLLISION";
  }
  return "?";
}

}  // namespace

Simulation::Simulation(const ScenarioConfig& scenario, Protocol protocol, int n_stations, std::uint64_t seed,
                       RunOptions options)
    : cfg_(scenario),
      protocol_(protocol),
      seed_(seed),
      opts_(options),
      collector_(n_stations, active_acs(scenario)) {
  cfg_.mac.protocol = protocol;
  end_us_ = static_cast<Micros>(std::llround(cfg_.sim_duration_s * 1e6));
  stations_.resize(static_cast<std::size_t>(n_stations));
  for (int s = 0; s < n_stations; ++s) {
    auto& st = stations_[static_cast<std::size_t>(s)];
    st.id = s;
    st.pcc = estimator::PccCounters(cfg_.estimator.window_slots);
    for (Ac ac : kAllAcs) {
      const auto i = index(ac);
      st.acs[i] = AcState(cfg_.mac.queue_capacity, Rng(derive_seed(seed, s, i, kBackoffStream)));
      st.sources.emplace_back(cfg_.source(ac), ac, Rng(derive_seed(seed, s, i, kSourceStream)));
    }
  }
}

protocols::Context Simulation::context(const Station& st, Ac ac) const {
  protocols::Context ctx;
  ctx.protocol = protocol_;
  ctx.mac = &cfg_.mac;
  ctx.params = &cfg_.params(ac);
  if (protocol_ == Protocol::EcaDr) {
    ctx.ledger = &st.ledger;
    ctx.estimate = &st.estimate;
  }
  return ctx;
}

void Simulation::enqueue(Station& st, Ac ac, const PacketRecord& pkt, bool defer_wake,
                         std::vector<std::pair<int, Ac>>* woken) {
  auto& q = st.ac(ac);
  const bool was_empty = q.queue.empty();
  collector_.on_arrival(st.id, ac);
  if (!q.queue.enqueue(pkt)) {
    collector_.on_queue_drop(st.id, ac);
    return;
  }
  if (!was_empty) return;
  if (defer_wake) {
    woken->emplace_back(st.id, ac);
  } else {
    protocols::on_new_packet_empty_queue(q, context(st, ac));
  }
}

void Simulation::deliver_arrivals(std::vector<std::pair<int, Ac>>* woken) {
  for (auto& st : stations_) {
    for (Ac ac : kAllAcs) {
      auto& src = st.sources[index(ac)];
      while (src.peek_time() <= now_) enqueue(st, ac, src.pop(), woken != nullptr, woken);
    }
  }
}

void Simulation::inject_packets(int station, Ac ac, int count, std::int32_t payload_bytes) {
  auto& st = this->station(station);
  for (int i = 0; i < count; ++i) {
    PacketRecord pkt;
    pkt.ac = ac;
    pkt.arrival_time_us = now_;
    pkt.payload_bytes = payload_bytes;
    pkt.seqno = -(++st.injected);
    enqueue(st, ac, pkt, false, nullptr);
  }
}

void Simulation::force_state(int station, Ac ac, int stage, std::int64_t backoff) {
  auto& a = this->station(station).ac(ac);
  a.stage = stage;
  a.backoff = backoff;
}

bool Simulation::audit_alignment() const {
  return std::all_of(stations_.begin(), stations_.end(),
                     [&](const Station& st) { return st.idle_slots_seen == idle_index_; });
}

double Simulation::mean_cw(const Station& st) const {
  double sum = 0.0;
  int n = 0;
  for (Ac ac : kAllAcs) {
    const auto& a = st.ac(ac);
    if (!a.backlogged()) continue;
    sum += std::ldexp(static_cast<double>(cfg_.params(ac).cw_min), a.stage);
    ++n;
  }
  if (n == 0) {
    for (Ac ac : kAllAcs) sum += std::ldexp(static_cast<double>(cfg_.params(ac).cw_min), st.ac(ac).stage);
    n = static_cast<int>(kNumAcs);
  }
  return sum / n;
}

void Simulation::observe_all(SlotKind kind, Micros duration) {
  std::int64_t weight = 1;
  if (kind != SlotKind::Idle && cfg_.estimator.counting == SlotCounting::DurationWeighted) {
    weight = std::max<std::int64_t>(1, (duration + cfg_.phy.slot_us / 2) / cfg_.phy.slot_us);
  }
  for (auto& st : stations_) st.pcc.observe(kind, weight);
}

void Simulation::maybe_update_estimates() {
  if (protocol_ != Protocol::EcaDr) return;
  if (slot_index_ % cfg_.estimator.update_interval_slots != 0) return;
  for (auto& st : stations_) {
    st.estimate = estimator::estimate_nac(st.pcc, mean_cw(st), st.estimate, cfg_.estimator, n_stations(),
                                          slot_index_);
    if (opts_.trace != nullptr && opts_.trace_level >= 2) {
      *opts_.trace << now_ << " NAC " << st.id << ' ' << metrics::format_number(st.estimate.nac) << ' '
                   << metrics::format_number(st.estimate.pcc) << '\n';
    }
  }
}

std::int64_t Simulation::idle_run_length() const {
  const Micros slot = cfg_.phy.slot_us;
  std::int64_t n = std::max<std::int64_t>(1, (end_us_ - now_ + slot - 1) / slot);
  for (const auto& st : stations_) {
    for (Ac ac : kAllAcs) {
      const auto& a = st.ac(ac);
      if (a.backlogged()) {
        n = std::min(n, a.backoff);
      } else {
        const Micros t = st.sources[index(ac)].peek_time();
        if (t != TrafficSource::kNever) n = std::min(n, (t - now_ + slot - 1) / slot);
      }
    }
  }
  if (protocol_ == Protocol::EcaDr) {
    const auto every = cfg_.estimator.update_interval_slots;
    n = std::min(n, every - slot_index_ % every);
  }
  return std::max<std::int64_t>(1, n);
}

void Simulation::advance_idle(std::int64_t n) {
  if (opts_.observer != nullptr) opts_.observer->on_idle(now_, n, idle_index_);
  if (opts_.trace != nullptr) *opts_.trace << now_ << " IDLE " << n << '\n';
  const Micros duration = n * cfg_.phy.slot_us;
  for (auto& st : stations_) {
    for (auto& a : st.acs) {
      if (a.backlogged()) a.backoff -= n;
    }
    st.ledger.tick(n);
    st.pcc.observe_idle(n);
    st.idle_slots_seen += n;
  }
  collector_.on_slot(SlotKind::Idle, duration, n);
  now_ += duration;
  idle_index_ += n;
  slot_index_ += n;
  maybe_update_estimates();
}

void Simulation::busy_period(std::vector<TxAttempt>& attempts) {
  // Internal collisions: one winner per station.
  std::map<int, std::vector<TxAttempt>> by_station;
  for (const auto& a : attempts) by_station[a.station_id].push_back(a);
  std::vector<TxAttempt> winners;
  std::vector<TxAttempt> losers;
  for (auto& [_, list] : by_station) {
    auto [w, l] = protocols::resolve_virtual_collision(list);
    winners.push_back(w);
    losers.insert(losers.end(), l.begin(), l.end());
  }

  SlotOutcome outcome;
  outcome.attempts = winners;
  const auto& phy = cfg_.phy;
  airtime::AirtimeBreakdown success_air;
  if (winners.size() == 1) {
    outcome.kind = SlotKind::Success;
    success_air = airtime::t_success_total(winners[0].n_frames, winners[0].payload_bytes, phy);
    outcome.duration_us = success_air.t_success_us;
  } else {
    outcome.kind = SlotKind::Collision;
    outcome.duration_us = airtime::t_collision(winners, phy);
  }

  if (opts_.observer != nullptr) opts_.observer->on_busy(now_, outcome, losers, idle_index_);
  for (const auto& a : attempts) collector_.on_attempt(a);
  collector_.on_slot(outcome.kind, outcome.duration_us);
  observe_all(outcome.kind, outcome.duration_us);

  const Micros start = now_;
  now_ += outcome.duration_us;
  ++slot_index_;

  // Packets that arrived during the exchange are queued before the outcome is
  // applied; queues that were empty are woken only after the reservation
  // update, so their draws see the new announcement.
  std::vector<std::pair<int, Ac>> woken;
  deliver_arrivals(&woken);

  for (const auto& l : losers) {
    auto& st = station(l.station_id);
    collector_.on_collision(l, true);
    auto dropped = protocols::on_collision(st.ac(l.ac), context(st, l.ac), l);
    if (!dropped.empty()) collector_.on_retry_drop(l.station_id, l.ac, static_cast<std::int64_t>(dropped.size()));
  }

  if (outcome.kind == SlotKind::Success) {
    const auto& w = winners[0];
    auto& tx = station(w.station_id);
    auto delivered = protocols::on_success(tx.ac(w.ac), context(tx, w.ac), w);
    collector_.record_success(w, delivered, start + success_air.t_frame_us + phy.sifs_us + success_air.t_blockack_us);
    if (protocol_ == Protocol::EcaDr) {
      const auto nt = reservation::compute_nt(reservation::StageField(w.advertised_stage), cfg_.params(w.ac).cw_min);
      for (auto& st : stations_) {
        if (st.id == w.station_id) continue;
        reservation::on_overhear(st.ledger, st.acs, cfg_.ac, nt);
      }
    }
  } else {
    for (const auto& w : winners) {
      auto& st = station(w.station_id);
      collector_.on_collision(w, false);
      auto dropped = protocols::on_collision(st.ac(w.ac), context(st, w.ac), w);
      if (!dropped.empty()) collector_.on_retry_drop(w.station_id, w.ac, static_cast<std::int64_t>(dropped.size()));
    }
  }

  for (const auto& [sid, ac] : woken) {
    auto& st = station(sid);
    if (st.ac(ac).backlogged()) protocols::on_new_packet_empty_queue(st.ac(ac), context(st, ac));
  }

  if (opts_.trace != nullptr) {
    auto line = [&](const TxAttempt& a, std::string_view kind) {
      const auto& s = station(a.station_id).ac(a.ac);
      *opts_.trace << start << ' ' << kind << ' ' << a.station_id << ' ' << to_string(a.ac) << ' '
                   << a.advertised_stage << ' ' << a.n_frames << ' ' << s.stage << ' ' << s.backoff << '\n';
    };
    for (const auto& w : winners) line(w, kind_name(outcome.kind));
    for (const auto& l : losers) line(l, "VIRTUAL");
  }

  maybe_update_estimates();
}

bool Simulation::step() {
  if (now_ >= end_us_) return false;
  deliver_arrivals(nullptr);
  std::vector<TxAttempt> attempts;
  for (auto& st : stations_) {
    for (Ac ac : kAllAcs) {
      auto& a = st.ac(ac);
      if (a.backlogged() && a.backoff == 0) attempts.push_back(protocols::begin_attempt(st.id, ac, a, protocol_));
    }
  }
  if (attempts.empty()) {
    advance_idle(idle_run_length());
  } else {
    busy_period(attempts);
  }
  return true;
}

metrics::RunMetrics Simulation::finish() const {
  std::vector<PerAc<std::int64_t>> residual(stations_.size());
  for (const auto& st : stations_) {
    for (Ac ac : kAllAcs) residual[static_cast<std::size_t>(st.id)][index(ac)] = static_cast<std::int64_t>(st.ac(ac).queue.size());
  }
  auto m = collector_.finish(cfg_.sim_duration_s, now_, residual);
  m.protocol = protocol_;
  m.profile = cfg_.profile;
  m.seed = seed_;
  return m;
}

metrics::RunMetrics Simulation::run() {
  while (step()) {
  }
  return finish();
}

metrics::RunMetrics run(const ScenarioConfig& scenario, Protocol protocol, int n_stations, std::uint64_t seed,
                        RunOptions options) {
  Simulation sim(scenario, protocol, n_stations, seed, options);
  return sim.run();
}

}  // namespace ecadr::engine
