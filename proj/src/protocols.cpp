#include "ecadr/protocols.hpp"

#include <algorithm>
#include <stdexcept>

namespace ecadr::protocols {

namespace {

std::int64_t cw_of(const AcState& st, const Context& ctx) {
  return (std::int64_t{1} << st.stage) * ctx.params->cw_min;
}

std::vector<PacketRecord> take_front(PacketQueue& q, int n) {
  std::vector<PacketRecord> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n && !q.empty(); ++i) {
    out.push_back(q.front());
    q.pop_front();
  }
  return out;
}

}  // namespace

std::int64_t random_backoff(AcState& st, const Context& ctx) {
  if (ctx.dr() && ctx.ledger != nullptr) {
    return reservation::draw_avoiding(st.rng, st.stage, ctx.params->cw_min, *ctx.ledger);
  }
  return st.rng.uniform_int(0, cw_of(st, ctx) - 1);
}

int reset_stage(const Context& ctx) {
  if (ctx.dr() && ctx.estimate != nullptr) {
    return estimator::choose_stage(*ctx.params, *ctx.estimate, ctx.mac->max_stage);
  }
  return 0;
}

int frames_for_attempt(const AcState& st, Protocol protocol) {
  if (protocol == Protocol::CsmaCa) return 1;
  const auto share = std::size_t{1} << st.stage;
  return static_cast<int>(std::min(share, st.queue.size()));
}

TxAttempt begin_attempt(int station_id, Ac ac, AcState& st, Protocol protocol) {
  if (st.queue.empty()) throw std::logic_error("begin_attempt on an empty queue");
  TxAttempt a;
  a.station_id = station_id;
  a.ac = ac;
  a.n_frames = frames_for_attempt(st, protocol);
  for (int i = 0; i < a.n_frames; ++i) {
    auto& pkt = st.queue[static_cast<std::size_t>(i)];
    a.payload_bytes += pkt.payload_bytes;
    ++pkt.tx_count;
  }
  const bool drains = st.queue.size() <= static_cast<std::size_t>(a.n_frames);
  a.advertised_stage = drains ? kEmptyQueueStage : st.stage;
  a.more_data = !drains;
  return a;
}

std::vector<PacketRecord> on_success(AcState& st, const Context& ctx, const TxAttempt& attempt) {
  auto delivered = take_front(st.queue, attempt.n_frames);
  st.retries = 0;
  if (ctx.protocol == Protocol::CsmaCa) {
    st.stage = 0;
    st.backoff = st.rng.uniform_int(0, ctx.params->cw_min - 1);
  } else {
    st.backoff = deterministic_backoff(st.stage, ctx.params->cw_min);  // Hysteresis
  }
  if (st.queue.empty()) {
    // Wait path: the next arrival resets the stage and draws a fresh backoff.
    st.stage = 0;
    st.backoff = 0;
  } else if (ctx.dr() && attempt.advertised_stage == kEmptyQueueStage) {
    // Packets arrived during the exchange, but the announcement released the
    // deterministic slot; restart as if from an empty queue.
    on_new_packet_empty_queue(st, ctx);
  }
  return delivered;
}

std::vector<PacketRecord> on_collision(AcState& st, const Context& ctx, const TxAttempt& attempt) {
  ++st.retries;
  if (st.retries < ctx.mac->retry_limit) {
    const int biv = ctx.dr() && ctx.estimate != nullptr
                        ? estimator::choose_biv(st.stage, *ctx.params, *ctx.estimate, ctx.mac->max_stage)
                        : 1;
    st.stage = std::min(st.stage + biv, ctx.mac->max_stage);
    st.backoff = random_backoff(st, ctx);
    return {};
  }

  // Retry limit: the escalated stage would be discarded by the reset below.
  auto dropped = take_front(st.queue, attempt.n_frames);
  st.retries = 0;
  st.stage = 0;
  if (st.queue.empty()) {
    st.backoff = 0;
  } else {
    st.stage = reset_stage(ctx);
    st.backoff = random_backoff(st, ctx);
  }
  return dropped;
}

void on_new_packet_empty_queue(AcState& st, const Context& ctx) {
  st.retries = 0;
  st.stage = reset_stage(ctx);
  st.backoff = random_backoff(st, ctx);
}

std::pair<TxAttempt, std::vector<TxAttempt>> resolve_virtual_collision(std::span<const TxAttempt> attempts) {
  if (attempts.empty()) throw std::invalid_argument("resolve_virtual_collision: no attempts");
  const auto winner = std::max_element(attempts.begin(), attempts.end(), [](const auto& a, const auto& b) {
    return priority(a.ac) < priority(b.ac);
  });
  std::vector<TxAttempt> losers;
  for (auto it = attempts.begin(); it != attempts.end(); ++it) {
    if (it != winner) losers.push_back(*it);
  }
  return {*winner, std::move(losers)};
}

}  // namespace ecadr::protocols
