#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ecadr/ac_state.hpp"
#include "ecadr/config.hpp"
#include "ecadr/estimator.hpp"
#include "ecadr/reservation.hpp"
#include "ecadr/slot.hpp"

namespace ecadr::protocols {

/// What one AC's state machine needs besides its own state. `ledger` and
/// `estimate` are consulted only under EcaDr and may be null otherwise.
struct Context {
  Protocol protocol = Protocol::Eca;
  const MacConfig* mac = nullptr;
  const AcParams* params = nullptr;
  const reservation::ReservationLedger* ledger = nullptr;
  const estimator::NacEstimate* estimate = nullptr;

  bool dr() const { return protocol == Protocol::EcaDr; }
};

using reservation::deterministic_backoff;

/// Uniform over the current CW; under EcaDr the ledger's values are avoided.
std::int64_t random_backoff(AcState& st, const Context& ctx);

/// Stage used whenever the stage would be reset: 0, or the estimator's pick under EcaDr.
int reset_stage(const Context& ctx);

/// Frames sent by the next attempt: 1 for CsmaCa, min(2^k, queue length) otherwise.
int frames_for_attempt(const AcState& st, Protocol protocol);

/// Builds the attempt for the head of the queue and counts it against each
/// carried packet. The stage field announces 7 when this attempt drains the queue.
TxAttempt begin_attempt(int station_id, Ac ac, AcState& st, Protocol protocol);

/// Terminal success of `attempt`. Returns the delivered packets.
std::vector<PacketRecord> on_success(AcState& st, const Context& ctx, const TxAttempt& attempt);

/// Collision (external or internal) of `attempt`. Returns packets discarded
/// because the retry limit was reached; empty otherwise.
std::vector<PacketRecord> on_collision(AcState& st, const Context& ctx, const TxAttempt& attempt);

/// A packet arrived while the queue was empty.
void on_new_packet_empty_queue(AcState& st, const Context& ctx);

/// Splits one station's same-slot attempts into the highest-priority winner
/// and the losers, which take the collision path.
std::pair<TxAttempt, std::vector<TxAttempt>> resolve_virtual_collision(std::span<const TxAttempt> attempts);

}  // namespace ecadr::protocols
