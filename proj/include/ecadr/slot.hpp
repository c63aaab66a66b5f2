#pragma once

#include <cstdint>
#include <vector>

#include "ecadr/types.hpp"

namespace ecadr {

/// Value of the 3-bit stage field announcing that the sender's queue is empty.
inline constexpr int kEmptyQueueStage = 7;

/// One on-air (or internally attempted) transmission.
struct TxAttempt {
  int station_id = 0;
  Ac ac = Ac::BE;
  int n_frames = 1;              // 2^k under Fair Share, capped by queue length
  std::int64_t payload_bytes = 0;  // sum over the aggregated MPDUs
  int advertised_stage = 0;      // 0..K, or kEmptyQueueStage
  bool more_data = true;

  bool operator==(const TxAttempt&) const = default;
};

enum class SlotKind : std::uint8_t { Idle, Success, Collision };

struct SlotOutcome {
  SlotKind kind = SlotKind::Idle;
  std::vector<TxAttempt> attempts;  // after virtual-collision resolution
  Micros duration_us = 0;
};

}  // namespace ecadr
