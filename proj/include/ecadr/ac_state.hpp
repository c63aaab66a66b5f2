#pragma once

#include "ecadr/rng.hpp"
#include "ecadr/traffic.hpp"

namespace ecadr {

/// MAC state of one access category of one station.
struct AcState {
  std::int64_t backoff = 0;  // B_i, idle slots until the next attempt
  int stage = 0;             // k_i
  int retries = 0;           // r_i
  PacketQueue queue;         // Q_i
  Rng rng;                   // backoff draws of this AC only

  AcState() = default;
  AcState(std::size_t capacity, Rng r) : queue(capacity), rng(r) {}

  bool backlogged() const { return !queue.empty(); }
};

}  // namespace ecadr
