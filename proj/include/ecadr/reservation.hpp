#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ecadr/ac_state.hpp"
#include "ecadr/config.hpp"
#include "ecadr/slot.hpp"

namespace ecadr::reservation {

/// The 3-bit backoff-stage field carried in the low bits of the first
/// Address-4 byte of the MAC header.
class StageField {
 public:
  /// Throws std::out_of_range outside [0, 7].
  explicit StageField(int value);

  static StageField empty_queue() { return StageField(kEmptyQueueStage); }
  static StageField decode(std::uint8_t address4_byte0) { return StageField(address4_byte0 & 0x07); }

  /// Writes the field into `address4_byte0`, keeping its upper five bits.
  std::uint8_t encode(std::uint8_t address4_byte0 = 0) const {
    return static_cast<std::uint8_t>((address4_byte0 & ~0x07) | value_);
  }

  int value() const { return value_; }
  bool is_empty_queue() const { return value_ == kEmptyQueueStage; }
  bool operator==(const StageField&) const = default;

 private:
  int value_;
};

/// Hysteresis backoff of a station at `stage`: (2^stage * cw_min) / 2 - 1.
std::int64_t deterministic_backoff(int stage, int cw_min);

/// Idle slots until the overheard sender transmits again; none for the
/// empty-queue sentinel.
std::optional<std::int64_t> compute_nt(StageField field, int cw_min);

/// Prohibited backoff values announced by other stations, each counting down
/// one per idle slot. Stored as expiries on a private idle-slot clock, so a
/// tick costs O(expired entries) however many entries are live.
class ReservationLedger {
 public:
  void insert(std::int64_t nt);
  void tick(std::int64_t idle_slots = 1);

  bool contains(std::int64_t value) const;
  bool empty() const { return expiry_.empty(); }
  std::size_t size() const;  // counting duplicates
  std::vector<std::int64_t> values() const;  // ascending, with duplicates

 private:
  std::int64_t clock_ = 0;
  std::map<std::int64_t, int> expiry_;  // absolute expiry -> multiplicity
};

inline constexpr int kMaxAvoidingDraws = 16;

/// Uniform over [0, 2^stage * cw_min - 1] minus the ledger's values. Gives up
/// after kMaxAvoidingDraws rejected draws and returns the last one.
std::int64_t draw_avoiding(Rng& rng, int stage, int cw_min, const ReservationLedger& ledger);

/// Handles a successfully overheard header. Records the announced next
/// transmission and moves any own backlogged AC that would hit it.
/// Returns the number of ACs that redrew.
int on_overhear(ReservationLedger& ledger, PerAc<AcState>& own, const PerAc<AcParams>& params,
                std::optional<std::int64_t> nt);

}  // namespace ecadr::reservation
