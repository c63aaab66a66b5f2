#pragma once

#include <span>

#include "ecadr/config.hpp"
#include "ecadr/slot.hpp"

namespace ecadr::airtime {

// Frame-format constants, in bits.
inline constexpr std::int64_t kServiceFieldBits = 2 * 8;
inline constexpr std::int64_t kMpduDelimiterBits = 4 * 8;
inline constexpr std::int64_t kMacHeaderBits = 36 * 8;  // includes the 3-bit stage field
inline constexpr std::int64_t kTailBits = 6;
inline constexpr std::int64_t kBlockAckBits = 32 * 8;

struct AirtimeBreakdown {
  Micros t_frame_us = 0;
  Micros t_blockack_us = 0;
  Micros t_success_us = 0;
  std::int64_t n_symbols = 0;  // data symbols of the A-MPDU

  bool operator==(const AirtimeBreakdown&) const = default;
};

/// Bits before OFDM quantization for an A-MPDU of `n_frames` MPDUs carrying
/// `total_payload_bytes` of data between them.
std::int64_t ampdu_bits(int n_frames, std::int64_t total_payload_bytes);

std::int64_t frame_symbols(int n_frames, std::int64_t total_payload_bytes, const PhyConfig& phy);

/// A-MPDU duration with `n_frames` equal MPDUs of `payload_bytes` each.
/// Throws std::invalid_argument for n_frames < 1.
Micros t_frame(int n_frames, const PhyConfig& phy, std::int32_t payload_bytes);

/// Same, for an aggregate whose MPDUs sum to `total_payload_bytes`.
Micros t_frame_total(int n_frames, std::int64_t total_payload_bytes, const PhyConfig& phy);

Micros t_blockack(const PhyConfig& phy);

/// T_success = T_frame + SIFS + T_BlockACK + DIFS + slot.
AirtimeBreakdown t_success(int n_frames, const PhyConfig& phy, std::int32_t payload_bytes = 1470);
AirtimeBreakdown t_success_total(int n_frames, std::int64_t total_payload_bytes, const PhyConfig& phy);

/// Longest colliding A-MPDU + DIFS + slot; no ACK follows a collision.
/// Throws std::invalid_argument for fewer than two attempts.
Micros t_collision(std::span<const TxAttempt> attempts, const PhyConfig& phy);

}  // namespace ecadr::airtime
