#include "ecadr/airtime.hpp"

#include <algorithm>
#include <stdexcept>

namespace ecadr::airtime {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

std::int64_t ampdu_bits(int n_frames, std::int64_t total_payload_bytes) {
  return kServiceFieldBits + n_frames * (kMpduDelimiterBits + kMacHeaderBits) + 8 * total_payload_bytes +
         kTailBits;
}

std::int64_t frame_symbols(int n_frames, std::int64_t total_payload_bytes, const PhyConfig& phy) {
  return ceil_div(ampdu_bits(n_frames, total_payload_bytes), phy.bits_per_ofdm_symbol);
}

Micros t_frame_total(int n_frames, std::int64_t total_payload_bytes, const PhyConfig& phy) {
  if (n_frames < 1) throw std::invalid_argument("t_frame: n_frames must be >= 1");
  if (total_payload_bytes < 0) throw std::invalid_argument("t_frame: negative payload");
  return phy.t_phy_us + frame_symbols(n_frames, total_payload_bytes, phy) * phy.t_sym_us;
}

Micros t_frame(int n_frames, const PhyConfig& phy, std::int32_t payload_bytes) {
  if (n_frames < 1) throw std::invalid_argument("t_frame: n_frames must be >= 1");
  return t_frame_total(n_frames, static_cast<std::int64_t>(n_frames) * payload_bytes, phy);
}

Micros t_blockack(const PhyConfig& phy) {
  return phy.t_phy_us + ceil_div(kServiceFieldBits + kBlockAckBits + kTailBits, phy.bits_per_ofdm_symbol) * phy.t_sym_us;
}

AirtimeBreakdown t_success_total(int n_frames, std::int64_t total_payload_bytes, const PhyConfig& phy) {
  AirtimeBreakdown b;
  b.t_frame_us = t_frame_total(n_frames, total_payload_bytes, phy);
  b.n_symbols = frame_symbols(n_frames, total_payload_bytes, phy);
  b.t_blockack_us = t_blockack(phy);
  b.t_success_us = b.t_frame_us + phy.sifs_us + b.t_blockack_us + phy.difs_us + phy.slot_us;
  return b;
}

AirtimeBreakdown t_success(int n_frames, const PhyConfig& phy, std::int32_t payload_bytes) {
  if (n_frames < 1) throw std::invalid_argument("t_success: n_frames must be >= 1");
  return t_success_total(n_frames, static_cast<std::int64_t>(n_frames) * payload_bytes, phy);
}

Micros t_collision(std::span<const TxAttempt> attempts, const PhyConfig& phy) {
  if (attempts.size() < 2) throw std::invalid_argument("t_collision: needs at least two attempts");
  Micros longest = 0;
  for (const auto& a : attempts) {
    longest = std::max(longest, t_frame_total(a.n_frames, a.payload_bytes, phy));
  }
  return longest + phy.difs_us + phy.slot_us;
}

}  // namespace ecadr::airtime
