#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "ecadr/rng.hpp"
#include "ecadr/types.hpp"

namespace ecadr {

struct PacketRecord {
  Ac ac = Ac::BE;
  Micros arrival_time_us = 0;
  std::int32_t payload_bytes = 0;
  std::int64_t seqno = 0;
  std::int32_t tx_count = 0;  // on-air attempts that carried this packet
};

enum class SourceKind : std::uint8_t {
  None,
  SaturatedCbr,
  UnsaturatedCbr,
  VoiceIlbc,
  VideoVbr,
  VideoTrace,
};

std::string_view to_string(SourceKind k);
std::optional<SourceKind> parse_source_kind(std::string_view s);

enum class ArrivalPattern : std::uint8_t { Periodic, Poisson };

/// Parameters of one per-AC traffic source. Fields a kind does not use are
/// ignored by it but still round-trip through the scenario file.
struct SourceModel {
  SourceKind kind = SourceKind::None;
  double rate_bps = 0.0;            // CBR rate, or mean rate of VideoVbr
  std::int32_t payload_bytes = 1470;
  ArrivalPattern arrivals = ArrivalPattern::Periodic;

  // VoiceIlbc
  Micros voice_interval_us = 20'000;
  double talk_mean_s = 1.5;
  double silence_mean_s = 1.5;
  bool always_on = false;

  // VideoVbr / VideoTrace
  double frame_rate_hz = 24.0;
  double size_sigma = 0.5;  // lognormal shape of frame sizes
  std::string trace_path;
  std::vector<std::int32_t> trace_frames;  // loaded from trace_path, not serialized

  bool operator==(const SourceModel& o) const {
    return kind == o.kind && rate_bps == o.rate_bps && payload_bytes == o.payload_bytes &&
           arrivals == o.arrivals && voice_interval_us == o.voice_interval_us &&
           talk_mean_s == o.talk_mean_s && silence_mean_s == o.silence_mean_s &&
           always_on == o.always_on && frame_rate_hz == o.frame_rate_hz &&
           size_sigma == o.size_sigma && trace_path == o.trace_path;
  }
};

SourceModel saturated_cbr(double rate_bps = 65e6, std::int32_t payload = 1470);
SourceModel unsaturated_cbr(double rate_bps = 1e6, std::int32_t payload = 1470);
SourceModel voice_ilbc();
SourceModel video_vbr(double mean_rate_bps = 2e6);

/// Reads one frame size in bytes per line; blank lines and '#' comments skipped.
std::vector<std::int32_t> load_video_trace(const std::string& path);

/// Stateful, seeded packet generator for one (station, AC). Arrivals are
/// produced in non-decreasing time order; seqno increases by one per packet.
class TrafficSource {
 public:
  TrafficSource(SourceModel model, Ac ac, Rng rng, Micros start_us = 0);

  /// Time of the next arrival, or kNever for a source that emits nothing more.
  Micros peek_time() const { return next_time_; }
  PacketRecord pop();

  /// All arrivals in [now, now + horizon). Arrivals before `now` that were
  /// never consumed are skipped.
  std::vector<PacketRecord> next_arrivals(Micros now, Micros horizon);

  const SourceModel& model() const { return model_; }
  std::int64_t emitted() const { return seqno_; }

  static constexpr Micros kNever = INT64_MAX;

 private:
  void schedule_next();
  void start_video_frame(Micros t);

  SourceModel model_;
  Ac ac_;
  Rng rng_;
  Micros next_time_ = kNever;
  std::int64_t seqno_ = 0;
  std::int64_t cbr_index_ = 0;
  Micros phase_us_ = 0;

  // voice on/off state
  bool talking_ = false;
  Micros state_end_us_ = 0;

  // video: packets of the current frame still to emit
  std::deque<std::int32_t> frame_fragments_;
  std::int64_t frame_index_ = 0;
  std::int32_t next_payload_ = 0;
};

/// Bounded FIFO with a drop counter. Drops are an outcome, not an error.
class PacketQueue {
 public:
  explicit PacketQueue(std::size_t capacity = 2000) : capacity_(capacity) {}

  bool enqueue(const PacketRecord& pkt);

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::int64_t drops() const { return drops_; }

  PacketRecord& front() { return items_.front(); }
  const PacketRecord& operator[](std::size_t i) const { return items_[i]; }
  PacketRecord& operator[](std::size_t i) { return items_[i]; }
  void pop_front() { items_.pop_front(); }

 private:
  std::size_t capacity_;
  std::deque<PacketRecord> items_;
  std::int64_t drops_ = 0;
};

}  // namespace ecadr
