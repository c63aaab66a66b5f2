#include "ecadr/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ecadr {

std::string_view to_string(SourceKind k) {
  switch (k) {
    case SourceKind::None: return "None";
    case SourceKind::SaturatedCbr: return "SaturatedCbr";
    case SourceKind::UnsaturatedCbr: return "UnsaturatedCbr";
    case SourceKind::VoiceIlbc: return "VoiceIlbc";
    case SourceKind::VideoVbr: return "VideoVbr";
    case SourceKind::VideoTrace: return "VideoTrace";
  }
  return "?";
}

std::optional<SourceKind> parse_source_kind(std::string_view s) {
  const auto n = normalize_token(s);
  for (auto k : {SourceKind::None, SourceKind::SaturatedCbr, SourceKind::UnsaturatedCbr,
                 SourceKind::VoiceIlbc, SourceKind::VideoVbr, SourceKind::VideoTrace}) {
    if (n == normalize_token(to_string(k))) return k;
  }
  return std::nullopt;
}

SourceModel saturated_cbr(double rate_bps, std::int32_t payload) {
  SourceModel m;
  m.kind = SourceKind::SaturatedCbr;
  m.rate_bps = rate_bps;
  m.payload_bytes = payload;
  return m;
}

SourceModel unsaturated_cbr(double rate_bps, std::int32_t payload) {
  SourceModel m;
  m.kind = SourceKind::UnsaturatedCbr;
  m.rate_bps = rate_bps;
  m.payload_bytes = payload;
  return m;
}

SourceModel voice_ilbc() {
  SourceModel m;
  m.kind = SourceKind::VoiceIlbc;
  m.payload_bytes = 38;
  m.voice_interval_us = 20'000;
  m.rate_bps = 38.0 * 8.0 / 0.020;
  return m;
}

SourceModel video_vbr(double mean_rate_bps) {
  SourceModel m;
  m.kind = SourceKind::VideoVbr;
  m.rate_bps = mean_rate_bps;
  m.payload_bytes = 1470;
  return m;
}

std::vector<std::int32_t> load_video_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open video trace: " + path);
  std::vector<std::int32_t> frames;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    long long v;
    if (!(ss >> v)) continue;
    if (v <= 0) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": frame size must be positive");
    }
    frames.push_back(static_cast<std::int32_t>(v));
  }
  if (frames.empty()) throw std::runtime_error("video trace has no frames: " + path);
  return frames;
}

TrafficSource::TrafficSource(SourceModel model, Ac ac, Rng rng, Micros start_us)
    : model_(std::move(model)), ac_(ac), rng_(rng) {
  next_payload_ = model_.payload_bytes;
  switch (model_.kind) {
    case SourceKind::None:
      next_time_ = kNever;
      return;
    case SourceKind::SaturatedCbr:
    case SourceKind::UnsaturatedCbr: {
      if (model_.rate_bps <= 0) {
        next_time_ = kNever;
        return;
      }
      const double interval = model_.payload_bytes * 8.0 * 1e6 / model_.rate_bps;
      phase_us_ = start_us + static_cast<Micros>(rng_.uniform01() * interval);
      next_time_ = phase_us_;
      cbr_index_ = 0;
      return;
    }
    case SourceKind::VoiceIlbc: {
      const auto phase = static_cast<Micros>(rng_.uniform01() * model_.voice_interval_us);
      if (model_.always_on) {
        talking_ = true;
        state_end_us_ = kNever;
        next_time_ = start_us + phase;
        return;
      }
      const double p_talk = model_.talk_mean_s / (model_.talk_mean_s + model_.silence_mean_s);
      talking_ = rng_.uniform01() < p_talk;
      Micros t = start_us + phase;
      for (;;) {
        const double mean = talking_ ? model_.talk_mean_s : model_.silence_mean_s;
        state_end_us_ = t + static_cast<Micros>(rng_.exponential(mean) * 1e6);
        if (talking_ && state_end_us_ > t) break;
        t = state_end_us_;
        talking_ = !talking_;
      }
      next_time_ = t;
      return;
    }
    case SourceKind::VideoVbr:
    case SourceKind::VideoTrace: {
      if (model_.kind == SourceKind::VideoTrace && model_.trace_frames.empty()) {
        model_.trace_frames = load_video_trace(model_.trace_path);
      }
      const double frame_interval = 1e6 / model_.frame_rate_hz;
      phase_us_ = start_us + static_cast<Micros>(rng_.uniform01() * frame_interval);
      frame_index_ = 0;
      start_video_frame(phase_us_);
      return;
    }
  }
}

void TrafficSource::start_video_frame(Micros t) {
  std::int64_t bytes = 0;
  if (model_.kind == SourceKind::VideoTrace) {
    bytes = model_.trace_frames[static_cast<std::size_t>(frame_index_) % model_.trace_frames.size()];
  } else {
    // Lognormal frame size with the configured mean, truncated to [0.1, 5] x mean.
    const double mean = model_.rate_bps / 8.0 / model_.frame_rate_hz;
    const double sigma = model_.size_sigma;
    const double mu = std::log(mean) - 0.5 * sigma * sigma;
    double x = mean;
    for (int tries = 0; tries < 64; ++tries) {
      x = std::exp(mu + sigma * rng_.normal());
      if (x >= 0.1 * mean && x <= 5.0 * mean) break;
      x = std::clamp(x, 0.1 * mean, 5.0 * mean);
    }
    bytes = std::max<std::int64_t>(1, std::llround(x));
  }
  frame_fragments_.clear();
  const std::int64_t mtu = std::max<std::int32_t>(1, model_.payload_bytes);
  while (bytes > 0) {
    const auto piece = static_cast<std::int32_t>(std::min(bytes, mtu));
    frame_fragments_.push_back(piece);
    bytes -= piece;
  }
  next_time_ = t;
  next_payload_ = frame_fragments_.front();
}

PacketRecord TrafficSource::pop() {
  PacketRecord rec;
  rec.ac = ac_;
  rec.arrival_time_us = next_time_;
  rec.payload_bytes = next_payload_;
  rec.seqno = seqno_++;
  schedule_next();
  return rec;
}

void TrafficSource::schedule_next() {
  switch (model_.kind) {
    case SourceKind::None:
      next_time_ = kNever;
      return;
    case SourceKind::SaturatedCbr:
    case SourceKind::UnsaturatedCbr: {
      const double interval = model_.payload_bytes * 8.0 * 1e6 / model_.rate_bps;
      if (model_.arrivals == ArrivalPattern::Poisson) {
        next_time_ += static_cast<Micros>(std::llround(rng_.exponential(interval)));
      } else {
        // Exact rational spacing: t_k = phase + floor(k * bits * 1e6 / rate).
        ++cbr_index_;
        const std::int64_t rate = std::max<std::int64_t>(1, std::llround(model_.rate_bps));
        const std::int64_t bits = static_cast<std::int64_t>(model_.payload_bytes) * 8;
        next_time_ = phase_us_ + cbr_index_ * bits * 1'000'000 / rate;
      }
      return;
    }
    case SourceKind::VoiceIlbc: {
      Micros t = next_time_ + model_.voice_interval_us;
      while (t >= state_end_us_) {
        // talk spurt over: silence, then a new spurt that starts immediately with a packet
        Micros silence_end = state_end_us_;
        do {
          silence_end += static_cast<Micros>(rng_.exponential(model_.silence_mean_s) * 1e6);
          state_end_us_ = silence_end + static_cast<Micros>(rng_.exponential(model_.talk_mean_s) * 1e6);
        } while (state_end_us_ <= silence_end);
        t = silence_end;
      }
      next_time_ = t;
      return;
    }
    case SourceKind::VideoVbr:
    case SourceKind::VideoTrace: {
      frame_fragments_.pop_front();
      if (!frame_fragments_.empty()) {
        next_payload_ = frame_fragments_.front();
        return;
      }
      ++frame_index_;
      const double offset = static_cast<double>(frame_index_) * 1e6 / model_.frame_rate_hz;
      start_video_frame(phase_us_ + static_cast<Micros>(std::floor(offset)));
      return;
    }
  }
}

std::vector<PacketRecord> TrafficSource::next_arrivals(Micros now, Micros horizon) {
  std::vector<PacketRecord> out;
  if (horizon <= 0) return out;
  while (next_time_ < now) pop();
  const Micros end = now + horizon;
  while (next_time_ < end) out.push_back(pop());
  return out;
}

bool PacketQueue::enqueue(const PacketRecord& pkt) {
  if (items_.size() >= capacity_) {
    ++drops_;
    return false;
  }
  items_.push_back(pkt);
  return true;
}

}  // namespace ecadr
