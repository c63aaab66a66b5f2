#pragma once

#include <cstdint>
#include <deque>

#include "ecadr/config.hpp"
#include "ecadr/slot.hpp"

namespace ecadr::estimator {

/// Sliding-window slot counters behind P_cc = (busy + collision) / total.
class PccCounters {
 public:
  explicit PccCounters(std::int64_t window_slots = 1000) : window_(window_slots) {}

  /// Records `weight` slots of the given kind (weight > 1 only for idle runs
  /// and duration-weighted busy periods).
  void observe(SlotKind kind, std::int64_t weight = 1);
  void observe_idle(std::int64_t n) { observe(SlotKind::Idle, n); }

  std::int64_t busy_slots() const { return busy_; }
  std::int64_t collision_slots() const { return collision_; }
  std::int64_t total_slots() const { return total_; }
  std::int64_t window() const { return window_; }
  /// Slots observed since construction, not capped by the window.
  std::int64_t lifetime_slots() const { return lifetime_; }

  double pcc() const {
    return total_ == 0 ? 0.0 : static_cast<double>(busy_ + collision_) / static_cast<double>(total_);
  }

 private:
  struct Segment {
    SlotKind kind;
    std::int64_t count;
  };
  void drop_front(std::int64_t n);

  std::int64_t window_;
  std::deque<Segment> segments_;
  std::int64_t busy_ = 0;
  std::int64_t collision_ = 0;
  std::int64_t total_ = 0;
  std::int64_t lifetime_ = 0;
};

struct NacEstimate {
  double nac = 1.0;
  double pcc = 0.0;
  std::int64_t updated_at = 0;  // slot index of the last update
};

/// Contender count that explains `pcc` if every contender attempts with
/// probability 2 / (mean_cw + 1): 1 + ln(1 - pcc) / ln(1 - tau).
/// `pcc` is capped at `pcc_cap` to keep the logarithm finite.
double invert_pcc(double pcc, double mean_cw, double pcc_cap = 0.999);

/// One smoothing step. Returns `prior` unchanged while fewer than window/10
/// slots have been observed.
NacEstimate estimate_nac(const PccCounters& counters, double mean_cw, const NacEstimate& prior,
                         const EstimatorConfig& cfg, int n_stations, std::int64_t slot_index);

/// Smallest stage k with 2^k * cw_min > nac^2 * pcc, one stage lower for
/// delay-sensitive ACs, clamped to [0, max_stage].
int choose_stage(const AcParams& ac, const NacEstimate& est, int max_stage);

/// Stage increase after a collision: at least 1, or enough to reach
/// choose_stage directly.
int choose_biv(int current_stage, const AcParams& ac, const NacEstimate& est, int max_stage);

}  // namespace ecadr::estimator
