#include "ecadr/estimator.hpp"

#include <algorithm>
#include <cmath>

namespace ecadr::estimator {

void PccCounters::observe(SlotKind kind, std::int64_t weight) {
  if (weight <= 0) return;
  if (!segments_.empty() && segments_.back().kind == kind) {
    segments_.back().count += weight;
  } else {
    segments_.push_back({kind, weight});
  }
  if (kind == SlotKind::Success) busy_ += weight;
  if (kind == SlotKind::Collision) collision_ += weight;
  total_ += weight;
  lifetime_ += weight;
  if (total_ > window_) drop_front(total_ - window_);
}

void PccCounters::drop_front(std::int64_t n) {
  while (n > 0) {
    auto& front = segments_.front();
    const std::int64_t take = std::min(n, front.count);
    if (front.kind == SlotKind::Success) busy_ -= take;
    if (front.kind == SlotKind::Collision) collision_ -= take;
    total_ -= take;
    front.count -= take;
    n -= take;
    if (front.count == 0) segments_.pop_front();
  }
}

double invert_pcc(double pcc, double mean_cw, double pcc_cap) {
  const double p = std::clamp(pcc, 0.0, pcc_cap);
  if (p <= 0.0) return 1.0;
  const double tau = 2.0 / (mean_cw + 1.0);
  if (tau >= 1.0) return 1.0;
  return 1.0 + std::log(1.0 - p) / std::log(1.0 - tau);
}

NacEstimate estimate_nac(const PccCounters& counters, double mean_cw, const NacEstimate& prior,
                         const EstimatorConfig& cfg, int n_stations, std::int64_t slot_index) {
  if (counters.lifetime_slots() * 10 < cfg.window_slots) return prior;
  const double cap = std::max(1.0, cfg.nac_cap_factor * n_stations);
  const double raw = std::clamp(invert_pcc(counters.pcc(), mean_cw, cfg.pcc_cap), 1.0, cap);
  NacEstimate next;
  next.nac = std::max(1.0, prior.nac + cfg.ema_alpha * (raw - prior.nac));
  next.pcc = counters.pcc();
  next.updated_at = slot_index;
  return next;
}

int choose_stage(const AcParams& ac, const NacEstimate& est, int max_stage) {
  const double threshold = est.nac * est.nac * est.pcc;
  int k = 0;
  // Search past max_stage: delay-sensitive ACs halve the unclamped stage.
  while (k < 62 && std::ldexp(static_cast<double>(ac.cw_min), k) <= threshold) ++k;
  if (ac.delay_sensitive) k = std::max(0, k - 1);
  return std::min(k, max_stage);
}

int choose_biv(int current_stage, const AcParams& ac, const NacEstimate& est, int max_stage) {
  return std::max(1, choose_stage(ac, est, max_stage) - current_stage);
}

}  // namespace ecadr::estimator
