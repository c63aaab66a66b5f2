#include "ecadr/reservation.hpp"

#include <stdexcept>

namespace ecadr::reservation {

StageField::StageField(int value) : value_(value) {
  if (value < 0 || value > 7) throw std::out_of_range("stage field must fit in 3 bits");
}

std::int64_t deterministic_backoff(int stage, int cw_min) {
  return ((std::int64_t{1} << stage) * cw_min) / 2 - 1;
}

std::optional<std::int64_t> compute_nt(StageField field, int cw_min) {
  if (field.is_empty_queue()) return std::nullopt;
  return deterministic_backoff(field.value(), cw_min);
}

void ReservationLedger::insert(std::int64_t nt) {
  if (nt <= 0) return;
  ++expiry_[clock_ + nt];
}

void ReservationLedger::tick(std::int64_t idle_slots) {
  clock_ += idle_slots;
  while (!expiry_.empty() && expiry_.begin()->first <= clock_) expiry_.erase(expiry_.begin());
}

bool ReservationLedger::contains(std::int64_t value) const {
  return value > 0 && expiry_.count(clock_ + value) > 0;
}

std::size_t ReservationLedger::size() const {
  std::size_t n = 0;
  for (const auto& [_, count] : expiry_) n += static_cast<std::size_t>(count);
  return n;
}

std::vector<std::int64_t> ReservationLedger::values() const {
  std::vector<std::int64_t> out;
  for (const auto& [expiry, count] : expiry_) out.insert(out.end(), count, expiry - clock_);
  return out;
}

std::int64_t draw_avoiding(Rng& rng, int stage, int cw_min, const ReservationLedger& ledger) {
  const std::int64_t hi = (std::int64_t{1} << stage) * cw_min - 1;
  std::int64_t v = rng.uniform_int(0, hi);
  for (int i = 1; i < kMaxAvoidingDraws && ledger.contains(v); ++i) v = rng.uniform_int(0, hi);
  return v;
}

int on_overhear(ReservationLedger& ledger, PerAc<AcState>& own, const PerAc<AcParams>& params,
                std::optional<std::int64_t> nt) {
  if (!nt) return 0;
  ledger.insert(*nt);
  int redraws = 0;
  for (Ac a : kAllAcs) {
    auto& st = own[index(a)];
    if (!st.backlogged() || st.backoff != *nt) continue;
    st.backoff = draw_avoiding(st.rng, st.stage, params[index(a)].cw_min, ledger);
    ++redraws;
  }
  return redraws;
}

}  // namespace ecadr::reservation
