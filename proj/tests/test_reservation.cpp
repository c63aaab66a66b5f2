#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ecadr/reservation.hpp"

using namespace ecadr;
using namespace ecadr::reservation;

namespace {

PerAc<AcState> backlogged_acs(const PerAc<std::int64_t>& backoffs) {
  PerAc<AcState> acs;
  for (Ac a : kAllAcs) {
    acs[index(a)] = AcState(2000, Rng(100 + index(a)));
    acs[index(a)].queue.enqueue(PacketRecord{a});
    acs[index(a)].backoff = backoffs[index(a)];
  }
  return acs;
}

}  // namespace

TEST_CASE("compute_nt") {
  const auto ac = default_paper_config().ac;
  CHECK(compute_nt(StageField(0), ac[index(Ac::VO)].cw_min) == 3);
  CHECK(compute_nt(StageField(1), ac[index(Ac::BE)].cw_min) == 31);
  CHECK(compute_nt(StageField(5), ac[index(Ac::BK)].cw_min) == 511);
  for (int cw : {8, 16, 32}) CHECK_FALSE(compute_nt(StageField::empty_queue(), cw));
}

TEST_CASE("deterministic backoff matches the formula") {
  for (int cw : {2, 8, 16, 32, 1024}) {
    for (int k = 0; k <= 6; ++k) CHECK(deterministic_backoff(k, cw) == (std::int64_t{1} << k) * cw / 2 - 1);
  }
}

TEST_CASE("stage field wire encoding") {
  for (int v = 0; v <= 7; ++v) {
    const StageField f(v);
    CHECK(StageField::decode(f.encode()) == f);
    CHECK(StageField::decode(f.encode(0xF8)) == f);
    CHECK((f.encode(0xA8) & 0xF8) == 0xA8);
  }
  CHECK(StageField::decode(0xFF).is_empty_queue());
  CHECK_FALSE(StageField(6).is_empty_queue());
  CHECK_THROWS_AS(StageField(8), std::out_of_range);
  CHECK_THROWS_AS(StageField(-1), std::out_of_range);
}

TEST_CASE("ledger countdown") {
  ReservationLedger l;
  l.insert(15);
  l.insert(3);
  CHECK(l.values() == std::vector<std::int64_t>{3, 15});
  l.tick();
  CHECK(l.values() == std::vector<std::int64_t>{2, 14});

  ReservationLedger one;
  one.insert(1);
  one.tick();
  CHECK(one.empty());

  ReservationLedger none;
  none.tick();
  CHECK(none.empty());

  ReservationLedger dup;
  dup.insert(5);
  dup.insert(5);
  dup.insert(0);
  dup.insert(-2);
  CHECK(dup.size() == 2);
  CHECK(dup.contains(5));
  dup.tick(4);
  CHECK(dup.values() == std::vector<std::int64_t>{1, 1});
  dup.tick(10);
  CHECK(dup.empty());
}

TEST_CASE("bulk tick equals repeated single ticks") {
  Rng rng(9);
  ReservationLedger bulk, single;
  for (int round = 0; round < 200; ++round) {
    const auto nt = rng.uniform_int(1, 600);
    bulk.insert(nt);
    single.insert(nt);
    const auto n = rng.uniform_int(0, 40);
    bulk.tick(n);
    for (std::int64_t i = 0; i < n; ++i) single.tick();
    REQUIRE(bulk.values() == single.values());
  }
}

TEST_CASE("draw_avoiding never returns a prohibited value when one is free") {
  ReservationLedger l;
  l.insert(3);
  Rng rng(1);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 20000; ++i) seen.insert(draw_avoiding(rng, 0, 8, l));
  CHECK(seen == std::set<std::int64_t>{0, 1, 2, 4, 5, 6, 7});

  ReservationLedger empty;
  seen.clear();
  for (int i = 0; i < 20000; ++i) seen.insert(draw_avoiding(rng, 0, 8, empty));
  CHECK(seen.size() == 8);
}

TEST_CASE("draw_avoiding exclusion over every stage") {
  Rng rng(77);
  for (int cw : {8, 16, 32}) {
    for (int k = 0; k <= 5; ++k) {
      const std::int64_t hi = (std::int64_t{1} << k) * cw - 1;
      ReservationLedger l;
      for (std::int64_t v = 1; v <= hi; v += 3) l.insert(v);
      for (int i = 0; i < 2000; ++i) {
        const auto v = draw_avoiding(rng, k, cw, l);
        CHECK(v >= 0);
        CHECK(v <= hi);
        CHECK_FALSE(l.contains(v));
      }
    }
  }
}

TEST_CASE("draw_avoiding degenerate range and exhausted range") {
  Rng rng(3);
  ReservationLedger l;
  l.insert(0);
  CHECK(draw_avoiding(rng, 0, 1, l) == 0);

  ReservationLedger full;
  for (std::int64_t v = 1; v <= 7; ++v) full.insert(v);
  for (int i = 0; i < 100; ++i) {
    const auto v = draw_avoiding(rng, 0, 8, full);
    CHECK(v >= 0);
    CHECK(v <= 7);
  }
}

TEST_CASE("on_overhear") {
  const auto params = default_paper_config().ac;

  SUBCASE("matching AC redraws") {
    auto acs = backlogged_acs({4, 9, 20, 15});
    ReservationLedger l;
    CHECK(on_overhear(l, acs, params, 15) == 1);
    CHECK(l.contains(15));
    CHECK(acs[index(Ac::VO)].backoff != 15);
    CHECK(acs[index(Ac::VO)].backoff <= 7);
    CHECK(acs[index(Ac::BK)].backoff == 4);
  }
  SUBCASE("no match") {
    auto acs = backlogged_acs({4, 9, 9, 4});
    ReservationLedger l;
    CHECK(on_overhear(l, acs, params, 15) == 0);
    CHECK(l.values() == std::vector<std::int64_t>{15});
    CHECK(acs[index(Ac::BK)].backoff == 4);
  }
  SUBCASE("sentinel leaves everything alone") {
    auto acs = backlogged_acs({15, 15, 15, 15});
    ReservationLedger l;
    CHECK(on_overhear(l, acs, params, std::nullopt) == 0);
    CHECK(l.empty());
    for (Ac a : kAllAcs) CHECK(acs[index(a)].backoff == 15);
  }
  SUBCASE("idle AC is not moved") {
    auto acs = backlogged_acs({31, 31, 31, 31});
    acs[index(Ac::BE)].queue.pop_front();
    ReservationLedger l;
    CHECK(on_overhear(l, acs, params, 31) == 3);
    CHECK(acs[index(Ac::BE)].backoff == 31);
  }
}
