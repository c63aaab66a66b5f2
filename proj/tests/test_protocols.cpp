#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ecadr/protocols.hpp"

using namespace ecadr;
using namespace ecadr::protocols;

namespace {

struct Fixture {
  PaperDefaults d = default_paper_config();
  reservation::ReservationLedger ledger;
  estimator::NacEstimate estimate;

  Context ctx(Protocol p, Ac a) {
    Context c;
    c.protocol = p;
    c.mac = &d.mac;
    c.params = &d.ac[index(a)];
    c.ledger = &ledger;
    c.estimate = &estimate;
    return c;
  }
};

AcState with_queue(std::size_t n, Ac a = Ac::BE, std::uint64_t seed = 1) {
  AcState st(2000, Rng(seed));
  for (std::size_t i = 0; i < n; ++i) {
    PacketRecord p;
    p.ac = a;
    p.seqno = static_cast<std::int64_t>(i);
    p.payload_bytes = 1470;
    st.queue.enqueue(p);
  }
  return st;
}

}  // namespace

TEST_CASE("deterministic backoff values") {
  CHECK(deterministic_backoff(0, 32) == 15);
  CHECK(deterministic_backoff(1, 32) == 31);
  CHECK(deterministic_backoff(5, 32) == 511);
  CHECK(deterministic_backoff(0, 8) == 3);
  CHECK(deterministic_backoff(2, 16) == 31);
}

TEST_CASE("reachable hysteresis values are exactly the listed set") {
  const auto d = default_paper_config();
  std::set<std::int64_t> reached;
  for (Ac a : kAllAcs) {
    for (int k = 0; k <= d.mac.max_stage; ++k) reached.insert(deterministic_backoff(k, d.ac[index(a)].cw_min));
  }
  CHECK(reached == std::set<std::int64_t>{3, 7, 15, 31, 63, 127, 255, 511});

  // Same set reached through the state machine itself.
  Fixture f;
  std::set<std::int64_t> via_success;
  for (Ac a : kAllAcs) {
    for (int k = 0; k <= f.d.mac.max_stage; ++k) {
      auto st = with_queue(100, a);
      st.stage = k;
      const auto attempt = begin_attempt(0, a, st, Protocol::Eca);
      on_success(st, f.ctx(Protocol::Eca, a), attempt);
      via_success.insert(st.backoff);
    }
  }
  CHECK(via_success == reached);
}

TEST_CASE("on_success") {
  Fixture f;

  SUBCASE("ECA keeps the stage and picks the deterministic value") {
    auto st = with_queue(10);
    st.stage = 2;
    st.retries = 3;
    const auto a = begin_attempt(0, Ac::BE, st, Protocol::Eca);
    CHECK(a.n_frames == 4);
    CHECK(a.advertised_stage == 2);
    const auto out = on_success(st, f.ctx(Protocol::Eca, Ac::BE), a);
    CHECK(out.size() == 4);
    CHECK(out.front().seqno == 0);
    CHECK(st.stage == 2);
    CHECK(st.backoff == 63);
    CHECK(st.retries == 0);
    CHECK(st.queue.size() == 6);
  }
  SUBCASE("CSMA/CA resets to stage 0 and draws in [0, 31]") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      auto st = with_queue(10, Ac::BE, seed);
      st.stage = 3;
      const auto a = begin_attempt(0, Ac::BE, st, Protocol::CsmaCa);
      CHECK(a.n_frames == 1);
      on_success(st, f.ctx(Protocol::CsmaCa, Ac::BE), a);
      CHECK(st.stage == 0);
      CHECK(st.backoff >= 0);
      CHECK(st.backoff <= 31);
    }
  }
  SUBCASE("last packets advertise the sentinel") {
    auto st = with_queue(3);
    st.stage = 2;
    const auto a = begin_attempt(0, Ac::BE, st, Protocol::Eca);
    CHECK(a.n_frames == 3);
    CHECK(a.advertised_stage == kEmptyQueueStage);
    CHECK_FALSE(a.more_data);
    on_success(st, f.ctx(Protocol::Eca, Ac::BE), a);
    CHECK(st.queue.empty());
    CHECK(st.stage == 0);
  }
  SUBCASE("ECA-DR restarts if packets arrived behind a sentinel") {
    auto st = with_queue(1);
    st.stage = 1;
    const auto a = begin_attempt(0, Ac::BE, st, Protocol::EcaDr);
    CHECK(a.advertised_stage == kEmptyQueueStage);
    PacketRecord late;
    st.queue.enqueue(late);
    f.estimate.nac = 20;
    f.estimate.pcc = 0.3;
    on_success(st, f.ctx(Protocol::EcaDr, Ac::BE), a);
    CHECK(st.stage == 2);
    CHECK(st.backoff <= 127);
  }
}

TEST_CASE("on_collision") {
  Fixture f;

  SUBCASE("ECA escalates by one") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      auto st = with_queue(10, Ac::BE, seed);
      st.stage = 1;
      const auto a = begin_attempt(0, Ac::BE, st, Protocol::Eca);
      CHECK(on_collision(st, f.ctx(Protocol::Eca, Ac::BE), a).empty());
      CHECK(st.stage == 2);
      CHECK(st.retries == 1);
      CHECK(st.backoff <= 127);
      CHECK(st.queue.size() == 10);
    }
  }
  SUBCASE("stage is capped at K") {
    auto st = with_queue(100);
    st.stage = 5;
    const auto a = begin_attempt(0, Ac::BE, st, Protocol::Eca);
    on_collision(st, f.ctx(Protocol::Eca, Ac::BE), a);
    CHECK(st.stage == 5);
  }
  SUBCASE("ECA-DR escalates by the estimated BIV") {
    f.estimate.nac = 20;
    f.estimate.pcc = 0.3;
    auto st = with_queue(10);
    const auto a = begin_attempt(0, Ac::BE, st, Protocol::EcaDr);
    on_collision(st, f.ctx(Protocol::EcaDr, Ac::BE), a);
    CHECK(st.stage == 2);
  }
  SUBCASE("ECA-DR redraw avoids the ledger") {
    for (std::int64_t v = 1; v <= 7; ++v) f.ledger.insert(v);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      auto st = with_queue(10, Ac::VO, seed);
      const auto a = begin_attempt(0, Ac::VO, st, Protocol::EcaDr);
      on_collision(st, f.ctx(Protocol::EcaDr, Ac::VO), a);
      REQUIRE(st.stage == 1);
      CHECK((st.backoff == 0 || st.backoff >= 8));
    }
  }
  SUBCASE("retry limit drops the carried packets") {
    auto st = with_queue(10);
    st.stage = 1;
    st.retries = 5;
    const auto a = begin_attempt(0, Ac::BE, st, Protocol::Eca);
    const auto dropped = on_collision(st, f.ctx(Protocol::Eca, Ac::BE), a);
    CHECK(dropped.size() == 2);
    CHECK(st.retries == 0);
    CHECK(st.stage == 0);
    CHECK(st.queue.size() == 8);
    CHECK(st.queue.front().seqno == 2);
    CHECK(st.backoff <= 31);
  }
}

TEST_CASE("new packet into an empty queue") {
  Fixture f;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    AcState st(2000, Rng(seed));
    st.stage = 4;
    st.retries = 2;
    on_new_packet_empty_queue(st, f.ctx(Protocol::Eca, Ac::VO));
    CHECK(st.stage == 0);
    CHECK(st.retries == 0);
    CHECK(st.backoff <= 7);
  }

  AcState dr(2000, Rng(3));
  f.estimate.nac = 2;
  f.estimate.pcc = 0.5;
  on_new_packet_empty_queue(dr, f.ctx(Protocol::EcaDr, Ac::VO));
  CHECK(dr.stage == 0);

  f.estimate.nac = 20;
  f.estimate.pcc = 0.3;
  on_new_packet_empty_queue(dr, f.ctx(Protocol::EcaDr, Ac::VO));
  CHECK(dr.stage == 3);
}

TEST_CASE("virtual collision keeps the highest priority") {
  std::vector<TxAttempt> attempts(3);
  attempts[0].ac = Ac::BE;
  attempts[1].ac = Ac::VO;
  attempts[2].ac = Ac::BK;
  const auto [winner, losers] = resolve_virtual_collision(attempts);
  CHECK(winner.ac == Ac::VO);
  REQUIRE(losers.size() == 2);
  CHECK(losers[0].ac == Ac::BE);
  CHECK(losers[1].ac == Ac::BK);

  std::vector<TxAttempt> single(1);
  single[0].ac = Ac::BK;
  CHECK(resolve_virtual_collision(single).second.empty());
}

TEST_CASE("random outcome sequences keep the invariants") {
  Fixture f;
  Rng dice(99);
  for (Protocol p : {Protocol::CsmaCa, Protocol::Eca, Protocol::EcaDr}) {
    for (Ac a : kAllAcs) {
      auto st = with_queue(2000, a, 7);
      const auto ctx = f.ctx(p, a);
      const std::int64_t cw_min = f.d.ac[index(a)].cw_min;
      for (int step = 0; step < 3000 && !st.queue.empty(); ++step) {
        f.estimate.nac = 1.0 + dice.uniform01() * 80.0;
        f.estimate.pcc = dice.uniform01();
        const auto queued = st.queue.size();
        const auto attempt = begin_attempt(0, a, st, p);
        const int n = attempt.n_frames;
        CHECK(((n & (n - 1)) == 0 || static_cast<std::size_t>(n) == queued));
        CHECK(n <= 32);
        std::vector<PacketRecord> out;
        if (dice.uniform01() < 0.5) {
          out = on_success(st, ctx, attempt);
        } else {
          out = on_collision(st, ctx, attempt);
        }
        for (const auto& pkt : out) CHECK(pkt.tx_count <= f.d.mac.retry_limit + 1);
        CHECK(st.stage >= 0);
        CHECK(st.stage <= f.d.mac.max_stage);
        CHECK(st.retries < f.d.mac.retry_limit);
        CHECK(st.backoff >= 0);
        CHECK(st.backoff < (std::int64_t{1} << st.stage) * cw_min);
      }
    }
  }
}
