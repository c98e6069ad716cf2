#include <doctest.h>

#include <random>

#include "gg/errors.hpp"
#include "gg/oracle.hpp"
#include "gg/sim_engine.hpp"
#include "gg/stub_backend.hpp"
#include "support.hpp"

using namespace gg;

TEST_CASE("fixed human: exactly one unavoidable block") {
  const int tr = 4;
  const std::vector<std::size_t> human(3 * tr, 0);
  const auto r = offline_oracle(3, human, tr, 3 * tr);
  REQUIRE(r.feasible);
  CHECK(r.min_disturbance == tr);
  CHECK(std::count(r.sequence.begin(), r.sequence.end(), 0u) == 1);
  CHECK(r.sequence == std::vector<std::size_t>{0, 1, 2});
  CHECK(r.min_disturbance_any == 0);
  CHECK(r.enumerated == 27);
}

TEST_CASE("alternating human: all 27 sequences enumerated independently") {
  const int tr = 3;
  std::vector<std::size_t> human;
  for (std::size_t block : {0u, 1u, 0u}) human.insert(human.end(), tr, block);

  int best = 1 << 30;
  std::vector<std::size_t> best_seq;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t c = 0; c < 3; ++c) {
        if (a == b || b == c || a == c) continue;  // coverage needs every room once
        const int d = tr * ((a == 0) + (b == 1) + (c == 0));
        if (d < best) {
          best = d;
          best_seq = {a, b, c};
        }
      }
  REQUIRE(best == 0);
  REQUIRE(best_seq == std::vector<std::size_t>{1, 0, 2});

  const auto r = offline_oracle(3, human, tr, 3 * tr);
  CHECK(r.min_disturbance == best);
  CHECK(r.sequence == best_seq);
}

TEST_CASE("oracle infeasibility, start constraints and size limit") {
  const std::vector<std::size_t> human(20, 1);
  CHECK_FALSE(offline_oracle(3, human, 4, 11).feasible);
  const auto started = offline_oracle(3, human, 4, 12, std::size_t{1});
  REQUIRE(started.feasible);
  CHECK(started.sequence.front() == 1);
  CHECK(started.min_disturbance == 4);

  const std::vector<std::size_t> long_human(200, 0);
  CHECK_THROWS_AS(offline_oracle(3, long_human, 10, 150), OracleTooLargeError);
  CHECK_THROWS_AS(offline_oracle(3, human, 4, 40), ValidationError);
  CHECK_THROWS_AS(offline_oracle(3, human, 4, 12, std::size_t{5}), ValidationError);
}

TEST_CASE("a short final slot is allowed") {
  const std::vector<std::size_t> human{2, 2, 2, 2, 2, 2, 2};
  const auto r = offline_oracle(3, human, 2, 7);
  REQUIRE(r.feasible);
  CHECK(r.sequence.size() == 4);
  CHECK(expand_sequence(r.sequence, 2, 7).size() == 7);
  CHECK(r.min_disturbance == 2);
}

TEST_CASE("no policy run beats the oracle") {
  const auto map = gg::test::strip_map(3, {{"sofa", 0}, {"bed", 1}, {"sink", 2}});
  std::mt19937_64 gen(13);
  StubTable table;
  table.default_token_prob = 0.01;
  const StubBackend stub(table);
  for (int instance = 0; instance < 25; ++instance) {
    const int tr = 1 + static_cast<int>(gen() % 4);
    const int horizon = 6 * tr;
    OccupancyTrace trace;
    std::size_t room = gen() % 3;
    for (int t = 0; t <= horizon; ++t) {
      if (gen() % 4 == 0) room = gen() % 3;
      trace.rooms.push_back(room);
    }
    SimConfig cfg;
    cfg.room_time = tr;
    cfg.horizon = horizon;
    cfg.master_seed = static_cast<std::uint64_t>(instance);
    for (auto policy : {PolicyKind::naive, PolicyKind::greedy_avoidance, PolicyKind::informed_avoidance}) {
      for (std::size_t restart = 0; restart < 5; ++restart) {
        StepLog log;
        const auto m = run_once(map, trace, policy, stub, cfg, restart, {}, &log);
        const auto best = offline_oracle(map, trace, cfg, log.start_room);
        CHECK(m.disturbance >= best.min_disturbance_any);
        if (!m.failed) CHECK(m.disturbance >= best.min_disturbance);
      }
    }
  }
}
