#include <doctest.h>

#include <set>

#include "gg/activity_model.hpp"
#include "gg/errors.hpp"
#include "support.hpp"

using namespace gg;

TEST_CASE("parse_program reads verbs, labels and ids") {
  const auto p = parse_program("[Walk] <mug> (1)\n[Grab] <mug> (1)");
  REQUIRE(p.actions.size() == 2);
  CHECK(p.actions[0].verb == "Walk");
  CHECK(p.actions[0].item_refs == std::vector<ItemRef>{{"mug", 1}});
  CHECK(p.actions[1].item_refs == std::vector<ItemRef>{{"mug", 1}});
  CHECK(p.actions[0].duration == 3);
  CHECK(p.actions[1].duration == 1);

  const auto sleep = parse_program("[Sleep]");
  REQUIRE(sleep.actions.size() == 1);
  CHECK(sleep.actions[0].item_refs.empty());

  const auto two = parse_program("# comment\n\n[PutIn] <fork> (1) <sink> (2)\n");
  REQUIRE(two.actions.size() == 1);
  CHECK(two.actions[0].item_refs == std::vector<ItemRef>{{"fork", 1}, {"sink", 2}});
}

TEST_CASE("parse_program errors") {
  CHECK_THROWS_AS(parse_program(""), ParseError);
  CHECK_THROWS_AS(parse_program("# only a comment\n"), ParseError);
  CHECK_THROWS_WITH_AS(parse_program("[Walk] <mug> (1)\nWalk <mug> (1)"), doctest::Contains("line 2"),
                       ParseError);
  CHECK_THROWS_AS(parse_program("[Walk] <mug>"), ParseError);
  CHECK_THROWS_AS(parse_program("[Walk] <mug> (x)"), ParseError);
  CHECK_THROWS_AS(parse_program("[Put] <a> (1) <b> (1) <c> (1)"), ParseError);
  CHECK_THROWS_AS(parse_program("[] <a> (1)"), ParseError);

  auto strict = DurationTable::parse("default = none\nWalk = 3\n");
  CHECK_THROWS_WITH_AS(parse_program("[Dance]", strict), doctest::Contains("Dance"), ParseError);
}

TEST_CASE("duration table") {
  const auto d = DurationTable::defaults();
  CHECK(d.lookup("Walk") == 3);
  CHECK(d.lookup("Grab") == 1);
  CHECK(d.lookup("Watch") == 5);
  CHECK(d.lookup("Juggle") == 2);

  const auto t = DurationTable::parse("# steps\nSleep = 60\ndefault = 4\n");
  CHECK(t.lookup("Sleep") == 60);
  CHECK(t.lookup("Walk") == 4);
  CHECK_THROWS_AS(DurationTable::parse("Sleep = zero"), ParseError);
  CHECK_THROWS_AS(DurationTable::parse("Sleep = 0"), ParseError);
  CHECK_THROWS_AS(DurationTable::parse("Sleep"), ParseError);
}

TEST_CASE("bind_items picks distinct instances per local id") {
  const auto map = gg::test::strip_map(3, {{"mug", 0}, {"mug", 1}, {"mug", 2}, {"sink", 2}});
  const auto program = parse_program("[Walk] <mug> (1)\n[Grab] <mug> (2)\n[Walk] <mug> (1)");
  const auto binding = bind_items(program, map, 5);
  REQUIRE(binding.size() == 2);
  CHECK(binding.at({"mug", 1}) != binding.at({"mug", 2}));
  for (const auto& [ref, id] : binding) CHECK(map.item(id).label == "mug");
  CHECK(bind_items(program, map, 5) == binding);

  const auto forced = bind_items(parse_program("[Walk] <sink> (1)"), map, 123);
  CHECK(forced.at({"sink", 1}) == 4);

  CHECK_THROWS_AS(bind_items(parse_program("[Walk] <unicorn> (1)"), map, 0), BindingError);
  CHECK_THROWS_AS(bind_items(parse_program("[Walk] <sink> (1)\n[Walk] <sink> (2)"), map, 0), BindingError);
}

TEST_CASE("bind_items covers every instance across seeds") {
  const auto map = gg::test::strip_map(3, {{"mug", 0}, {"mug", 1}, {"mug", 2}});
  const auto program = parse_program("[Walk] <mug> (1)");
  std::set<int> seen;
  for (std::uint64_t seed = 0; seed < 64; ++seed) seen.insert(bind_items(program, map, seed).at({"mug", 1}));
  CHECK(seen == std::set<int>{1, 2, 3});
}

TEST_CASE("simulate_human on a single-room program") {
  const auto map = gg::test::strip_map(3, {{"sink", 2}});
  const auto program = parse_program("[Walk] <sink> (1)");
  const auto trace = simulate_human(program, bind_items(program, map, 0), map, 10);
  REQUIRE(trace.rooms.size() == 11);
  for (auto r : trace.rooms) CHECK(r == 2);
}

TEST_CASE("simulate_human loops the program") {
  const auto map = gg::test::strip_map(2, {{"cup", 0}, {"bed", 1}});
  const auto durations = DurationTable::parse("A = 3\nB = 2\n");
  const auto program = parse_program("[A] <cup> (1)\n[B] <bed> (1)", durations);
  const auto trace = simulate_human(program, bind_items(program, map, 0), map, 10);
  const std::vector<std::size_t> expected{0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0};
  CHECK(trace.rooms == expected);

  std::vector<int> times;
  for (const auto& c : trace.completed) times.push_back(c.time);
  CHECK(times == std::vector<int>{3, 5, 8, 10});
  CHECK(trace.completed[1].room == 1);

  const auto recent = trace.completed_until(8, 2);
  REQUIRE(recent.size() == 2);
  CHECK(recent[0].time == 5);
  CHECK(recent[1].time == 8);
  CHECK(trace.completed_until(2, 10).empty());
}

TEST_CASE("item-less actions stay in the previous room, cyclically") {
  const auto map = gg::test::strip_map(3, {{"cup", 0}, {"bed", 2}});
  const auto program = parse_program("[StandUp]\n[Walk] <cup> (1)\n[Sleep]\n[Walk] <bed> (1)\n[Yawn]");
  const auto rooms = action_rooms(program, bind_items(program, map, 0), map);
  CHECK(rooms == std::vector<std::size_t>{2, 0, 0, 2, 2});

  const auto idle = parse_program("[Sleep]\n[Yawn]");
  CHECK(action_rooms(idle, {}, map) == std::vector<std::size_t>{0, 0});
}

namespace {

// Counts action completions up to the horizon by walking the schedule one
// action at a time.
int count_completions(const ActivityProgram& program, int horizon) {
  int t = 0, count = 0;
  for (std::size_t k = 0;; k = (k + 1) % program.actions.size()) {
    t += program.actions[k].duration;
    if (t > horizon) return count;
    ++count;
  }
}

}  // namespace

TEST_CASE("fixture programs") {
  const auto durations = DurationTable::load(gg::test::data_path("durations.txt"));
  const auto map = load_map(gg::test::data_path("maps/env0.map.json"));
  struct Expect {
    const char* file;
    std::size_t actions;
  };
  for (const auto& e : {Expect{"programs/prog_a.txt", 18}, Expect{"programs/prog_b.txt", 16},
                        Expect{"programs/prog_c.txt", 42}}) {
    CAPTURE(e.file);
    const auto program = load_program(gg::test::data_path(e.file), durations);
    CHECK(program.actions.size() == e.actions);
    const auto binding = bind_items(program, map, 0);
    const auto trace = simulate_human(program, binding, map, 500);
    CHECK(trace.rooms.size() == 501);
    CHECK(static_cast<int>(trace.completed.size()) == count_completions(program, 500));

    // Completion times are prefix sums of the cyclic duration sequence.
    int t = 0;
    for (std::size_t i = 0; i < trace.completed.size(); ++i) {
      t += program.actions[i % program.actions.size()].duration;
      CHECK(trace.completed[i].time == t);
    }
    const auto again = simulate_human(program, bind_items(program, map, 0), map, 500);
    CHECK(again.rooms == trace.rooms);
  }
}
