#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "gg/activity_model.hpp"
#include "gg/errors.hpp"
#include "gg/narrator.hpp"
#include "gg/reasoner.hpp"
#include "gg/stub_backend.hpp"
#include "support.hpp"

using namespace gg;
using gg::test::box;
using gg::test::item_at;

TEST_CASE("completion set is the sorted distinct labels") {
  CHECK(build_completion_set(load_map(gg::test::data_path("maps/env0.map.json"))).size() == 115);
  CHECK(build_completion_set(gg::test::strip_map(2, {{"mug", 0}, {"mug", 1}, {"sink", 0}})) ==
        std::vector<std::string>{"mug", "sink"});
  CHECK(build_completion_set(SemanticMap(gg::test::strip_rooms(1), {}, gg::test::strip_partitions(1))).empty());
}

TEST_CASE("label scores are split over their instances") {
  const auto map = gg::test::strip_map(3, {{"mug", 0}, {"mug", 1}, {"mug", 2}, {"sink", 2}});
  StubTable t;
  t.set("", "mug", {0.3});
  t.set("", "sink", {0.6});
  const auto r = compute_relevancy(map, PromptSpec{}, StubBackend(t));
  for (int id : {1, 2, 3}) CHECK(r.item_scores.at(id) == doctest::Approx(0.1));
  CHECK(r.item_scores.at(4) == doctest::Approx(0.6));
  CHECK(r.completion_scores.at("mug") == doctest::Approx(0.3));
  CHECK(r.partition_scores.at(0) == doctest::Approx(0.1));
  CHECK(r.partition_scores.at(2) == doctest::Approx(0.7));
}

TEST_CASE("uniform scores over two labels in one partition") {
  const auto map = gg::test::strip_map(3, {{"mug", 0}, {"sink", 0}});
  StubTable t;
  t.default_token_prob = 0.04;
  const auto r = compute_relevancy(map, PromptSpec{}, StubBackend(t));
  CHECK(r.partition_scores.at(0) == doctest::Approx(0.08));
  CHECK(r.partition_scores.at(1) == 0.0);
  CHECK(r.partition_scores.at(2) == 0.0);
}

TEST_CASE("aggregate_partitions sums assigned item scores") {
  const auto map = gg::test::strip_map(2, {{"a", 0}, {"b", 1}, {"c", 1}});
  const auto s = aggregate_partitions(map, {{1, 0.5}, {2, 0.3}, {3, 0.2}});
  CHECK(s.at(0) == doctest::Approx(0.5));
  CHECK(s.at(1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(aggregate_partitions(map, {{1, 0.5}}), ValidationError);

  const auto single = gg::test::strip_map(1, {{"a", 0}});
  CHECK(aggregate_partitions(single, {{1, 0.25}}).at(0) == 0.25);

  const auto tripled = aggregate_partitions(map, {{1, 1.5}, {2, 0.9}, {3, 0.6}});
  for (int p : {0, 1}) CHECK(tripled.at(p) == doctest::Approx(3 * s.at(p)));
}

TEST_CASE("an item straddling two partitions equally counts for the lower id") {
  const SemanticMap map(gg::test::strip_rooms(2), {item_at(1, "rug", box(0.5, 0.2, 0.2, 1.5, 0.8, 0.8))},
                        gg::test::strip_partitions(2));
  const auto s = aggregate_partitions(map, {{1, 0.4}});
  CHECK(s.at(0) == 0.4);
  CHECK(s.at(1) == 0.0);
}

TEST_CASE("aggregation conserves mass and ignores item order") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n_parts = 1 + static_cast<int>(gen() % 6);
    std::vector<Item> items;
    std::map<int, double> scores;
    const int n_items = 1 + static_cast<int>(gen() % 50);
    for (int i = 0; i < n_items; ++i) {
      const double x = u(gen) * (n_parts - 0.3);
      items.push_back(item_at(i + 1, "l", box(x, 0.1, 0.1, x + 0.2, 0.3, 0.3)));
      scores[i + 1] = std::exp(-30.0 * u(gen));
    }
    const SemanticMap map(gg::test::strip_rooms(n_parts), items, gg::test::strip_partitions(n_parts));
    const auto s = aggregate_partitions(map, scores);
    double items_total = 0.0, parts_total = 0.0;
    for (const auto& [id, v] : scores) items_total += v;
    for (const auto& [id, v] : s) parts_total += v;
    CHECK(std::abs(parts_total - items_total) <= 1e-9 * items_total);

    std::reverse(items.begin(), items.end());
    const SemanticMap reversed(gg::test::strip_rooms(n_parts), items, gg::test::strip_partitions(n_parts));
    const auto r = aggregate_partitions(reversed, scores);
    for (const auto& [p, v] : s) CHECK(r.at(p) == doctest::Approx(v).epsilon(1e-12));

    items.push_back(item_at(999, "zero", box(0.1, 0.1, 0.1, 0.2, 0.2, 0.2)));
    scores[999] = 0.0;
    const SemanticMap extended(gg::test::strip_rooms(n_parts), items, gg::test::strip_partitions(n_parts));
    const auto e = aggregate_partitions(extended, scores);
    for (const auto& [p, v] : s) CHECK(e.at(p) == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("prompt text concatenates narration and binding sequence") {
  PromptSpec p;
  p.narration.text = "A human is in the apartment. ";
  CHECK(p.text() == "A human is in the apartment. Next, the human will go to the ");
  p.binding_sequence = "Next, they will go to the ";
  CHECK(p.text() == "A human is in the apartment. Next, they will go to the ");
}

TEST_CASE("length normalization uses the per-token geometric mean") {
  const auto map = gg::test::strip_map(2, {{"coffee_table", 0}, {"mug", 1}});
  StubTable t;
  t.set("", "mug", {0.25});
  t.set("", "coffee_table", {0.5});
  const StubBackend stub(t);
  ReasonerOptions normalized;
  normalized.length_normalized = true;
  const auto plain = compute_relevancy(map, PromptSpec{}, stub);
  const auto per_token = compute_relevancy(map, PromptSpec{}, stub, normalized);
  CHECK(plain.completion_scores.at("mug") == doctest::Approx(0.25));
  CHECK(per_token.completion_scores.at("mug") == doctest::Approx(0.25));
  CHECK(per_token.completion_scores.at("coffee_table") == doctest::Approx(0.5));
}

TEST_CASE("oracle-next-room stub favours the room of the next action") {
  const auto map = gg::test::strip_map(3, {{"cup", 0}, {"kettle", 0}, {"bed", 1}, {"lamp", 2}});
  const auto program = parse_program("[Walk] <cup> (1)\n[Walk] <bed> (1)\n[Walk] <lamp> (1)");
  const auto binding = bind_items(program, map, 0);
  const auto rooms = action_rooms(program, binding, map);
  const TemplateRegistry templates;
  StubContext ctx{&map, &program, &rooms, &templates, "default", std::string(kDefaultBindingSequence), 10};
  const StubBackend stub(make_next_room_table(ctx));

  const auto trace = simulate_human(program, binding, map, 40);
  for (int t : {3, 6, 9, 12, 30}) {
    CAPTURE(t);
    const auto history = ObservationHistory::at(trace, t, 10);
    REQUIRE_FALSE(history.window.empty());
    // Action k runs in room k, so the next action runs in the room after the last one.
    const std::size_t last_room = history.window.back().room;
    const std::size_t want = (last_room + 1) % 3;
    PromptSpec prompt{narrate(history, "default", templates), std::string(kDefaultBindingSequence)};
    const auto r = compute_relevancy(map, prompt, stub);
    int best = 0;
    for (const auto& [p, v] : r.partition_scores)
      if (v > r.partition_scores.at(best)) best = p;
    CHECK(best == static_cast<int>(want));
    for (const auto& [label, s] : r.completion_scores) {
      const bool in_target = (label == "cup" || label == "kettle") ? want == 0 : (label == "bed" ? want == 1 : want == 2);
      CHECK(s == doctest::Approx(in_target ? 0.9 : 1e-4));
    }
  }
}
