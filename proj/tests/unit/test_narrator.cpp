#include <doctest.h>

#include "gg/activity_model.hpp"
#include "gg/errors.hpp"
#include "gg/narrator.hpp"
#include "support.hpp"

using namespace gg;

namespace {

CompletedAction done(int time, std::string verb, std::vector<ItemRef> refs = {}) {
  return {time, {std::move(verb), std::move(refs), 1}, 0, "kitchen"};
}

}  // namespace

TEST_CASE("default template golden narration") {
  ObservationHistory h;
  h.window = {done(3, "Walk", {{"mug", 1}}), done(4, "Grab", {{"mug", 1}})};
  CHECK(narrate(h, "default").text ==
        "A human is in the apartment. They walked to the mug. They grabbed the mug. ");
}

TEST_CASE("empty and none narrations") {
  ObservationHistory empty;
  CHECK(narrate(empty, "default").text == "A human is in the apartment. ");

  ObservationHistory h;
  h.window = {done(3, "Walk", {{"mug", 1}}), done(9, "Sleep")};
  CHECK(narrate(h, "none").text.empty());
  CHECK(narrate(h, "none").style == "none");
}

TEST_CASE("sentence shapes") {
  const TemplateRegistry registry;
  const auto& tmpl = registry.get("default");
  CHECK(narrate_action(done(1, "Sleep"), tmpl) == "They slept. ");
  CHECK(narrate_action(done(1, "Hum"), tmpl) == "They hum. ");
  CHECK(narrate_action(done(1, "SwitchOn", {{"tv", 1}}), tmpl) == "They switched on the tv. ");
  const auto two = narrate_action(done(1, "PutIn", {{"fork", 1}, {"dishwasher", 1}}), tmpl);
  CHECK(two == "They put the fork " + preposition("PutIn") + " the dishwasher. ");
  CHECK(past_tense("Walk") == "walked to");
  CHECK(past_tense("Grab") == "grabbed");
  CHECK(past_tense("Frobnicate") == "frobnicate");
}

TEST_CASE("appliance states use the appliance pattern") {
  ObservationHistory h;
  h.appliance_states = {{"stove", "on", 12}};
  CHECK(narrate(h, "default").text ==
        "A human is in the apartment. The stove switched on 12 minutes ago. ");
}

TEST_CASE("custom templates and unknown ids") {
  TemplateRegistry reg;
  reg.add("terse", {"", "{verb}. ", "{verb} {label} in {room}. ", "{verb} {label} {prep} {label2}. ", ""});
  ObservationHistory h;
  h.window = {done(2, "Grab", {{"cup", 1}})};
  CHECK(narrate(h, "terse", reg).text == "grabbed cup in kitchen. ");
  CHECK(reg.contains("default"));
  CHECK_THROWS_AS(narrate(h, "missing", reg), Error);
}

TEST_CASE("narration mentions each windowed action once, in order") {
  const auto map = gg::test::strip_map(3, {{"cup", 0}, {"bed", 1}, {"lamp", 2}});
  const auto program = parse_program("[Grab] <cup> (1)\n[Sit] <bed> (1)\n[SwitchOn] <lamp> (1)\n[Sleep]");
  const auto trace = simulate_human(program, bind_items(program, map, 0), map, 60);
  const TemplateRegistry registry;
  const auto& tmpl = registry.get("default");
  for (int t : {0, 1, 7, 25, 60}) {
    CAPTURE(t);
    const auto h = ObservationHistory::at(trace, t, 4);
    CHECK(h.window.size() <= 4);
    const auto text = narrate(h, "default").text;
    CHECK(text == narrate(h, "default").text);
    REQUIRE(text.starts_with(tmpl.header));
    std::size_t pos = tmpl.header.size();
    for (const auto& a : h.window) {
      const auto sentence = narrate_action(a, tmpl);
      const auto found = text.find(sentence, pos);
      REQUIRE(found != std::string::npos);
      pos = found + sentence.size();
    }
    CHECK(pos == text.size());
  }
}
