#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ctxmem/errors.hpp"
#include "ctxmem/json_io.hpp"
#include "ctxmem/scenario.hpp"

using namespace ctxmem;

namespace {
ScenarioEvent ev(EventAction a, const char* id, std::optional<std::string> target = std::nullopt)
{
    return ScenarioEvent{1, a, id, std::move(target)};
}
}  // namespace

TEST_CASE("remove, move and replace")
{
    auto env = default_household_script().environment;

    auto removed = apply_event(env, ev(EventAction::remove, "cereal#1"));
    CHECK(removed.context("kitchen").items.count("cereal#1") == 0);
    CHECK_FALSE(removed.location_of("cereal#1"));
    CHECK(removed.catalog().count("cereal#1") == 1);

    auto moved = apply_event(env, ev(EventAction::move, "cereal#1", "dining_area"));
    CHECK(moved.location_of("cereal#1") == "dining_area");
    CHECK(moved.context("kitchen").items.count("cereal#1") == 0);

    auto gone = apply_event(env, ev(EventAction::remove, "milk#1"));
    auto back = apply_event(gone, ev(EventAction::replace, "milk#1", "kitchen"));
    CHECK(back.context("kitchen").items.at("milk#1") == "milk");
}

TEST_CASE("event errors")
{
    auto env = default_household_script().environment;
    CHECK_THROWS_AS(env.apply(ev(EventAction::remove, "unicorn#1")), NotFoundError);
    CHECK_THROWS_AS(env.apply(ev(EventAction::move, "milk#1", "attic")), NotFoundError);
    CHECK_THROWS_AS(env.apply(ev(EventAction::move, "milk#1")), InvalidInputError);
    CHECK_THROWS_AS(env.apply(ev(EventAction::replace, "milk#1", "kitchen")), StateError);
    env.apply(ev(EventAction::remove, "milk#1"));
    CHECK_THROWS_AS(env.apply(ev(EventAction::remove, "milk#1")), StateError);
    CHECK_THROWS_AS(env.apply(ev(EventAction::move, "milk#1", "kitchen")), StateError);
}

TEST_CASE("construction invariants")
{
    Environment env;
    env.add_context("kitchen");
    CHECK_THROWS_AS(env.add_context("kitchen"), InvalidInputError);
    env.add_context("office");
    env.place("kitchen", "milk#1", "milk");
    CHECK_THROWS_AS(env.place("office", "milk#1", "milk"), InvalidInputError);
    CHECK_THROWS_AS(env.place("attic", "milk#2", "milk"), NotFoundError);
}

TEST_CASE("property: an instance is in at most one context under any event sequence")
{
    const auto base = default_household_script().environment;
    std::vector<std::string> ids;
    for (const auto& [id, cat] : base.catalog()) ids.push_back(id);
    std::vector<std::string> contexts;
    for (const auto& [name, ctx] : base.contexts()) contexts.push_back(name);

    std::mt19937 rng(9);
    std::uniform_int_distribution<std::size_t> pick_id(0, ids.size() - 1),
        pick_ctx(0, contexts.size() - 1);
    std::uniform_int_distribution<int> pick_action(0, 2);
    for (int run = 0; run < 100; ++run) {
        Environment env = base;
        for (int step = 0; step < 60; ++step) {
            const auto action = static_cast<EventAction>(pick_action(rng));
            ScenarioEvent e{1, action, ids[pick_id(rng)], std::nullopt};
            if (action != EventAction::remove) e.target_context = contexts[pick_ctx(rng)];
            try {
                env.apply(e);
            } catch (const StateError&) {
                // illegal for the current placement; state must be untouched
            }
            std::size_t placed = 0;
            for (const auto& [name, ctx] : env.contexts()) placed += ctx.items.size();
            std::size_t located = 0;
            for (const auto& id : ids) located += env.location_of(id) ? 1 : 0;
            REQUIRE(placed == located);
        }
    }
}

TEST_CASE("environment JSON: explicit and generated ids")
{
    json j = json::parse(R"({
        "kitchen": {"items": ["milk", {"id": "milk#1", "category": "milk"}, "apple"]},
        "store": {"storage": true, "items": ["milk"]}
    })");
    auto env = environment_from_json(j);
    CHECK(env.context("kitchen").items.size() == 3);
    CHECK(env.context("kitchen").items.count("milk#1") == 1);
    CHECK(env.context("kitchen").items.count("milk#2") == 1);
    CHECK(env.context("store").items.count("milk#3") == 1);
    CHECK(env.context("store").is_storage);
    CHECK(environment_from_json(json(env)) == env);
}
