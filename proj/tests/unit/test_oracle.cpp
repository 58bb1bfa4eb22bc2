#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spikeplan/generators.hpp"
#include "spikeplan/oracle.hpp"
#include "spikeplan/planner.hpp"
#include "spikeplan/validate.hpp"
#include "support.hpp"

#include <algorithm>

using namespace spikeplan;
using namespace spikeplan::oracle;
using FactSet = oracle::GoalSet;

namespace {

ActionKey pool(std::size_t i) { return {false, i}; }
ActionKey noop(std::size_t f) { return {true, f}; }

LayerAction act(ActionKey k, std::set<FactId> pre, std::set<FactId> add, std::set<FactId> del = {}) {
    return {k, std::move(pre), std::move(add), std::move(del)};
}

ActionPair pair_of(ActionKey a, ActionKey b) { return a < b ? ActionPair{a, b} : ActionPair{b, a}; }

FactId id(const strips::GroundTask &t, const char *text) {
    for (FactId f = 0; f < t.facts.size(); ++f)
        if (strips::to_string(t.facts.atom(f)) == text)
            return f;
    throw std::runtime_error(std::string("no fact ") + text);
}

std::string trivial_problem() {
    std::string p = gen::blocks_example().problem;
    const std::string goal = "(:goal (and (on a b)))";
    p.replace(p.find(goal), goal.size(), "(:goal (and (on a p1) (clear b)))");
    return p;
}

} // namespace

TEST_CASE("pairwise mutex rules on a hand-made layer") {
    FactLayer prev;
    prev.facts = {0, 1, 2};
    prev.mutex = {{1, 2}};
    const std::vector<LayerAction> actions = {
        act(pool(0), {0}, {3}, {0}),  // A
        act(pool(1), {0}, {4}),       // B
        act(pool(2), {1}, {5}),       // C
        act(pool(3), {2}, {6}),       // D
        act(noop(0), {0}, {0}),
        act(noop(1), {1}, {1}),
        act(noop(2), {2}, {2}),
    };
    const MutexResult m = brute_mutex(prev, actions);
    const std::set<ActionPair> expected_actions = {
        pair_of(pool(0), pool(1)),  // A deletes what B needs
        pair_of(pool(0), noop(0)),  // A deletes what the no-op carries
        pair_of(pool(2), pool(3)),  // competing needs
        pair_of(pool(2), noop(2)),
        pair_of(pool(3), noop(1)),
        pair_of(noop(1), noop(2)),
    };
    CHECK(m.actions == expected_actions);
    const std::set<FactPair> expected_facts = {{0, 3}, {3, 4}, {5, 6}, {2, 5}, {1, 6}, {1, 2}};
    CHECK(m.facts == expected_facts);
}

TEST_CASE("a fact with one non-mutex achiever pair is not mutex") {
    FactLayer prev;
    prev.facts = {0, 1};
    const std::vector<LayerAction> actions = {
        act(pool(0), {0}, {2}, {1}),
        act(pool(1), {0}, {2}),
        act(noop(0), {0}, {0}),
        act(noop(1), {1}, {1}),
    };
    const MutexResult m = brute_mutex(prev, actions);
    CHECK(m.actions.count(pair_of(pool(0), noop(1))));
    CHECK_FALSE(m.facts.count({1, 2}));
    CHECK(m.facts.empty());
}

TEST_CASE("explicit planner on small instances") {
    SUBCASE("worked example") {
        auto l = testing::load(gen::blocks_example());
        const ExplicitResult r = explicit_graphplan(l->task);
        REQUIRE(r.found);
        CHECK(r.plan.step_count() == 1);
        CHECK(r.opening == 1);
    }
    SUBCASE("goals already true") {
        auto l = testing::load(gen::blocks_example().domain, trivial_problem());
        const ExplicitResult r = explicit_graphplan(l->task);
        REQUIRE(r.found);
        CHECK(r.plan.steps.empty());
        CHECK(r.opening == 0);
    }
    SUBCASE("three discs") {
        auto l = testing::load(gen::toh(3));
        const ExplicitResult r = explicit_graphplan(l->task);
        REQUIRE(r.found);
        CHECK(r.plan.step_count() == 7);
        CHECK_FALSE(strips::validate_plan(l->task, r.plan));
    }
    SUBCASE("four cities") {
        auto l = testing::load(gen::tsp(4));
        const ExplicitResult r = explicit_graphplan(l->task);
        REQUIRE(r.found);
        CHECK(r.plan.step_count() == 4);
        CHECK_FALSE(strips::validate_plan(l->task, r.plan));
    }
    SUBCASE("unsolvable") {
        for (const auto &inst : {gen::tokens_unsolvable(), gen::lights_unsolvable()}) {
            auto l = testing::load(inst);
            const ExplicitResult r = explicit_graphplan(l->task);
            CHECK_FALSE(r.found);
            CHECK(r.level_off);
        }
    }
    SUBCASE("layer budget") {
        auto l = testing::load(gen::toh(3));
        CHECK_THROWS_AS(explicit_graphplan(l->task, 4), BudgetExceeded);
    }
}

TEST_CASE("layers level off where the spike reaches its fix point") {
    for (const auto &inst : {gen::toh(3), gen::gripper(3), gen::ferry(2), gen::tsp(4),
                             gen::lights_unsolvable()}) {
        CAPTURE(inst.name);
        auto l = testing::load(inst);
        const LevelAnalysis a = analyze_levels(l->task);
        ExplicitGraph g(l->task);
        while (!g.level_off())
            g.extend();
        CHECK(*g.level_off() == a.fix_point);
        std::set<FactId> goals(l->task.goals.begin(), l->task.goals.end());
        std::optional<std::size_t> open;
        for (std::size_t r = 0; r <= g.newest() && !open; ++r)
            if (g.goals_open(goals, r))
                open = r;
        CHECK(open == a.opening);
    }
}

TEST_CASE("goal tree") {
    auto l = testing::load(gen::blocks_example());
    ExplicitGraph g(l->task);
    g.extend();
    g.extend();
    const FactSet goals = {id(l->task, "(on a b)")};

    const auto one = goal_tree_leaves(g, goals, 1, 2);
    CHECK(one == std::set<FactSet>{goals});

    std::size_t budget = 1000;
    const auto children = goal_children(g, goals, 1, budget);
    const FactSet pre = {id(l->task, "(on a p1)"), id(l->task, "(clear a)"), id(l->task, "(clear b)")};
    CHECK(children == std::set<FactSet>{pre});

    // Children are set-minimal.
    const auto two = goal_tree_leaves(g, goals, 2, 2);
    for (const auto &a : two)
        for (const auto &b : two)
            if (a != b)
                CHECK_FALSE(std::includes(a.begin(), a.end(), b.begin(), b.end()));

    std::size_t tiny = 0;
    CHECK_THROWS_AS(goal_children(g, goals, 2, tiny), BudgetExceeded);
}
