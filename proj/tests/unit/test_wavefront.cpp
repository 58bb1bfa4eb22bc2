#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spikeplan/generators.hpp"
#include "spikeplan/oracle.hpp"
#include "spikeplan/planner.hpp"
#include "spikeplan/spike.hpp"
#include "spikeplan/validate.hpp"
#include "spikeplan/wavefront.hpp"
#include "support.hpp"

#include <algorithm>

using namespace spikeplan;

namespace {

QueuedCandidate cand(GoalSet g, std::size_t generation = 1, std::size_t penetration = 0) {
    QueuedCandidate c;
    c.goals = std::move(g);
    c.generation = generation;
    c.penetration = penetration;
    return c;
}

oracle::GoalSet as_facts(const Spike &s, const GoalSet &g) {
    oracle::GoalSet out;
    for (auto f : g)
        out.insert(s.fact(f).name);
    return out;
}

oracle::GoalSet task_goals(const strips::GroundTask &t) {
    return oracle::GoalSet(t.goals.begin(), t.goals.end());
}

bool includes(const oracle::GoalSet &big, const oracle::GoalSet &small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

} // namespace

TEST_CASE("admission skips duplicates and supersets") {
    CandidateQueue q(false, 1, 1);
    q.seal({1, 4});
    CHECK(q.empty());
    CHECK_FALSE(q.admit(cand({1, 4})));
    CHECK_FALSE(q.admit(cand({1, 2, 4})));
    CHECK(q.admit(cand({2, 3})));
    CHECK(q.admit(cand({1})));  // a subset of a sealed set is new information
    CHECK_FALSE(q.admit(cand({1, 7})));
    CHECK(q.size() == 2);
    CHECK(q.admitted() == 2);
    CHECK(q.covered({1, 4, 9}));
    CHECK_FALSE(q.covered({2, 9}));
}

TEST_CASE("scores") {
    CHECK(candidate_score(1, 1, 3, 1) == 2);
    CHECK(candidate_score(2, 0.5, 1, 4) == 0);
    CHECK(candidate_score(0, 1, 9, 2) == -2);
}

TEST_CASE("fifo order") {
    CandidateQueue q(false, 1, 1);
    q.admit(cand({1}, 1, 0));
    q.admit(cand({2}, 1, 5));
    q.admit(cand({3}, 2, 9));
    CHECK(q.pop().goals == GoalSet{1});
    CHECK(q.pop().goals == GoalSet{2});
    CHECK(q.pop().goals == GoalSet{3});
    CHECK(q.empty());
}

TEST_CASE("scored order breaks ties by admission") {
    CandidateQueue q(true, 1, 1);
    q.admit(cand({1}, 1, 1));  // 0
    q.admit(cand({2}, 1, 3));  // 2
    q.admit(cand({3}, 2, 2));  // 0
    q.admit(cand({4}, 1, 3));  // 2
    const QueuedCandidate first = q.pop();
    CHECK(first.goals == GoalSet{2});
    CHECK(first.score == 2);
    CHECK(q.pop().goals == GoalSet{4});
    CHECK(q.pop().goals == GoalSet{1});
    CHECK(q.pop().goals == GoalSet{3});
}

TEST_CASE("unsolvable toys end without a plan") {
    auto t = testing::load(gen::tokens_unsolvable());
    const PlanResult r0 = plan(t->task);
    CHECK_FALSE(r0.found);
    CHECK(r0.stats.candidates_admitted == 0);
    CHECK(r0.stats.candidates_skipped == r0.stats.candidates_generated);

    auto l = testing::load(gen::lights_unsolvable());
    for (Mode m : {Mode::Wavefront, Mode::NoWavefront}) {
        for (bool h : {false, true}) {
            CAPTURE(to_string(m));
            CAPTURE(h);
            PlannerOptions o;
            o.mode = m;
            o.heuristic = h;
            const PlanResult r = plan(l->task, o);
            CHECK_FALSE(r.found);
            CHECK(r.plan.steps.empty());
        }
    }
    PlannerOptions o;
    const PlanResult r = plan(l->task, o);
    CHECK(r.stats.candidates_admitted > 0);
    CHECK(r.stats.ranks == *r.stats.buffer + 1);
}

TEST_CASE("candidate and rank caps") {
    auto l = testing::load(gen::lights_unsolvable());
    PlannerOptions o;
    o.max_candidates = 1;
    CHECK_THROWS_AS(plan(l->task, o), CapacityError);
    try {
        plan(l->task, o);
    } catch (const CapacityError &e) {
        CHECK(e.kind() == CapacityError::Kind::CandidateCap);
    }
    auto t = testing::load(gen::toh(3));
    PlannerOptions r;
    r.max_ranks = 3;
    CHECK_THROWS_AS(plan(t->task, r), CapacityError);
}

TEST_CASE("plans past the fix point splice the fragment chain") {
    for (const auto &inst : {gen::toh(3), gen::toh(4), gen::gripper(4), gen::ferry(3), gen::tsp(5)}) {
        CAPTURE(inst.name);
        auto l = testing::load(inst);
        for (bool h : {false, true}) {
            PlannerOptions o;
            o.heuristic = h;
            const PlanResult r = plan(l->task, o);
            REQUIRE(r.found);
            CHECK_FALSE(strips::validate_plan(l->task, r.plan));
            REQUIRE(r.stats.buffer);
            CHECK(r.stats.ranks == *r.stats.buffer + 1);
            CHECK(r.plan.step_count() == *r.stats.buffer + r.stats.fragment_length);
        }
    }
}

TEST_CASE("scored queue never beats fifo on length") {
    for (const auto &inst : {gen::toh(3), gen::toh(4), gen::gripper(5), gen::ferry(4), gen::tsp(6)}) {
        CAPTURE(inst.name);
        auto l = testing::load(inst);
        PlannerOptions fifo;
        PlannerOptions scored;
        scored.heuristic = true;
        const PlanResult a = plan(l->task, fifo);
        const PlanResult b = plan(l->task, scored);
        REQUIRE(a.found);
        REQUIRE(b.found);
        CHECK(b.plan.step_count() >= a.plan.step_count());
    }
}

TEST_CASE("admitted candidates") {
    for (const auto &inst : {gen::toh(3), gen::gripper(4), gen::lights_unsolvable()}) {
        CAPTURE(inst.name);
        auto l = testing::load(inst);
        const PlanResult r = plan(l->task, {}, true);
        const std::size_t buffer = *r.stats.buffer;
        std::size_t generation = 0;
        std::size_t total = 0;
        for (const auto &[pen, count] : r.stats.penetration)
            total += count;
        CHECK(total == r.candidates.size());
        CHECK(r.candidates.size() == r.stats.candidates_admitted);
        for (std::size_t i = 0; i < r.candidates.size(); ++i) {
            const auto &c = r.candidates[i];
            CHECK(c.generation >= generation);
            generation = c.generation;
            CHECK(c.penetration <= buffer);
            for (std::size_t j = 0; j < i; ++j)
                CHECK_FALSE(std::includes(c.goals.begin(), c.goals.end(),
                                          r.candidates[j].goals.begin(),
                                          r.candidates[j].goals.end()));
        }
    }
}

// Every goal set the classic search would pose on the buffer layer, from a
// tree rooted n layers up, is a superset of something the wave front saw.
TEST_CASE("wave front covers the deep goal tree") {
    struct Case {
        gen::Instance inst;
        std::vector<std::size_t> depths;  // layers above the buffer
    };
    const std::vector<Case> cases = {
        {gen::lights_unsolvable(), {1, 2, 3, 4, 5}},
        {gen::tokens_unsolvable(), {1, 2, 3}},
        {gen::toh(3), {1}},
        {gen::gripper(3), {1, 2}},
        {gen::tsp(4), {0}},
    };
    for (const auto &cs : cases) {
        CAPTURE(cs.inst.name);
        auto l = testing::load(cs.inst);
        const PlanResult r = plan(l->task, {}, true);
        const std::size_t fp = *r.stats.fix_point;
        const std::size_t buffer = *r.stats.buffer;

        Spike s(l->task);
        while (!s.fix_point())
            s.extend_rank();
        REQUIRE(*s.buffer() == buffer);
        std::vector<oracle::GoalSet> seen = {task_goals(l->task)};
        for (const auto &c : r.candidates)
            seen.push_back(as_facts(s, c.goals));

        oracle::ExplicitGraph g(l->task);
        for (std::size_t d : cs.depths) {
            const std::size_t n = buffer + d;
            if (r.found)
                REQUIRE(n <= r.plan.step_count());
            while (g.newest() < n)
                g.extend();
            CAPTURE(n);
            const auto leaves = oracle::goal_tree_leaves(g, task_goals(l->task), n - fp, n);
            if (cs.inst.name != "tokens-3")
                CHECK_FALSE(leaves.empty());
            for (const auto &leaf : leaves) {
                const bool covered = std::any_of(seen.begin(), seen.end(), [&](const auto &c) {
                    return includes(leaf, c);
                });
                CHECK(covered);
            }
        }
    }
}

TEST_CASE("goal tree leaves stop changing past the buffer") {
    for (const auto &inst : {gen::lights_unsolvable(), gen::tsp(4), gen::gripper(2)}) {
        CAPTURE(inst.name);
        auto l = testing::load(inst);
        const LevelAnalysis a = analyze_levels(l->task);
        oracle::ExplicitGraph g(l->task);
        while (g.newest() < a.buffer + 4)
            g.extend();
        for (std::size_t k = 1; k <= 3; ++k) {
            CAPTURE(k);
            const std::size_t n = a.buffer + k - 1;  // leaves land on the buffer or above
            const auto here = oracle::goal_tree_leaves(g, task_goals(l->task), k, n);
            const auto next = oracle::goal_tree_leaves(g, task_goals(l->task), k, n + 1);
            CHECK(here == next);
        }
    }
}
