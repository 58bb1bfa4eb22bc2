#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spikeplan/generators.hpp"
#include "spikeplan/oracle.hpp"
#include "spikeplan/spike.hpp"
#include "support.hpp"

#include <fstream>
#include <sstream>

using namespace spikeplan;

namespace {

std::size_t fact_at(const Spike &s, const std::string &name) {
    for (std::size_t f = 0; f < s.fact_count(); ++f)
        if (s.fact_name(f) == name)
            return f;
    throw std::runtime_error("no fact " + name);
}

std::size_t action_at(const Spike &s, const std::string &name) {
    for (std::size_t a = 0; a < s.action_count(); ++a)
        if (s.action_name(a) == name)
            return a;
    throw std::runtime_error("no action " + name);
}

void build_to_fix_point(Spike &s) {
    while (!s.fix_point())
        s.extend_rank();
}

std::vector<gen::Instance> suite() {
    return {gen::blocks_example(), gen::toh(3),  gen::gripper(2), gen::gripper(3),
            gen::ferry(2),         gen::tsp(4),  gen::tokens_unsolvable()};
}

} // namespace

TEST_CASE("worked example matches the golden dump") {
    auto l = testing::load(gen::blocks_example());
    Spike s(l->task);
    s.extend_rank();
    std::ifstream in(SPIKEPLAN_TEST_DATA "/blocks_example.dump");
    REQUIRE(in);
    std::stringstream golden;
    golden << in.rdbuf();
    CHECK(s.dump() == golden.str());
}

TEST_CASE("worked example rank by rank") {
    auto l = testing::load(gen::blocks_example());
    Spike s(l->task);
    CHECK(s.fact_end(0) == 4);
    CHECK(s.action_count() == 0);

    const RankSummary r1 = s.extend_rank();
    CHECK(r1.new_noops == 4);
    CHECK(r1.new_actions == 6);
    CHECK(r1.new_facts == 4);
    CHECK(s.action_end(1) == 6);
    CHECK(r1.temporary_pairs == 0);
    CHECK(s.temporary_pairs().empty());

    const std::size_t ab = action_at(s, "(puton a b p1)");
    const std::size_t ba = action_at(s, "(puton b a p2)");
    CHECK(s.perm_mutex(ab, ba));
    CHECK(s.permanent_mutexes(ab).test_bit(ba));
    CHECK(s.actions_mutex(ab, ba, 1));
    CHECK(s.facts_mutex(fact_at(s, "(on a b)"), fact_at(s, "(on b a)"), 1));
    CHECK(s.fact_mutex(fact_at(s, "(on a b)"), fact_at(s, "(on b a)"), 1));

    for (std::size_t a = 0; a < 6; ++a) {
        CHECK_FALSE(s.self_mutex(a, 0));
        for (std::size_t b = 0; b < 6; ++b)
            if (a != b)
                CHECK_FALSE(s.temp_mutex(a, b, 0));
    }
}

TEST_CASE("permanent mutex examples") {
    auto l = testing::load(gen::blocks_example());
    Spike s(l->task);
    s.extend_rank();
    const std::size_t ab = action_at(s, "(puton a b p1)");
    CHECK(s.perm_mutex(ab, action_at(s, "noop(on a p1)")));
    CHECK(s.perm_mutex(ab, action_at(s, "noop(clear b)")));
    CHECK_FALSE(s.perm_mutex(ab, action_at(s, "noop(on b p2)")));
    CHECK_FALSE(s.perm_mutex(ab, action_at(s, "noop(clear a)")));
}

TEST_CASE("shared gripper is a permanent conflict") {
    auto l = testing::load(gen::gripper(2));
    Spike s(l->task);
    build_to_fix_point(s);
    const std::size_t a = action_at(s, "(pick b1 ra left)");
    const std::size_t b = action_at(s, "(pick b2 ra left)");
    CHECK(s.perm_mutex(a, b));
    for (const auto &[x, y] : s.temporary_pairs())
        CHECK_FALSE((std::min(x, y) == std::min(a, b) && std::max(x, y) == std::max(a, b)));
}

TEST_CASE("self mutex on a hand-built rank") {
    auto l = testing::load(gen::blocks_example());
    Spike s(l->task);
    s.extend_rank();
    const std::size_t ab = fact_at(s, "(on a b)");
    const std::size_t ba = fact_at(s, "(on b a)");
    const std::size_t cl = fact_at(s, "(clear p1)");
    const std::vector<std::size_t> both = {ab, ba};
    CHECK(s.self_mutex(both, 1));
    const std::vector<std::size_t> fine = {ab, cl};
    CHECK_FALSE(s.self_mutex(fine, 1));
    const std::vector<std::size_t> single = {ab};
    CHECK_FALSE(s.self_mutex(single, 1));
}

TEST_CASE("empty initial state") {
    auto l = testing::load(R"((define (domain d) (:predicates (p)) (:action go :parameters ()
      :precondition (and (p)) :effect (and (p)))))",
                           R"((define (problem x) (:domain d) (:init) (:goal (and))))");
    Spike s(l->task);
    CHECK(s.fact_count() == 0);
    const RankSummary r = s.extend_rank();
    CHECK(r.new_noops == 0);
    CHECK(r.new_actions == 0);
    REQUIRE(s.fix_point());
    CHECK(*s.fix_point() == 0);
    CHECK(s.goals_open(l->task.goals, 0));
}

TEST_CASE("goals in the initial state with nothing applicable") {
    auto l = testing::load(R"((define (domain d) (:predicates (p) (q)) (:action go :parameters ()
      :precondition (and (q)) :effect (and (p)))))",
                           R"((define (problem x) (:domain d) (:init (p)) (:goal (and (p)))))");
    Spike s(l->task);
    CHECK(s.goals_open(l->task.goals, 0));
    s.extend_rank();
    REQUIRE(s.fix_point());
    CHECK(*s.fix_point() == 0);
    CHECK(*s.buffer() == 1);
    CHECK_THROWS_AS(s.extend_rank(), std::logic_error);
}

TEST_CASE("hanoi rank 0") {
    auto l = testing::load(gen::toh(3));
    Spike s(l->task);
    // 3 x 3 peg facts + 3 disc pairs, 2 on-disc + 1 on-peg, 3 clear
    CHECK(s.fact_end(0) == 9 + 3 + 3 + 3);
}

TEST_CASE("MaxSize overflow") {
    auto l = testing::load(gen::toh(3));
    SpikeOptions options;
    options.max_size = 40;
    try {
        Spike s(l->task, options);
        FAIL("expected a capacity error");
    } catch (const CapacityError &e) {
        CHECK(e.kind() == CapacityError::Kind::MaxSize);
    }
}

TEST_CASE("structural invariants at every rank") {
    for (const auto &inst : suite()) {
        CAPTURE(inst.name);
        auto l = testing::load(inst);
        Spike s(l->task);
        build_to_fix_point(s);
        for (std::size_t r = 1; r <= s.newest_rank(); ++r) {
            CAPTURE(r);
            const std::size_t na = s.action_end(r);
            const std::size_t nf = s.fact_end(r);
            for (std::size_t a = 0; a < na; ++a) {
                const SpikeVector &m = s.amv(a, r);
                CHECK_FALSE(m.test_bit(a));
                CHECK(s.mutex_list(a, r) == m.set_indices());
                m.for_each_set([&](std::size_t b) {
                    CHECK(b < na);
                    CHECK(s.amv(b, r).test_bit(a));
                });
                for (std::size_t b = a + 1; b < na; ++b) {
                    const bool perm = s.perm_mutex(a, b);
                    const bool temp = s.temp_mutex(a, b, r - 1) || s.temp_mutex(b, a, r - 1);
                    CHECK(m.test_bit(b) == (perm || temp));
                    if (r > 1 && a < s.action_end(r - 1) && b < s.action_end(r - 1) &&
                        !s.amv(a, r - 1).test_bit(b))
                        CHECK_FALSE(m.test_bit(b));
                }
                const ActionHeader &h = s.action(a);
                for (std::size_t f : h.prec_list)
                    CHECK(s.fact(f).consumers.test_bit(a));
                CHECK(s.self_mutex(a, r - 1) == false);
            }
            for (const auto &[x, y] : s.temporary_pairs())
                CHECK_FALSE(s.perm_mutex(x, y));

            for (std::size_t f = 0; f < nf; ++f) {
                const SpikeVector &m = s.fmv(f, r);
                CHECK_FALSE(m.test_bit(f));
                for (std::size_t g = 0; g < nf; ++g) {
                    if (g == f)
                        continue;
                    CHECK(m.test_bit(g) == s.fmv(g, r).test_bit(f));
                    CHECK(m.test_bit(g) == s.fact_mutex(f, g, r));
                    CHECK(s.fact_mutex(f, g, r) == s.fact_mutex(g, f, r));
                    if (f < s.fact_end(r - 1) && g < s.fact_end(r - 1) &&
                        !s.fmv(f, r - 1).test_bit(g))
                        CHECK_FALSE(m.test_bit(g));
                }
                const SpikeVector &av = s.achievers(f, r);
                CHECK_FALSE(av.is_zero());
                for (std::size_t a = 0; a < na; ++a)
                    CHECK(av.test_bit(a) == s.action(a).adds.test_bit(f));
                if (f < s.fact_end(r - 1)) {
                    REQUIRE(s.fact(f).achieving_noop);
                    const ActionHeader &noop = s.action(*s.fact(f).achieving_noop);
                    CHECK(noop.is_noop);
                    CHECK(noop.add_list == std::vector<std::size_t>{f});
                    CHECK(noop.dels.is_zero());
                }
            }
            // Self mutex holds exactly when two preconditions are mutex.
            for (std::size_t a = 0; a < na; ++a) {
                const auto &pl = s.action(a).prec_list;
                bool pair = false;
                for (std::size_t i = 0; i < pl.size(); ++i)
                    for (std::size_t j = i + 1; j < pl.size(); ++j)
                        pair = pair || s.facts_mutex(pl[i], pl[j], r);
                CHECK(s.self_mutex(a, r) == pair);
            }
        }
    }
}

TEST_CASE("mutex relations agree with the set-based oracle, with and without the retest filter") {
    for (const auto &inst : suite()) {
        CAPTURE(inst.name);
        auto l = testing::load(inst);
        for (bool filter : {true, false}) {
            CAPTURE(filter);
            Spike s(l->task, SpikeOptions{kDefaultMaxSize, filter});
            build_to_fix_point(s);
            oracle::ExplicitGraph g(l->task);
            while (g.newest() < s.newest_rank())
                g.extend();
            for (std::size_t r = 1; r <= s.newest_rank(); ++r) {
                std::set<oracle::FactPair> facts;
                for (std::size_t f = 0; f < s.fact_end(r); ++f)
                    s.fmv(f, r).for_each_set([&](std::size_t x) {
                        const auto a = s.fact(f).name, b = s.fact(x).name;
                        facts.insert({std::min(a, b), std::max(a, b)});
                    });
                CHECK(facts == g.facts(r).mutex);
                auto key = [&](std::size_t a) {
                    const ActionHeader &h = s.action(a);
                    return h.is_noop ? oracle::ActionKey{true, s.fact(h.prec_list[0]).name}
                                     : oracle::ActionKey{false, *h.pool_index};
                };
                std::set<oracle::ActionPair> acts;
                for (std::size_t a = 0; a < s.action_end(r); ++a)
                    s.amv(a, r).for_each_set([&](std::size_t b) {
                        acts.insert({std::min(key(a), key(b)), std::max(key(a), key(b))});
                    });
                CHECK(acts == g.actions(r).mutex);
                CHECK(s.action_end(r) == g.actions(r).actions.size());
            }
        }
    }
}

TEST_CASE("retest filter changes counts only") {
    auto l = testing::load(gen::ferry(3));
    Spike on(l->task, SpikeOptions{kDefaultMaxSize, true});
    Spike off(l->task, SpikeOptions{kDefaultMaxSize, false});
    build_to_fix_point(on);
    build_to_fix_point(off);
    CHECK(on.dump() == off.dump());
    CHECK(off.counters().retests_avoided == 0);
    CHECK(on.counters().retests < off.counters().retests);
    CHECK(on.counters().retests + on.counters().retests_avoided == off.counters().retests);
}

TEST_CASE("a rank forced past the fix point is a replica") {
    for (const auto &inst : suite()) {
        CAPTURE(inst.name);
        auto l = testing::load(inst);
        Spike s(l->task);
        build_to_fix_point(s);
        const std::size_t fp = *s.fix_point();
        const std::size_t buf = *s.buffer();
        CHECK(s.newest_rank() == buf);
        CHECK(s.fact_end(fp) == s.fact_end(buf));
        for (std::size_t f = 0; f < s.fact_end(fp); ++f)
            CHECK(s.fmv(f, fp) == s.fmv(f, buf));

        const RankSummary extra = s.extend_rank(true);
        CHECK(extra.new_facts == 0);
        CHECK(extra.new_actions == 0);
        const std::size_t next = buf + 1;
        CHECK(s.fact_end(next) == s.fact_end(buf));
        CHECK(s.action_end(next) == s.action_end(buf));
        for (std::size_t f = 0; f < s.fact_end(buf); ++f) {
            CHECK(s.fmv(f, next) == s.fmv(f, buf));
            CHECK(s.achievers(f, next) == s.achievers(f, buf));
        }
        for (std::size_t a = 0; a < s.action_end(buf); ++a)
            CHECK(s.amv(a, next) == s.amv(a, buf));
    }
}

TEST_CASE("opening and fix point of the benchmark families") {
    auto rank_of = [](const gen::Instance &inst) {
        auto l = testing::load(inst);
        Spike s(l->task);
        std::optional<std::size_t> open;
        while (true) {
            if (!open && s.goals_open(l->task.goals))
                open = s.newest_rank();
            if (s.fix_point())
                break;
            s.extend_rank();
        }
        return std::pair{open.value_or(99), *s.buffer()};
    };
    CHECK(rank_of(gen::toh(3)) == std::pair<std::size_t, std::size_t>{4, 6});
    CHECK(rank_of(gen::toh(4)) == std::pair<std::size_t, std::size_t>{5, 7});
    CHECK(rank_of(gen::gripper(3)) == std::pair<std::size_t, std::size_t>{3, 5});
    CHECK(rank_of(gen::ferry(3)) == std::pair<std::size_t, std::size_t>{6, 7});
    CHECK(rank_of(gen::tsp(5)) == std::pair<std::size_t, std::size_t>{2, 4});
}
