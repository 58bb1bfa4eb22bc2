#include "spikeplan/planner.hpp"
#include "spikeplan/wavefront.hpp"

#include "spikeplan/memo.hpp"
#include "spikeplan/validate.hpp"

#include <chrono>
#include <cstdint>
#include <stdexcept>

namespace spikeplan {

const char *to_string(Mode mode) {
    switch (mode) {
    case Mode::Wavefront:
        return "wavefront";
    case Mode::NoWavefront:
        return "no-wavefront";
    case Mode::Explicit:
        return "explicit";
    }
    return "?";
}

std::optional<Mode> parse_mode(const std::string &name) {
    if (name == "wavefront")
        return Mode::Wavefront;
    if (name == "no-wavefront")
        return Mode::NoWavefront;
    if (name == "explicit")
        return Mode::Explicit;
    return std::nullopt;
}

strips::Plan extract_plan(const Spike &spike, const std::vector<std::vector<std::size_t>> &steps) {
    strips::Plan plan;
    for (const auto &layer : steps) {
        std::vector<std::size_t> sorted = layer;
        std::sort(sorted.begin(), sorted.end());
        auto &step = plan.steps.emplace_back();
        for (std::size_t a : sorted) {
            const ActionHeader &h = spike.action(a);
            if (!h.is_noop)
                step.push_back(spike.task().actions[*h.pool_index]);
        }
    }
    return plan;
}

namespace {

struct FragmentNode {
    std::vector<std::size_t> step;
    std::int64_t next = -1;  // the step executed afterwards
};

class Driver {
public:
    Driver(const strips::GroundTask &task, const PlannerOptions &options, bool keep)
        : task_(task), options_(options), keep_(keep),
          spike_(task, SpikeOptions{options.max_size, options.changed_acts}),
          searcher_(spike_, memo_, SearchOptions{options.memo, options.exclude_failing_goal}) {}

    PlanResult run() {
        const auto start = std::chrono::steady_clock::now();
        PlanResult result;
        result.found = explore(result);
        finish(result, start);
        return result;
    }

private:
    bool explore(PlanResult &result) {
        std::optional<GoalSet> goals;
        while (true) {
            const std::size_t r = spike_.newest_rank();
            if (spike_.goals_open(task_.goals, r)) {
                if (!goals) {
                    goals = goal_set(spike_, task_.goals);
                    result.stats.opening = r;
                }
                if (spike_.fix_point())
                    break;
                SearchResult s = searcher_.search(*goals, r);
                if (s.found)
                    return accept(result, extract_plan(spike_, s.steps));
            }
            if (spike_.fix_point()) {
                if (!goals)
                    return false;
                break;
            }
            extend();
        }

        const std::size_t fp = *spike_.fix_point();
        const std::size_t buffer = *spike_.buffer();
        SearchOptions opts = searcher_.options();
        opts.full_from_layer = fp;
        if (options_.mode == Mode::Wavefront)
            opts.memo_ceiling = fp;
        searcher_.set_options(opts);

        if (options_.mode == Mode::NoWavefront)
            return graphplan_tail(result, *goals, buffer);
        return wavefront(result, *goals, fp, buffer);
    }

    void extend(bool past = false) {
        if (spike_.newest_rank() + 1 >= options_.max_ranks)
            throw CapacityError(CapacityError::Kind::RankCap,
                                "rank cap of " + std::to_string(options_.max_ranks) + " reached");
        spike_.extend_rank(past);
    }

    bool graphplan_tail(PlanResult &result, const GoalSet &goals, std::size_t buffer) {
        std::size_t layer = buffer;
        while (true) {
            const std::size_t before = memo_.count(buffer);
            SearchResult s = searcher_.search(goals, layer);
            if (s.found)
                return accept(result, extract_plan(spike_, s.steps));
            if (layer > buffer && memo_.count(buffer) == before)
                return false;
            extend(true);
            ++layer;
        }
    }

    bool wavefront(PlanResult &result, const GoalSet &goals, std::size_t fp, std::size_t buffer) {
        CandidateQueue queue(options_.heuristic, options_.penetration_weight,
                             options_.fragment_weight);
        queue.seal(goals);
        SearchResult seed = searcher_.search(goals, buffer, fp);
        if (seed.found)
            return accept(result, extract_plan(spike_, seed.steps));

        auto admit_children = [&](SearchResult &s, const QueuedCandidate *parent) {
            for (ChildSet &child : s.children) {
                ++result.stats.candidates_generated;
                if (queue.covered(child.goals)) {
                    ++result.stats.candidates_skipped;
                    continue;
                }
                if (result.stats.candidates_admitted >= options_.max_candidates)
                    throw CapacityError(CapacityError::Kind::CandidateCap,
                                        "candidate cap of " +
                                            std::to_string(options_.max_candidates) + " reached");
                ++result.stats.candidates_admitted;

                QueuedCandidate c;
                c.goals = std::move(child.goals);
                fragments_.push_back({std::move(child.step), parent ? parent->fragment : -1});
                c.fragment = static_cast<std::int64_t>(fragments_.size() - 1);
                c.generation = parent ? parent->generation + 1 : 1;
                c.penetration = buffer - child.lowest_layer;
                ++result.stats.penetration[c.penetration];
                if (keep_)
                    result.candidates.push_back({c.goals, c.generation, c.penetration});
                queue.admit(std::move(c));
                result.stats.queue_peak = std::max(result.stats.queue_peak, queue.size());
            }
        };
        admit_children(seed, nullptr);

        while (!queue.empty()) {
            const QueuedCandidate c = queue.pop();
            SearchResult s = searcher_.search(c.goals, buffer, fp);
            if (s.found) {
                strips::Plan p = extract_plan(spike_, s.steps);
                for (std::int64_t f = c.fragment; f >= 0; f = fragments_[f].next) {
                    strips::Plan tail = extract_plan(spike_, {fragments_[f].step});
                    p.steps.push_back(std::move(tail.steps.front()));
                }
                result.stats.fragment_length = c.generation;
                return accept(result, std::move(p));
            }
            admit_children(s, &c);
        }
        return false;
    }

    bool accept(PlanResult &result, strips::Plan p) {
        if (auto v = strips::validate_plan(task_, p))
            throw std::logic_error("extracted plan fails validation at step " +
                                   std::to_string(v->step) + ": " + v->reason);
        result.plan = std::move(p);
        return true;
    }

    void finish(PlanResult &result, std::chrono::steady_clock::time_point start) {
        RunStats &st = result.stats;
        st.ranks = spike_.newest_rank() + 1;
        st.fix_point = spike_.fix_point();
        st.buffer = spike_.buffer();
        st.plan_steps = result.plan.step_count();
        st.plan_actions = result.plan.action_count();
        const SpikeCounters &k = spike_.counters();
        st.permanent_tests = k.permanent_tests;
        st.temporary_tests = k.temporary_tests;
        st.retests = k.retests;
        st.retests_avoided = k.retests_avoided;
        st.memo_sets = memo_.total();
        st.nodes = searcher_.stats().nodes;
        if (options_.dump_graph)
            result.graph_dump = spike_.dump();
        st.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                               start)
                         .count();
    }

    const strips::GroundTask &task_;
    PlannerOptions options_;
    bool keep_;
    Spike spike_;
    MemoStore memo_;
    Searcher searcher_;
    std::vector<FragmentNode> fragments_;
};

} // namespace

PlanResult plan(const strips::GroundTask &task, const PlannerOptions &options,
                bool keep_candidates) {
    if (options.mode == Mode::Explicit)
        throw std::invalid_argument("explicit mode is served by the reference planner");
    return Driver(task, options, keep_candidates).run();
}

LevelAnalysis analyze_levels(const strips::GroundTask &task, const PlannerOptions &options) {
    Spike spike(task, SpikeOptions{options.max_size, options.changed_acts});
    LevelAnalysis a;
    while (true) {
        const std::size_t r = spike.newest_rank();
        if (!a.opening && spike.goals_open(task.goals, r))
            a.opening = r;
        if (spike.fix_point())
            break;
        if (r + 1 >= options.max_ranks)
            throw CapacityError(CapacityError::Kind::RankCap,
                                "rank cap of " + std::to_string(options.max_ranks) + " reached");
        spike.extend_rank();
    }
    a.fix_point = *spike.fix_point();
    a.buffer = *spike.buffer();
    a.ranks = spike.newest_rank() + 1;
    return a;
}

} // namespace spikeplan
