#include "spikeplan/search.hpp"

#include <algorithm>
#include <stdexcept>

namespace spikeplan {

GoalSet goal_set(const Spike &spike, const std::vector<strips::FactId> &facts) {
    GoalSet g;
    for (strips::FactId f : facts) {
        const auto idx = spike.fact_index(f);
        if (!idx)
            throw std::invalid_argument("goal fact is not in the spike");
        g.push_back(static_cast<std::uint32_t>(*idx));
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

Searcher::Searcher(const Spike &spike, MemoStore &memo, SearchOptions options)
    : spike_(spike), memo_(memo), options_(options) {}

SearchResult Searcher::search(const GoalSet &goals, std::size_t layer,
                              std::optional<std::size_t> collect_at) {
    if (layer > spike_.newest_rank())
        throw std::out_of_range("search layer beyond the newest rank");
    frames_.resize(std::max(frames_.size(), layer + 1));
    for (auto &f : frames_)
        f.chosen.clear();
    collect_at_ = collect_at;
    collected_.clear();
    children_.clear();
    lowest_ = layer;

    frames_[layer].goals = goals;
    SearchResult result;
    result.found = solve(layer);
    result.lowest_layer = lowest_;
    if (result.found)
        for (std::size_t l = 1; l <= layer; ++l)
            result.steps.push_back(frames_[l].chosen);
    result.children = std::move(children_);
    children_.clear();
    return result;
}

bool Searcher::solve(std::size_t layer) {
    ++stats_.nodes;
    lowest_ = std::min(lowest_, layer);
    Frame &frame = frames_[layer];
    if (layer == 0)
        return true;

    std::optional<std::size_t> child;
    std::size_t saved_lowest = lowest_;
    if (collect_at_ && layer == *collect_at_ && collected_.insert(frame.goals)) {
        child = children_.size();
        children_.push_back({frame.goals,
                             layer + 1 < frames_.size() ? frames_[layer + 1].chosen
                                                        : std::vector<std::size_t>{},
                             layer});
        lowest_ = layer;
    }
    auto finish = [&](bool ok) {
        if (child) {
            children_[*child].lowest_layer = lowest_;
            lowest_ = std::min(saved_lowest, lowest_);
        }
        return ok;
    };

    if (memo_active(layer) && memo_.lookup(layer, frame.goals)) {
        ++stats_.memo_hits;
        return finish(false);
    }

    const std::size_t depth = frame.goals.size() + 1;
    const std::size_t acap = spike_.action_capacity();
    const std::size_t fcap = spike_.fact_capacity();
    if (frame.mutex.size() < depth) {
        frame.mutex.resize(depth);
        frame.adds.resize(depth);
        frame.precs.resize(depth);
    }
    if (frame.mutex[0].capacity() != acap) {
        for (auto &v : frame.mutex)
            v = SpikeVector(acap);
        for (auto &v : frame.adds)
            v = SpikeVector(fcap);
        for (auto &v : frame.precs)
            v = SpikeVector(fcap);
    }
    frame.mutex[0].clear();
    frame.adds[0].clear();
    frame.precs[0].clear();
    frame.chosen.clear();
    frame.max_index = 0;
    frame.reached_full = false;

    if (assign(layer, 0, 0))
        return finish(true);
    memoize(layer);
    return finish(false);
}

bool Searcher::assign(std::size_t layer, std::size_t i, std::size_t depth) {
    Frame &frame = frames_[layer];
    if (i == frame.goals.size()) {
        frame.reached_full = true;
        const auto sub = frame.precs[depth].set_indices();
        Frame &below = frames_[layer - 1];
        below.goals.assign(sub.begin(), sub.end());
        return solve(layer - 1);
    }
    frame.max_index = std::max(frame.max_index, i);
    const std::size_t g = frame.goals[i];
    if (frame.adds[depth].test_unchecked(g))
        return assign(layer, i + 1, depth);

    auto try_action = [&](std::size_t a) {
        if (frame.mutex[depth].test_unchecked(a))
            return false;
        const ActionHeader &h = spike_.action(a);
        frame.mutex[depth + 1] = frame.mutex[depth];
        frame.mutex[depth + 1].or_into(spike_.amv(a, layer));
        frame.adds[depth + 1] = frame.adds[depth];
        frame.adds[depth + 1].or_into(h.adds);
        frame.precs[depth + 1] = frame.precs[depth];
        frame.precs[depth + 1].or_into(h.precs);
        frame.chosen.push_back(a);
        if (assign(layer, i + 1, depth + 1))
            return true;
        frame.chosen.pop_back();
        return false;
    };

    const FactHeader &fact = spike_.fact(g);
    const std::size_t end = spike_.action_end(layer);
    std::optional<std::size_t> noop;
    if (fact.achieving_noop && *fact.achieving_noop < end) {
        noop = *fact.achieving_noop;
        if (try_action(*noop))
            return true;
    }
    bool found = false;
    spike_.achievers(g, layer).for_each_set([&](std::size_t a) {
        if (found || a == noop)
            return;
        found = try_action(a);
    });
    return found;
}

void Searcher::memoize(std::size_t layer) {
    if (!memo_active(layer))
        return;
    Frame &frame = frames_[layer];
    const bool full = options_.memo == MemoMode::Full || layer >= options_.full_from_layer ||
                      frame.reached_full;
    if (full) {
        if (memo_.insert(layer, frame.goals))
            ++stats_.memo_inserts;
        return;
    }
    std::size_t len = frame.max_index + 1;
    if (options_.exclude_failing_goal)
        --len;
    if (len == 0)
        return;
    std::span<const std::uint32_t> prefix(frame.goals.data(), len);
    if (memo_.insert(layer, prefix))
        ++stats_.memo_inserts;
}

} // namespace spikeplan
