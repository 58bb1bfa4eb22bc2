#include "spikeplan/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace spikeplan::oracle {

namespace {

FactPair ordered(FactId a, FactId b) { return a < b ? FactPair{a, b} : FactPair{b, a}; }

ActionPair ordered(const ActionKey &a, const ActionKey &b) {
    return a < b ? ActionPair{a, b} : ActionPair{b, a};
}

bool meets(const std::set<FactId> &x, const std::set<FactId> &y) {
    for (FactId f : x)
        if (y.count(f))
            return true;
    return false;
}

bool interferes(const LayerAction &a, const LayerAction &b, const FactLayer &previous) {
    if (meets(a.del, b.pre) || meets(a.del, b.add) || meets(b.del, a.pre) || meets(b.del, a.add))
        return true;
    for (FactId p : a.pre)
        for (FactId q : b.pre)
            if (p != q && previous.mutex.count(ordered(p, q)))
                return true;
    return false;
}

} // namespace

MutexResult brute_mutex(const FactLayer &previous, const std::vector<LayerAction> &actions) {
    MutexResult r;
    for (std::size_t i = 0; i < actions.size(); ++i)
        for (std::size_t j = i + 1; j < actions.size(); ++j)
            if (interferes(actions[i], actions[j], previous))
                r.actions.insert(ordered(actions[i].key, actions[j].key));

    std::map<FactId, std::vector<const LayerAction *>> achievers;
    for (const auto &a : actions)
        for (FactId f : a.add)
            achievers[f].push_back(&a);
    for (auto fi = achievers.begin(); fi != achievers.end(); ++fi)
        for (auto gi = std::next(fi); gi != achievers.end(); ++gi) {
            bool all = true;
            for (const LayerAction *a : fi->second) {
                for (const LayerAction *b : gi->second)
                    if (a == b || !r.actions.count(ordered(a->key, b->key))) {
                        all = false;
                        break;
                    }
                if (!all)
                    break;
            }
            if (all)
                r.facts.insert(ordered(fi->first, gi->first));
        }
    return r;
}

ExplicitGraph::ExplicitGraph(const strips::GroundTask &task) : task_(task) {
    FactLayer zero;
    zero.facts.insert(task.initial.begin(), task.initial.end());
    facts_.push_back(std::move(zero));
}

void ExplicitGraph::extend() {
    const FactLayer &prev = facts_.back();
    ActionLayer layer;
    for (FactId f : prev.facts)
        layer.actions.push_back({{true, f}, {f}, {f}, {}});
    for (std::size_t i = 0; i < task_.actions.size(); ++i) {
        const auto &ga = task_.actions[i];
        std::set<FactId> pre(ga.pre.begin(), ga.pre.end());
        bool ok = std::all_of(pre.begin(), pre.end(), [&](FactId p) { return prev.facts.count(p); });
        for (auto p = pre.begin(); ok && p != pre.end(); ++p)
            for (auto q = std::next(p); q != pre.end(); ++q)
                if (prev.mutex.count(ordered(*p, *q))) {
                    ok = false;
                    break;
                }
        if (ok)
            layer.actions.push_back({{false, i},
                                     pre,
                                     std::set<FactId>(ga.add.begin(), ga.add.end()),
                                     std::set<FactId>(ga.del.begin(), ga.del.end())});
    }
    MutexResult m = brute_mutex(prev, layer.actions);
    layer.mutex = std::move(m.actions);

    FactLayer next;
    for (const auto &a : layer.actions)
        next.facts.insert(a.add.begin(), a.add.end());
    next.mutex = std::move(m.facts);

    if (!level_off_ && next.facts == prev.facts && next.mutex == prev.mutex)
        level_off_ = facts_.size() - 1;
    actions_.push_back(std::move(layer));
    facts_.push_back(std::move(next));
}

bool ExplicitGraph::goals_open(const std::set<FactId> &goals, std::size_t r) const {
    const FactLayer &l = facts_.at(r);
    for (FactId g : goals)
        if (!l.facts.count(g))
            return false;
    for (auto p = goals.begin(); p != goals.end(); ++p)
        for (auto q = std::next(p); q != goals.end(); ++q)
            if (l.mutex.count(ordered(*p, *q)))
                return false;
    return true;
}

bool ExplicitGraph::facts_mutex(FactId f, FactId g, std::size_t r) const {
    return facts_.at(r).mutex.count(ordered(f, g)) > 0;
}

bool ExplicitGraph::actions_mutex(const ActionKey &a, const ActionKey &b, std::size_t r) const {
    return actions(r).mutex.count(ordered(a, b)) > 0;
}

namespace {

class GraphplanSearch {
public:
    GraphplanSearch(const ExplicitGraph &graph) : graph_(graph) {}

    // On success, chosen[r - 1] holds the actions picked at action layer r.
    bool solve(const GoalSet &goals, std::size_t layer) {
        if (layer == 0)
            return true;
        if (memo_.size() <= layer)
            memo_.resize(layer + 1);
        if (memo_[layer].count(goals))
            return false;
        if (chosen_.size() < layer)
            chosen_.resize(layer);
        std::vector<FactId> list(goals.begin(), goals.end());
        std::vector<const LayerAction *> picked;
        if (assign(list, 0, layer, picked))
            return true;
        memo_[layer].insert(goals);
        return false;
    }

    std::size_t memo_count(std::size_t layer) const {
        return layer < memo_.size() ? memo_[layer].size() : 0;
    }

    const std::vector<std::vector<const LayerAction *>> &chosen() const { return chosen_; }

private:
    bool assign(const std::vector<FactId> &goals, std::size_t i, std::size_t layer,
                std::vector<const LayerAction *> &picked) {
        if (i == goals.size()) {
            GoalSet sub;
            for (const LayerAction *a : picked)
                sub.insert(a->pre.begin(), a->pre.end());
            if (!solve(sub, layer - 1))
                return false;
            chosen_[layer - 1] = picked;
            return true;
        }
        const FactId g = goals[i];
        for (const LayerAction *a : picked)
            if (a->add.count(g))
                return assign(goals, i + 1, layer, picked);
        const ActionLayer &al = graph_.actions(layer);
        auto compatible = [&](const LayerAction &a) {
            for (const LayerAction *b : picked)
                if (al.mutex.count(ordered(a.key, b->key)))
                    return false;
            return true;
        };
        // No-op first, then the rest in pool order.
        std::vector<const LayerAction *> options;
        for (const auto &a : al.actions)
            if (a.key.first && a.key.second == g)
                options.push_back(&a);
        for (const auto &a : al.actions)
            if (!a.key.first && a.add.count(g))
                options.push_back(&a);
        for (const LayerAction *a : options) {
            if (!compatible(*a))
                continue;
            picked.push_back(a);
            if (assign(goals, i + 1, layer, picked))
                return true;
            picked.pop_back();
        }
        return false;
    }

    const ExplicitGraph &graph_;
    std::vector<std::set<GoalSet>> memo_;
    std::vector<std::vector<const LayerAction *>> chosen_;
};

} // namespace

ExplicitResult explicit_graphplan(const strips::GroundTask &task, std::size_t max_layers) {
    ExplicitGraph graph(task);
    GraphplanSearch search(graph);
    const GoalSet goals(task.goals.begin(), task.goals.end());
    ExplicitResult result;

    auto succeed = [&](std::size_t layer) {
        result.found = true;
        for (std::size_t r = 1; r <= layer; ++r) {
            auto &step = result.plan.steps.emplace_back();
            std::vector<std::size_t> pool;
            for (const LayerAction *a : search.chosen()[r - 1])
                if (!a->key.first)
                    pool.push_back(a->key.second);
            std::sort(pool.begin(), pool.end());
            for (std::size_t p : pool)
                step.push_back(task.actions[p]);
        }
    };

    std::optional<std::size_t> repeat_from;  // first layer whose search repeats forever
    std::size_t previous_count = 0;
    while (true) {
        const std::size_t r = graph.newest();
        if (graph.goals_open(goals, r)) {
            if (!result.opening)
                result.opening = r;
            if (search.solve(goals, r)) {
                succeed(r);
                break;
            }
            if (repeat_from && r > *repeat_from &&
                search.memo_count(*repeat_from) == previous_count)
                break;
        } else if (graph.level_off()) {
            break; // the goals can never open
        }
        if (repeat_from)
            previous_count = search.memo_count(*repeat_from);
        if (r + 1 >= max_layers)
            throw BudgetExceeded("explicit planner needs more than " +
                                 std::to_string(max_layers) + " layers");
        graph.extend();
        if (!repeat_from && graph.level_off())
            repeat_from = *graph.level_off() + 1;
    }
    result.layers = graph.newest() + 1;
    result.level_off = graph.level_off();
    return result;
}

std::set<GoalSet> goal_children(const ExplicitGraph &graph, const GoalSet &goals, std::size_t n,
                                std::size_t &budget) {
    const ActionLayer &al = graph.actions(n);
    std::vector<FactId> list(goals.begin(), goals.end());
    std::set<GoalSet> found;
    std::vector<const LayerAction *> picked;

    std::function<void(std::size_t)> choose = [&](std::size_t i) {
        if (budget == 0)
            throw BudgetExceeded("goal tree node budget exhausted");
        --budget;
        if (i == list.size()) {
            GoalSet sub;
            for (const LayerAction *a : picked)
                sub.insert(a->pre.begin(), a->pre.end());
            found.insert(std::move(sub));
            return;
        }
        for (const auto &a : al.actions) {
            if (!a.add.count(list[i]))
                continue;
            bool ok = true;
            for (const LayerAction *b : picked)
                if (b != &a && al.mutex.count(ordered(a.key, b->key))) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            picked.push_back(&a);
            choose(i + 1);
            picked.pop_back();
        }
    };
    choose(0);

    std::set<GoalSet> minimal;
    for (const auto &s : found) {
        bool has_subset = false;
        for (const auto &t : found)
            if (t != s && std::includes(s.begin(), s.end(), t.begin(), t.end())) {
                has_subset = true;
                break;
            }
        if (!has_subset)
            minimal.insert(s);
    }
    return minimal;
}

std::set<GoalSet> goal_tree_leaves(const ExplicitGraph &graph, const GoalSet &goals,
                                   std::size_t k, std::size_t n, std::size_t budget) {
    if (k == 0)
        throw std::invalid_argument("goal tree depth must be at least 1");
    if (k > n + 1)
        throw std::invalid_argument("goal tree deeper than the graph");
    std::set<GoalSet> level = {goals};
    for (std::size_t depth = 1; depth < k; ++depth) {
        std::set<GoalSet> next;
        const std::size_t layer = n - depth + 1;
        for (const auto &g : level)
            for (auto &c : goal_children(graph, g, layer, budget))
                next.insert(c);
        level = std::move(next);
    }
    return level;
}

} // namespace spikeplan::oracle
