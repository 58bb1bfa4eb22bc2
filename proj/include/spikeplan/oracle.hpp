#pragma once

#include "spikeplan/strips.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

// Slow, set-based reference implementations. Nothing here uses bit vectors
// or the spike, so the results can be compared against them.
namespace spikeplan::oracle {

using strips::FactId;

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// (false, pool index) for a pool action, (true, fact) for a no-op.
using ActionKey = std::pair<bool, std::size_t>;

struct LayerAction {
    ActionKey key;
    std::set<FactId> pre, add, del;
};

using FactPair = std::pair<FactId, FactId>;     // first < second
using ActionPair = std::pair<ActionKey, ActionKey>;  // first < second

struct FactLayer {
    std::set<FactId> facts;
    std::set<FactPair> mutex;
};

struct ActionLayer {
    std::vector<LayerAction> actions;
    std::set<ActionPair> mutex;
};

// Mutex pairs of one action layer and the fact layer it produces.
struct MutexResult {
    std::set<ActionPair> actions;
    std::set<FactPair> facts;
};

MutexResult brute_mutex(const FactLayer &previous, const std::vector<LayerAction> &actions);

/*
  Layers materialised one by one. facts(r) is fact layer r; actions(r),
  r >= 1, is the action layer between fact layers r - 1 and r.
*/
class ExplicitGraph {
public:
    explicit ExplicitGraph(const strips::GroundTask &task);

    void extend();
    std::size_t newest() const { return facts_.size() - 1; }
    const FactLayer &facts(std::size_t r) const { return facts_.at(r); }
    const ActionLayer &actions(std::size_t r) const { return actions_.at(r - 1); }

    // Set once a fact layer equals its predecessor; the predecessor's index.
    std::optional<std::size_t> level_off() const { return level_off_; }

    bool goals_open(const std::set<FactId> &goals, std::size_t r) const;
    bool facts_mutex(FactId f, FactId g, std::size_t r) const;
    bool actions_mutex(const ActionKey &a, const ActionKey &b, std::size_t r) const;

private:
    const strips::GroundTask &task_;
    std::vector<FactLayer> facts_;
    std::vector<ActionLayer> actions_;
    std::optional<std::size_t> level_off_;
};

struct ExplicitResult {
    bool found = false;
    strips::Plan plan;
    std::size_t layers = 0;
    std::optional<std::size_t> opening;
    std::optional<std::size_t> level_off;
};

// Classic Graphplan with full goal-set memoization. Throws BudgetExceeded
// when more than max_layers fact layers would be needed.
ExplicitResult explicit_graphplan(const strips::GroundTask &task, std::size_t max_layers = 200);

using GoalSet = std::set<FactId>;

// Children of a goal set posed at layer n: the set-minimal precondition
// unions over all non-mutex achiever choices at action layer n.
std::set<GoalSet> goal_children(const ExplicitGraph &graph, const GoalSet &goals, std::size_t n,
                                std::size_t &budget);

// Level k - 1 of the k-level goal tree rooted at `goals` on layer n. The
// graph must already hold layer n.
std::set<GoalSet> goal_tree_leaves(const ExplicitGraph &graph, const GoalSet &goals,
                                   std::size_t k, std::size_t n, std::size_t budget = 10'000);

} // namespace spikeplan::oracle
