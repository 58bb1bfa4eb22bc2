#pragma once

#include "spikeplan/bitvector.hpp"
#include "spikeplan/strips.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spikeplan {

struct SpikeOptions {
    std::size_t max_size = kDefaultMaxSize;
    // Retest a temporary action mutex only when a precondition of either
    // action lost a fact mutex at the previous rank.
    bool changed_acts = true;
};

// Layer-dependent fact data for one rank.
struct FactLevel {
    SpikeVector mutex;      // over fact indices
    SpikeVector achievers;  // over action indices
};

// Layer-dependent action data for one rank.
struct ActionLevel {
    SpikeVector mutex;  // over action indices
    std::vector<std::size_t> mutex_list;
};

struct FactHeader {
    strips::FactId name = 0;
    std::size_t index = 0;
    SpikeVector bit_mask;
    std::optional<std::size_t> achieving_noop;
    SpikeVector consumers;
    std::size_t first_rank = 0;
    std::vector<FactLevel> levels;  // levels[r - first_rank]
};

struct ActionHeader {
    std::optional<std::size_t> pool_index;  // absent for no-ops
    std::size_t index = 0;
    SpikeVector bit_mask;
    bool is_noop = false;
    SpikeVector precs;
    SpikeVector adds;
    SpikeVector dels;
    std::vector<std::size_t> prec_list;
    std::vector<std::size_t> add_list;
    std::size_t first_rank = 0;
    std::vector<ActionLevel> levels;  // levels[r - first_rank]
};

struct RankSummary {
    std::size_t rank = 0;
    std::size_t new_facts = 0;
    std::size_t new_noops = 0;
    std::size_t new_actions = 0;  // including no-ops
    std::size_t permanent_pairs = 0;
    std::size_t temporary_pairs = 0;
    std::size_t fact_mutex_pairs = 0;
    bool fix_point = false;
};

struct SpikeCounters {
    std::size_t permanent_tests = 0;
    std::size_t temporary_tests = 0;
    std::size_t retests = 0;
    std::size_t retests_avoided = 0;
    std::size_t fact_tests = 0;
};

/*
  The plan graph as two growing arrays. Fact rank r is the prefix
  [0, fact_end(r)) of the fact array; action rank r (r >= 1) is the prefix
  [0, action_end(r)) of the action array. Headers never move once placed.

  The fix point is the last rank whose successor added no facts and changed
  no fact mutex. Once it is found, the newest rank (fix point + 1) is the
  buffer: every further rank would be an exact copy of it.
*/
class Spike {
public:
    Spike(const strips::GroundTask &task, SpikeOptions options = {});

    // Builds the next action rank and fact rank. After the fix point has been
    // found this throws unless `past_fix_point` is set.
    RankSummary extend_rank(bool past_fix_point = false);

    std::size_t newest_rank() const { return fact_ends_.size() - 1; }
    std::size_t fact_end(std::size_t rank) const { return fact_ends_.at(rank); }
    std::size_t action_end(std::size_t rank) const { return action_ends_.at(rank); }
    std::size_t fact_count() const { return facts_.size(); }
    std::size_t action_count() const { return actions_.size(); }
    std::size_t pending_count() const { return pending_.size(); }
    // Bit capacities of vectors over facts and over actions.
    std::size_t fact_capacity() const { return fact_capacity_; }
    std::size_t action_capacity() const { return action_capacity_; }

    std::optional<std::size_t> fix_point() const { return fix_point_; }
    std::optional<std::size_t> buffer() const {
        return fix_point_ ? std::optional<std::size_t>(*fix_point_ + 1) : std::nullopt;
    }

    const FactHeader &fact(std::size_t i) const { return facts_.at(i); }
    const ActionHeader &action(std::size_t i) const { return actions_.at(i); }
    std::optional<std::size_t> fact_index(strips::FactId id) const;
    const strips::GroundTask &task() const { return task_; }

    const SpikeVector &fmv(std::size_t fact, std::size_t rank) const;
    const SpikeVector &achievers(std::size_t fact, std::size_t rank) const;
    const SpikeVector &amv(std::size_t action, std::size_t rank) const;
    const std::vector<std::size_t> &mutex_list(std::size_t action, std::size_t rank) const;
    const SpikeVector &permanent_mutexes(std::size_t action) const { return permanent_.at(action); }

    bool facts_mutex(std::size_t f, std::size_t g, std::size_t rank) const;
    bool actions_mutex(std::size_t a, std::size_t b, std::size_t rank) const;

    // Pair tests evaluated directly on the vectors.
    bool self_mutex(std::span<const std::size_t> precs, std::size_t fact_rank) const;
    bool self_mutex(std::size_t action, std::size_t fact_rank) const;
    bool perm_mutex(std::size_t a, std::size_t b) const;
    bool temp_mutex(std::size_t a, std::size_t b, std::size_t fact_rank) const;
    bool fact_mutex(std::size_t f, std::size_t g, std::size_t rank) const;

    bool goals_open(std::span<const strips::FactId> goals) const;
    bool goals_open(std::span<const strips::FactId> goals, std::size_t rank) const;

    const SpikeVector &changed_acts() const { return changed_acts_; }
    const std::vector<std::pair<std::size_t, std::size_t>> &temporary_pairs() const {
        return temporary_pairs_;
    }
    const SpikeCounters &counters() const { return counters_; }
    const std::vector<RankSummary> &summaries() const { return summaries_; }

    std::size_t fact_mutex_pairs(std::size_t rank) const;
    std::size_t action_mutex_pairs(std::size_t rank) const;

    std::string action_name(std::size_t action) const;
    std::string fact_name(std::size_t fact) const;
    std::string dump() const;

private:
    std::size_t add_fact(strips::FactId id, std::size_t rank);
    std::size_t add_noop(std::size_t fact, std::size_t rank);
    std::size_t enact(std::size_t pool_index, std::size_t rank);
    void build_action_mutexes(std::size_t rank, std::size_t first_new);
    void build_achievers(std::size_t rank, std::size_t first_new_action);
    bool build_fact_mutexes(std::size_t rank);
    SpikeVector precondition_mutexes(std::size_t action, std::size_t fact_rank) const;
    void set_action_pair(std::size_t a, std::size_t b, std::size_t rank);

    const strips::GroundTask &task_;
    SpikeOptions options_;
    std::size_t fact_capacity_;
    std::size_t action_capacity_;

    std::vector<FactHeader> facts_;
    std::vector<ActionHeader> actions_;
    std::vector<std::size_t> fact_ends_;    // per rank
    std::vector<std::size_t> action_ends_;  // per rank, action_ends_[0] == 0

    std::vector<long> fact_of_id_;  // FactId -> spike index or -1
    std::vector<std::vector<std::size_t>> waiting_deleters_;  // FactId -> actions
    std::vector<std::size_t> pending_;

    std::vector<SpikeVector> permanent_;
    std::vector<std::pair<std::size_t, std::size_t>> temporary_pairs_;
    std::vector<std::size_t> permanent_pair_count_;  // per rank
    std::vector<std::size_t> fact_pair_count_;       // per rank
    SpikeVector changed_acts_;

    std::optional<std::size_t> fix_point_;
    SpikeCounters counters_;
    std::vector<RankSummary> summaries_;
};

} // namespace spikeplan
