#pragma once

#include "spikeplan/bitvector.hpp"
#include "spikeplan/memo.hpp"
#include "spikeplan/spike.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace spikeplan {

// Ascending fact indices.
using GoalSet = std::vector<std::uint32_t>;

enum class MemoMode { Subset, Full };

struct SearchOptions {
    MemoMode memo = MemoMode::Subset;
    // Subset mode only: leave the goal that could not be achieved out of the
    // memoized prefix. Can record a satisfiable set; off by default.
    bool exclude_failing_goal = false;
    // Layers at or above this one always memoize the full goal set.
    std::size_t full_from_layer = std::numeric_limits<std::size_t>::max();
    // Layers above this one are neither looked up nor memoized.
    std::size_t memo_ceiling = std::numeric_limits<std::size_t>::max();
};

struct SearchStats {
    std::size_t nodes = 0;
    std::size_t memo_hits = 0;
    std::size_t memo_inserts = 0;
};

// A goal set first posed at the collection layer during a failed search.
struct ChildSet {
    GoalSet goals;
    std::vector<std::size_t> step;  // actions chosen one layer above
    std::size_t lowest_layer = 0;   // deepest layer its own search reached
};

struct SearchResult {
    bool found = false;
    // steps[k] holds the actions chosen at action layer k + 1, no-ops included.
    std::vector<std::vector<std::size_t>> steps;
    std::vector<ChildSet> children;
    std::size_t lowest_layer = 0;
};

GoalSet goal_set(const Spike &spike, const std::vector<strips::FactId> &facts);

/*
  Backward regression over a finished prefix of the spike. Goals are taken
  in ascending index order; each uncovered goal tries its no-op first and
  then the other achievers in ascending index, skipping any action mutex
  with one already chosen at the layer.
*/
class Searcher {
public:
    Searcher(const Spike &spike, MemoStore &memo, SearchOptions options = {});

    SearchResult search(const GoalSet &goals, std::size_t layer,
                        std::optional<std::size_t> collect_at = std::nullopt);

    const SearchStats &stats() const { return stats_; }
    void set_options(const SearchOptions &options) { options_ = options; }
    const SearchOptions &options() const { return options_; }

private:
    struct Frame {
        GoalSet goals;
        std::vector<std::size_t> chosen;
        std::vector<SpikeVector> mutex;  // per goal depth
        std::vector<SpikeVector> adds;
        std::vector<SpikeVector> precs;
        std::size_t max_index = 0;
        bool reached_full = false;
    };

    bool solve(std::size_t layer);
    bool assign(std::size_t layer, std::size_t i, std::size_t depth);
    void memoize(std::size_t layer);
    bool memo_active(std::size_t layer) const { return layer <= options_.memo_ceiling; }

    const Spike &spike_;
    MemoStore &memo_;
    SearchOptions options_;
    SearchStats stats_;

    std::vector<Frame> frames_;
    std::optional<std::size_t> collect_at_;
    SetTrie collected_;
    std::vector<ChildSet> children_;
    std::size_t lowest_ = 0;
};

} // namespace spikeplan
