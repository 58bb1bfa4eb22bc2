#pragma once

#include "spikeplan/bitvector.hpp"
#include "spikeplan/search.hpp"
#include "spikeplan/spike.hpp"
#include "spikeplan/strips.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spikeplan {

enum class Mode { Wavefront, NoWavefront, Explicit };

const char *to_string(Mode mode);
std::optional<Mode> parse_mode(const std::string &name);

struct PlannerOptions {
    Mode mode = Mode::Wavefront;
    // Scored candidate queue instead of FIFO.
    bool heuristic = false;
    double penetration_weight = 1.0;
    double fragment_weight = 1.0;
    bool changed_acts = true;
    MemoMode memo = MemoMode::Subset;
    bool exclude_failing_goal = false;
    std::size_t max_ranks = 1000;
    std::size_t max_candidates = 1'000'000;
    std::size_t max_size = kDefaultMaxSize;
    bool dump_graph = false;
};

struct RunStats {
    std::size_t ranks = 0;  // fact ranks stored, rank 0 included
    std::optional<std::size_t> opening;
    std::optional<std::size_t> fix_point;
    std::optional<std::size_t> buffer;
    std::size_t plan_steps = 0;
    std::size_t plan_actions = 0;
    std::size_t candidates_generated = 0;
    std::size_t candidates_admitted = 0;
    std::size_t candidates_skipped = 0;
    std::size_t queue_peak = 0;
    std::size_t fragment_length = 0;
    std::map<std::size_t, std::size_t> penetration;  // penetration -> admitted candidates
    std::size_t permanent_tests = 0;
    std::size_t temporary_tests = 0;
    std::size_t retests = 0;
    std::size_t retests_avoided = 0;
    std::size_t memo_sets = 0;
    std::size_t nodes = 0;
    double time_ms = 0;
};

// A candidate goal set as it was admitted, for inspection by tests.
struct AdmittedCandidate {
    GoalSet goals;
    std::size_t generation = 0;
    std::size_t penetration = 0;
};

struct PlanResult {
    bool found = false;
    strips::Plan plan;
    RunStats stats;
    std::vector<AdmittedCandidate> candidates;  // filled when requested
    std::string graph_dump;                     // filled when dump_graph is set
};

/*
  Builds ranks until the goals open, then alternates search with extension
  until the fix point. Past the fix point the wave front takes over
  (Mode::Wavefront), or ranks keep being built explicitly until the memo
  at the first repeating layer stops changing (Mode::NoWavefront).
  Mode::Explicit is not handled here; see the oracle.
*/
PlanResult plan(const strips::GroundTask &task, const PlannerOptions &options = {},
                bool keep_candidates = false);

// Ranks up to the fix point, no search.
struct LevelAnalysis {
    std::optional<std::size_t> opening;
    std::size_t fix_point = 0;
    std::size_t buffer = 0;
    std::size_t ranks = 0;
};
LevelAnalysis analyze_levels(const strips::GroundTask &task, const PlannerOptions &options = {});

// Converts per-layer spike action indices into a plan, dropping no-ops.
strips::Plan extract_plan(const Spike &spike, const std::vector<std::vector<std::size_t>> &steps);

} // namespace spikeplan
