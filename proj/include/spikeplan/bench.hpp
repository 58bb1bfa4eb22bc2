#pragma once

#include "spikeplan/generators.hpp"
#include "spikeplan/planner.hpp"
#include "spikeplan/strips.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace spikeplan::bench {

// Runs any mode, the explicit one through the reference planner.
PlanResult solve(const strips::GroundTask &task, const PlannerOptions &options);

struct Row {
    std::string problem;
    Mode mode = Mode::Wavefront;
    // "ok", "noplan", or the error text of a failed run.
    std::string status = "ok";
    RunStats stats;
};

Row run(const std::string &name, const std::string &domain_text,
        const std::string &problem_text, const PlannerOptions &options);

const std::string &csv_header();
std::string csv_row(const Row &row);

struct SuiteEntry {
    std::string family;
    std::vector<int> sizes;
    std::vector<Mode> modes;
    int repetitions = 1;
};

/*
  {"runs": [{"family": "toh", "sizes": [3, 4], "modes": ["wavefront"],
             "repetitions": 1}]}
  "sizes" may instead be given as "from"/"to". Throws std::invalid_argument
  on a malformed suite.
*/
std::vector<SuiteEntry> parse_suite(const std::string &json_text);

// Writes the header and one row per run; a failing run does not stop the suite.
std::vector<Row> run_suite(const std::vector<SuiteEntry> &suite, const PlannerOptions &base,
                           std::ostream &csv);

} // namespace spikeplan::bench
