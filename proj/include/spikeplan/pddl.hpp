#pragma once

#include "spikeplan/strips.hpp"

#include <string>
#include <string_view>

namespace spikeplan::strips {

// STRIPS subset with optional :typing. Symbols are case-folded to lower case.
Domain parse_domain(std::string_view text);
ProblemInstance parse_problem(std::string_view text, const Domain &domain);

std::string print_domain(const Domain &domain);
std::string print_problem(const ProblemInstance &problem);

// `step <k>: (<name> <arg> ...)`, one line per action.
std::string format_plan(const Plan &plan);

// Inverse of format_plan. Each action is instantiated from its schema.
Plan parse_plan(std::string_view text, const Domain &domain, const ProblemInstance &problem,
                FactTable &facts);

std::string read_file(const std::string &path);

} // namespace spikeplan::strips
