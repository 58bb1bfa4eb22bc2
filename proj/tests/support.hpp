#pragma once

#include "spikeplan/generators.hpp"
#include "spikeplan/grounding.hpp"
#include "spikeplan/pddl.hpp"
#include "spikeplan/strips.hpp"

#include <memory>
#include <string>

namespace testing {

struct Loaded {
    spikeplan::strips::Domain domain;
    spikeplan::strips::ProblemInstance problem;
    spikeplan::strips::GroundTask task;
};

// Heap-allocated so the task address stays put for spikes that refer to it.
inline std::unique_ptr<Loaded> load(const std::string &domain, const std::string &problem) {
    auto l = std::make_unique<Loaded>();
    l->domain = spikeplan::strips::parse_domain(domain);
    l->problem = spikeplan::strips::parse_problem(problem, l->domain);
    l->task = spikeplan::strips::ground(l->domain, l->problem);
    return l;
}

inline std::unique_ptr<Loaded> load(const spikeplan::gen::Instance &inst) {
    return load(inst.domain, inst.problem);
}

} // namespace testing
