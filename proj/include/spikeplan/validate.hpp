#pragma once

#include "spikeplan/strips.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace spikeplan::strips {

struct Violation {
    std::size_t step;
    std::string reason;
};

/*
  Simulates the plan from the initial state. A step is legal when every
  action's preconditions hold in the current state and no action deletes a
  precondition or add effect of another action in the same step. The step's
  effects are applied together: (state - dels) + adds. Returns the first
  violation, or nothing when the final state contains every goal.
*/
std::optional<Violation> validate_plan(const std::vector<FactId> &initial,
                                       const std::vector<FactId> &goals, const Plan &plan,
                                       const FactTable *names = nullptr);

inline std::optional<Violation> validate_plan(const GroundTask &task, const Plan &plan) {
    return validate_plan(task.initial, task.goals, plan, &task.facts);
}

} // namespace spikeplan::strips
