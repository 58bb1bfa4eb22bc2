#pragma once

#include <string>

namespace spikeplan::gen {

struct Instance {
    std::string name;
    std::string domain;
    std::string problem;
};

// n discs stacked on p1, to be moved to p3.
Instance toh(int n);
// n balls in room ra to be carried to rb by one robot with two grippers.
Instance gripper(int n);
// n cars on shore l1 to be ferried one at a time to l2.
Instance ferry(int n);
// n fully connected cities, start at c0, visit all of them.
Instance tsp(int n);

// Two blocks on two table positions, goal on(a,b).
Instance blocks_example();
// Two tokens on three cells; asks for all three cells occupied at once.
Instance tokens_unsolvable();
// Unsolvable, goals pairwise reachable, regression keeps producing new sets.
Instance lights_unsolvable();

// Looks up a generator by family name ("toh", "gripper", "ferry", "tsp").
// Throws std::invalid_argument for an unknown family or a size below the minimum.
Instance by_name(const std::string &family, int n);

} // namespace spikeplan::gen
