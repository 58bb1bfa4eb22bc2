#pragma once

#include "spikeplan/strips.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace spikeplan::strips {

struct GroundOptions {
    std::size_t max_actions = 1'000'000;
};

/*
  Instantiates every schema over every type-compatible binding of objects and
  constants. Bindings are enumerated schema by schema in declaration order,
  arguments in object-declaration order (an odometer over the parameters).

  Two kinds of instance are dropped because they can never be useful:
    - a precondition on a predicate that no schema adds, absent from the
      initial state (it can never become true);
    - two distinct precondition templates that collapse onto the same fact
      under the binding (the instance binds two roles to one object).

  Within each instance add/del/pre are duplicate-free; a fact both added and
  deleted is kept in add only.
*/
GroundTask ground(const Domain &domain, const ProblemInstance &problem,
                  const GroundOptions &options = {});

// Builds the ground action for one binding, without any filtering.
GroundAction instantiate(const OperatorSchema &schema, const std::vector<std::string> &args,
                         FactTable &facts);

} // namespace spikeplan::strips
