#include "spikeplan/validate.hpp"

#include <algorithm>
#include <set>

namespace spikeplan::strips {

namespace {

bool contains(const std::vector<FactId> &v, FactId f) {
    return std::find(v.begin(), v.end(), f) != v.end();
}

std::string fact_name(FactId f, const FactTable *names) {
    if (names && f < names->size())
        return to_string(names->atom(f));
    return "#" + std::to_string(f);
}

// First fact of `facts` that `deleter` deletes, if any.
const FactId *deleted_by(const std::vector<FactId> &facts, const GroundAction &deleter) {
    for (const FactId &f : facts)
        if (contains(deleter.del, f))
            return &f;
    return nullptr;
}

} // namespace

std::optional<Violation> validate_plan(const std::vector<FactId> &initial,
                                       const std::vector<FactId> &goals, const Plan &plan,
                                       const FactTable *names) {
    std::set<FactId> state(initial.begin(), initial.end());
    for (std::size_t k = 0; k < plan.steps.size(); ++k) {
        const auto &step = plan.steps[k];
        for (const auto &a : step)
            for (FactId p : a.pre)
                if (!state.count(p))
                    return Violation{k, to_string(a) + " needs " + fact_name(p, names) +
                                            " which does not hold"};
        for (std::size_t i = 0; i < step.size(); ++i)
            for (std::size_t j = 0; j < step.size(); ++j) {
                if (i == j)
                    continue;
                const auto &a = step[i];
                const auto &b = step[j];
                if (const FactId *f = deleted_by(a.pre, b))
                    return Violation{k, to_string(b) + " deletes " + fact_name(*f, names) +
                                            ", a precondition of " + to_string(a)};
                if (const FactId *f = deleted_by(a.add, b))
                    return Violation{k, to_string(b) + " deletes " + fact_name(*f, names) +
                                            ", an add effect of " + to_string(a)};
            }
        for (const auto &a : step)
            for (FactId d : a.del)
                state.erase(d);
        for (const auto &a : step)
            for (FactId f : a.add)
                state.insert(f);
    }
    for (FactId g : goals)
        if (!state.count(g))
            return Violation{plan.steps.size(), "goal " + fact_name(g, names) +
                                                    " does not hold after the last step"};
    return std::nullopt;
}

} // namespace spikeplan::strips
