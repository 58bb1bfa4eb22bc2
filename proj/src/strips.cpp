#include "spikeplan/strips.hpp"

#include <algorithm>

namespace spikeplan::strips {

std::string to_string(const Atom &atom) {
    std::string s = "(" + atom.predicate;
    for (const auto &a : atom.args)
        s += " " + a;
    return s + ")";
}

std::string to_string(const GroundAction &action) {
    std::string s = "(" + action.name;
    for (const auto &a : action.args)
        s += " " + a;
    return s + ")";
}

const PredicateDecl *Domain::find_predicate(const std::string &name) const {
    auto it = std::find_if(predicates.begin(), predicates.end(),
                           [&](const PredicateDecl &p) { return p.name == name; });
    return it == predicates.end() ? nullptr : &*it;
}

bool Domain::is_subtype(const std::string &type, const std::string &ancestor) const {
    if (ancestor == "object")
        return true;
    std::string current = type;
    // Bounded walk; a cyclic hierarchy simply fails the test.
    for (std::size_t guard = 0; guard <= types.size(); ++guard) {
        if (current == ancestor)
            return true;
        auto it = std::find_if(types.begin(), types.end(),
                               [&](const TypedName &t) { return t.name == current; });
        if (it == types.end())
            return false;
        current = it->type;
    }
    return false;
}

FactId FactTable::intern(const Atom &atom) {
    auto [it, inserted] = index_.try_emplace(atom, static_cast<FactId>(atoms_.size()));
    if (inserted)
        atoms_.push_back(atom);
    return it->second;
}

std::optional<FactId> FactTable::find(const Atom &atom) const {
    auto it = index_.find(atom);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::size_t Plan::action_count() const {
    std::size_t n = 0;
    for (const auto &s : steps)
        n += s.size();
    return n;
}

} // namespace spikeplan::strips
