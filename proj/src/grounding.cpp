#include "spikeplan/grounding.hpp"

#include "spikeplan/bitvector.hpp"

#include <algorithm>
#include <set>

namespace spikeplan::strips {

namespace {

Atom bind(const AtomTemplate &t, const std::vector<std::string> &args) {
    Atom a;
    a.predicate = t.predicate;
    a.args.reserve(t.args.size());
    for (const auto &term : t.args)
        a.args.push_back(term.is_variable ? args[term.param] : term.constant);
    return a;
}

void push_unique(std::vector<FactId> &v, FactId id) {
    if (std::find(v.begin(), v.end(), id) == v.end())
        v.push_back(id);
}

// Highest parameter position a template depends on, or -1 if fully constant.
int last_param(const AtomTemplate &t) {
    int last = -1;
    for (const auto &term : t.args)
        if (term.is_variable)
            last = std::max(last, static_cast<int>(term.param));
    return last;
}

class Grounder {
public:
    Grounder(const Domain &domain, const ProblemInstance &problem, const GroundOptions &options,
             GroundTask &task)
        : domain_(domain), options_(options), task_(task) {
        universe_ = domain.constants;
        for (const auto &o : problem.objects)
            if (std::none_of(universe_.begin(), universe_.end(),
                             [&](const TypedName &c) { return c.name == o.name; }))
                universe_.push_back(o);
        for (const auto &s : domain.schemas)
            for (const auto &t : s.add)
                added_predicates_.insert(t.predicate);
        for (const auto &a : problem.initial)
            initial_.insert(a);
    }

    void run() {
        for (const auto &schema : domain_.schemas)
            ground_schema(schema);
    }

private:
    bool is_static(const std::string &predicate) const {
        return !added_predicates_.count(predicate);
    }

    void ground_schema(const OperatorSchema &schema) {
        const std::size_t n = schema.params.size();
        std::vector<std::vector<std::size_t>> domains(n);
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t o = 0; o < universe_.size(); ++o)
                if (domain_.is_subtype(universe_[o].type, schema.params[p].type))
                    domains[p].push_back(o);

        // Static preconditions are checked as soon as their last parameter is bound.
        std::vector<std::vector<const AtomTemplate *>> checks(n + 1);
        for (const auto &t : schema.pre)
            if (is_static(t.predicate))
                checks[static_cast<std::size_t>(last_param(t) + 1)].push_back(&t);

        std::vector<std::string> args(n);
        if (!static_ok(checks[0], args))
            return;
        enumerate(schema, domains, checks, args, 0);
    }

    bool static_ok(const std::vector<const AtomTemplate *> &checks,
                   const std::vector<std::string> &args) const {
        for (const AtomTemplate *t : checks)
            if (!initial_.count(bind(*t, args)))
                return false;
        return true;
    }

    void enumerate(const OperatorSchema &schema,
                   const std::vector<std::vector<std::size_t>> &domains,
                   const std::vector<std::vector<const AtomTemplate *>> &checks,
                   std::vector<std::string> &args, std::size_t depth) {
        if (depth == schema.params.size()) {
            emit(schema, args);
            return;
        }
        for (std::size_t o : domains[depth]) {
            args[depth] = universe_[o].name;
            if (static_ok(checks[depth + 1], args))
                enumerate(schema, domains, checks, args, depth + 1);
        }
    }

    void emit(const OperatorSchema &schema, const std::vector<std::string> &args) {
        std::set<Atom> seen;
        for (const auto &t : schema.pre)
            if (!seen.insert(bind(t, args)).second)
                return; // two precondition roles collapsed onto one fact
        if (task_.actions.size() >= options_.max_actions)
            throw CapacityError(CapacityError::Kind::PoolCap,
                                "ground action pool exceeds cap of " +
                                    std::to_string(options_.max_actions) + " actions");
        task_.actions.push_back(instantiate(schema, args, task_.facts));
    }

    const Domain &domain_;
    const GroundOptions &options_;
    GroundTask &task_;
    std::vector<TypedName> universe_;
    std::set<std::string> added_predicates_;
    std::set<Atom> initial_;
};

} // namespace

GroundAction instantiate(const OperatorSchema &schema, const std::vector<std::string> &args,
                         FactTable &facts) {
    GroundAction a;
    a.name = schema.name;
    a.args = args;
    for (const auto &t : schema.pre)
        push_unique(a.pre, facts.intern(bind(t, args)));
    for (const auto &t : schema.add)
        push_unique(a.add, facts.intern(bind(t, args)));
    for (const auto &t : schema.del) {
        const FactId id = facts.intern(bind(t, args));
        if (std::find(a.add.begin(), a.add.end(), id) == a.add.end())
            push_unique(a.del, id);
    }
    return a;
}

GroundTask ground(const Domain &domain, const ProblemInstance &problem,
                  const GroundOptions &options) {
    GroundTask task;
    for (const auto &a : problem.initial)
        push_unique(task.initial, task.facts.intern(a));
    for (const auto &g : problem.goals)
        push_unique(task.goals, task.facts.intern(g));
    Grounder(domain, problem, options, task).run();
    return task;
}

} // namespace spikeplan::strips
