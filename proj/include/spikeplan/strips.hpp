#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace spikeplan::strips {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &msg, std::size_t line, std::size_t column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Semantic problems with an otherwise well-formed file (unknown symbols, arity).
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Atom {
    std::string predicate;
    std::vector<std::string> args;

    friend bool operator==(const Atom &, const Atom &) = default;
    friend auto operator<=>(const Atom &, const Atom &) = default;
};

std::string to_string(const Atom &atom);

struct TypedName {
    std::string name;
    std::string type = "object";

    friend bool operator==(const TypedName &, const TypedName &) = default;
};

struct PredicateDecl {
    std::string name;
    std::vector<TypedName> params;

    std::size_t arity() const { return params.size(); }
    friend bool operator==(const PredicateDecl &, const PredicateDecl &) = default;
};

// An argument of an atom template: a schema parameter (by position) or a constant.
struct Term {
    bool is_variable = false;
    std::size_t param = 0;
    std::string constant;

    friend bool operator==(const Term &, const Term &) = default;
};

struct AtomTemplate {
    std::string predicate;
    std::vector<Term> args;

    friend bool operator==(const AtomTemplate &, const AtomTemplate &) = default;
};

struct OperatorSchema {
    std::string name;
    std::vector<TypedName> params;
    std::vector<AtomTemplate> pre;
    std::vector<AtomTemplate> add;
    std::vector<AtomTemplate> del;

    friend bool operator==(const OperatorSchema &, const OperatorSchema &) = default;
};

struct Domain {
    std::string name;
    std::vector<std::string> requirements;
    // type -> parent type; "object" is the implicit root.
    std::vector<TypedName> types;
    std::vector<TypedName> constants;
    std::vector<PredicateDecl> predicates;
    std::vector<OperatorSchema> schemas;

    const PredicateDecl *find_predicate(const std::string &name) const;
    bool is_subtype(const std::string &type, const std::string &ancestor) const;

    friend bool operator==(const Domain &, const Domain &) = default;
};

struct ProblemInstance {
    std::string name;
    std::string domain_name;
    std::vector<TypedName> objects;
    std::vector<Atom> initial;
    std::vector<Atom> goals;

    friend bool operator==(const ProblemInstance &, const ProblemInstance &) = default;
};

using FactId = std::uint32_t;

class FactTable {
public:
    FactId intern(const Atom &atom);
    std::optional<FactId> find(const Atom &atom) const;
    const Atom &atom(FactId id) const { return atoms_.at(id); }
    std::size_t size() const { return atoms_.size(); }

private:
    std::vector<Atom> atoms_;
    std::map<Atom, FactId> index_;
};

struct GroundAction {
    std::string name;
    std::vector<std::string> args;
    std::vector<FactId> pre;
    std::vector<FactId> add;
    std::vector<FactId> del;

    friend bool operator==(const GroundAction &, const GroundAction &) = default;
};

std::string to_string(const GroundAction &action);

// A grounded instance: the fact table plus the ground action pool.
struct GroundTask {
    FactTable facts;
    std::vector<GroundAction> actions;
    std::vector<FactId> initial;
    std::vector<FactId> goals;
};

// One time step per entry; each step is a set of ground actions.
struct Plan {
    std::vector<std::vector<GroundAction>> steps;

    std::size_t step_count() const { return steps.size(); }
    std::size_t action_count() const;
};

} // namespace spikeplan::strips
