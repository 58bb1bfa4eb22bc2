#include "spikeplan/pddl.hpp"

#include "spikeplan/grounding.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace spikeplan::strips {

namespace {

struct SExpr {
    bool is_list = false;
    std::string token;
    std::vector<SExpr> items;
    std::size_t line = 1;
    std::size_t column = 1;

    bool is_token(std::string_view t) const { return !is_list && token == t; }
};

[[noreturn]] void fail(const SExpr &at, const std::string &msg) {
    throw ParseError(msg, at.line, at.column);
}

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    SExpr read_top() {
        skip_space();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of input", line_, column_);
        SExpr e = read();
        skip_space();
        if (pos_ < text_.size())
            throw ParseError("trailing input after top-level expression", line_, column_);
        return e;
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    SExpr read() {
        SExpr e;
        e.line = line_;
        e.column = column_;
        const char c = text_[pos_];
        if (c == ')')
            throw ParseError("unexpected ')'", line_, column_);
        if (c == '(') {
            e.is_list = true;
            advance();
            for (;;) {
                skip_space();
                if (pos_ >= text_.size())
                    throw ParseError("unterminated list opened here", e.line, e.column);
                if (text_[pos_] == ')') {
                    advance();
                    break;
                }
                e.items.push_back(read());
            }
            return e;
        }
        while (pos_ < text_.size()) {
            const char d = text_[pos_];
            if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d)))
                break;
            e.token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(d))));
            advance();
        }
        return e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

const SExpr &expect_list(const SExpr &e, const std::string &what) {
    if (!e.is_list)
        fail(e, "expected " + what);
    return e;
}

const std::string &expect_token(const SExpr &e, const std::string &what) {
    if (e.is_list || e.token.empty())
        fail(e, "expected " + what);
    return e.token;
}

// name1 name2 - type name3 - type2 ...
std::vector<TypedName> parse_typed_list(const std::vector<SExpr> &items, std::size_t from) {
    std::vector<TypedName> out;
    std::size_t pending = out.size();
    for (std::size_t i = from; i < items.size(); ++i) {
        const SExpr &e = items[i];
        if (e.is_token("-")) {
            if (i + 1 >= items.size())
                fail(e, "missing type after '-'");
            const SExpr &t = items[i + 1];
            if (t.is_list)
                fail(t, "unsupported type expression (either)");
            for (std::size_t k = pending; k < out.size(); ++k)
                out[k].type = t.token;
            pending = out.size();
            ++i;
            continue;
        }
        out.push_back({expect_token(e, "name"), "object"});
    }
    return out;
}

const std::set<std::string> kSupportedRequirements = {":strips", ":typing"};

const std::set<std::string> kUnsupportedConnectives = {
    "or", "imply", "exists", "forall", "when", "=", "increase", "decrease",
    "assign", "scale-up", "scale-down", "either", "preference"};

class DomainBuilder {
public:
    Domain build(const SExpr &root) {
        expect_list(root, "(define ...)");
        if (root.items.empty() || !root.items[0].is_token("define"))
            fail(root, "expected (define ...)");
        if (root.items.size() < 2)
            fail(root, "missing (domain <name>)");
        const SExpr &head = expect_list(root.items[1], "(domain <name>)");
        if (head.items.size() != 2 || !head.items[0].is_token("domain"))
            fail(head, "expected (domain <name>)");
        domain_.name = expect_token(head.items[1], "domain name");

        std::vector<const SExpr *> actions;
        for (std::size_t i = 2; i < root.items.size(); ++i) {
            const SExpr &section = expect_list(root.items[i], "domain section");
            if (section.items.empty())
                fail(section, "empty domain section");
            const std::string &key = expect_token(section.items[0], "section keyword");
            if (key == ":requirements") {
                for (std::size_t k = 1; k < section.items.size(); ++k) {
                    const std::string &req = expect_token(section.items[k], "requirement flag");
                    if (!kSupportedRequirements.count(req))
                        fail(section.items[k], "unsupported requirement " + req);
                    domain_.requirements.push_back(req);
                }
            } else if (key == ":types") {
                domain_.types = parse_typed_list(section.items, 1);
            } else if (key == ":constants") {
                domain_.constants = parse_typed_list(section.items, 1);
            } else if (key == ":predicates") {
                for (std::size_t k = 1; k < section.items.size(); ++k) {
                    const SExpr &p = expect_list(section.items[k], "predicate declaration");
                    if (p.items.empty())
                        fail(p, "empty predicate declaration");
                    PredicateDecl decl;
                    decl.name = expect_token(p.items[0], "predicate name");
                    decl.params = parse_typed_list(p.items, 1);
                    if (domain_.find_predicate(decl.name))
                        fail(p, "duplicate predicate " + decl.name);
                    domain_.predicates.push_back(std::move(decl));
                }
            } else if (key == ":action") {
                actions.push_back(&section);
            } else {
                fail(section.items[0], "unsupported domain section " + key);
            }
        }
        check_types();
        for (const SExpr *a : actions)
            domain_.schemas.push_back(parse_action(*a));
        return std::move(domain_);
    }

private:
    void check_types() {
        for (const auto &t : domain_.types)
            check_type_known(t.type, t.name);
        for (const auto &c : domain_.constants)
            check_type_known(c.type, c.name);
        for (const auto &p : domain_.predicates)
            for (const auto &param : p.params)
                check_type_known(param.type, p.name);
    }

    void check_type_known(const std::string &type, const std::string &user) const {
        if (type == "object")
            return;
        for (const auto &t : domain_.types)
            if (t.name == type)
                return;
        throw ModelError("undeclared type " + type + " used by " + user);
    }

    OperatorSchema parse_action(const SExpr &section) {
        OperatorSchema schema;
        if (section.items.size() < 2)
            fail(section, "missing action name");
        schema.name = expect_token(section.items[1], "action name");
        bool have_params = false;
        const SExpr *pre = nullptr;
        const SExpr *eff = nullptr;
        for (std::size_t i = 2; i < section.items.size(); i += 2) {
            const std::string &key = expect_token(section.items[i], "action keyword");
            if (i + 1 >= section.items.size())
                fail(section.items[i], "missing value for " + key);
            const SExpr &value = section.items[i + 1];
            if (key == ":parameters") {
                expect_list(value, "parameter list");
                schema.params = parse_typed_list(value.items, 0);
                for (const auto &p : schema.params) {
                    if (p.name.empty() || p.name[0] != '?')
                        fail(value, "parameter " + p.name + " must start with '?'");
                    check_type_known(p.type, schema.name);
                }
                have_params = true;
            } else if (key == ":precondition") {
                pre = &value;
            } else if (key == ":effect") {
                eff = &value;
            } else {
                fail(section.items[i], "unsupported action keyword " + key);
            }
        }
        if (!have_params)
            schema.params.clear();
        if (pre)
            collect_conjunction(*pre, schema, false, schema.pre, schema.del);
        if (eff)
            collect_conjunction(*eff, schema, true, schema.add, schema.del);
        return schema;
    }

    void collect_conjunction(const SExpr &e, const OperatorSchema &schema, bool effect,
                             std::vector<AtomTemplate> &positive,
                             std::vector<AtomTemplate> &negative) {
        expect_list(e, effect ? "effect" : "precondition");
        if (e.items.empty())
            return;
        const SExpr &head = e.items[0];
        if (head.is_list)
            fail(head, "expected connective or predicate");
        if (head.token == "and") {
            for (std::size_t i = 1; i < e.items.size(); ++i)
                collect_conjunction(e.items[i], schema, effect, positive, negative);
            return;
        }
        if (head.token == "not") {
            if (!effect)
                fail(head, "unsupported construct: negative precondition");
            if (e.items.size() != 2)
                fail(e, "(not ...) takes one atom");
            negative.push_back(parse_template(e.items[1], schema));
            return;
        }
        if (kUnsupportedConnectives.count(head.token) && !domain_.find_predicate(head.token))
            fail(head, std::string("unsupported construct: ") +
                           (head.token == "when" ? "conditional effect" : head.token));
        positive.push_back(parse_template(e, schema));
    }

    AtomTemplate parse_template(const SExpr &e, const OperatorSchema &schema) {
        expect_list(e, "atom");
        if (e.items.empty())
            fail(e, "empty atom");
        AtomTemplate t;
        t.predicate = expect_token(e.items[0], "predicate name");
        if ((kUnsupportedConnectives.count(t.predicate) && !domain_.find_predicate(t.predicate)) ||
            t.predicate == "not")
            fail(e.items[0], "unsupported construct: " + t.predicate);
        const PredicateDecl *decl = domain_.find_predicate(t.predicate);
        if (!decl)
            fail(e.items[0], "undeclared predicate " + t.predicate);
        if (decl->arity() != e.items.size() - 1)
            fail(e, "arity mismatch for " + t.predicate + ": expected " +
                        std::to_string(decl->arity()) + ", got " +
                        std::to_string(e.items.size() - 1));
        for (std::size_t i = 1; i < e.items.size(); ++i) {
            const std::string &tok = expect_token(e.items[i], "term");
            Term term;
            if (tok[0] == '?') {
                auto it = std::find_if(schema.params.begin(), schema.params.end(),
                                       [&](const TypedName &p) { return p.name == tok; });
                if (it == schema.params.end())
                    fail(e.items[i], "unbound variable " + tok + " in " + schema.name);
                term.is_variable = true;
                term.param = static_cast<std::size_t>(it - schema.params.begin());
            } else {
                bool known = std::any_of(domain_.constants.begin(), domain_.constants.end(),
                                         [&](const TypedName &c) { return c.name == tok; });
                if (!known)
                    fail(e.items[i], "undeclared constant " + tok);
                term.constant = tok;
            }
            t.args.push_back(std::move(term));
        }
        return t;
    }

    Domain domain_;
};

std::string join_typed(const std::vector<TypedName> &names, bool typed) {
    std::ostringstream out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i)
            out << ' ';
        out << names[i].name;
        if (typed) {
            const bool last_of_group = i + 1 == names.size() || names[i + 1].type != names[i].type;
            if (last_of_group)
                out << " - " << names[i].type;
        }
    }
    return out.str();
}

std::string print_template(const AtomTemplate &t, const OperatorSchema &schema) {
    std::string s = "(" + t.predicate;
    for (const auto &a : t.args)
        s += " " + (a.is_variable ? schema.params[a.param].name : a.constant);
    return s + ")";
}

bool domain_is_typed(const Domain &domain) {
    return std::find(domain.requirements.begin(), domain.requirements.end(), ":typing") !=
           domain.requirements.end();
}

Atom ground_atom(const SExpr &e, const Domain &domain,
                 const std::vector<TypedName> &objects) {
    expect_list(e, "atom");
    if (e.items.empty())
        fail(e, "empty atom");
    Atom atom;
    atom.predicate = expect_token(e.items[0], "predicate name");
    if (atom.predicate == "not")
        fail(e.items[0], "unsupported construct: negative literal");
    if (kUnsupportedConnectives.count(atom.predicate) && !domain.find_predicate(atom.predicate))
        fail(e.items[0], "unsupported construct: " + atom.predicate);
    const PredicateDecl *decl = domain.find_predicate(atom.predicate);
    if (!decl)
        throw ModelError("undeclared predicate " + atom.predicate + " at line " +
                         std::to_string(e.line));
    if (decl->arity() != e.items.size() - 1)
        throw ModelError("arity mismatch for " + atom.predicate + " at line " +
                         std::to_string(e.line) + ": expected " +
                         std::to_string(decl->arity()) + ", got " +
                         std::to_string(e.items.size() - 1));
    for (std::size_t i = 1; i < e.items.size(); ++i) {
        const std::string &tok = expect_token(e.items[i], "object");
        auto is = [&](const TypedName &o) { return o.name == tok; };
        if (std::none_of(objects.begin(), objects.end(), is) &&
            std::none_of(domain.constants.begin(), domain.constants.end(), is))
            throw ModelError("undeclared object " + tok + " at line " +
                             std::to_string(e.items[i].line));
        atom.args.push_back(tok);
    }
    return atom;
}

void collect_goal(const SExpr &e, const Domain &domain, const std::vector<TypedName> &objects,
                  std::vector<Atom> &out) {
    expect_list(e, "goal");
    if (e.items.empty())
        return;
    if (e.items[0].is_token("and")) {
        for (std::size_t i = 1; i < e.items.size(); ++i)
            collect_goal(e.items[i], domain, objects, out);
        return;
    }
    out.push_back(ground_atom(e, domain, objects));
}

void push_unique(std::vector<Atom> &atoms, Atom atom) {
    if (std::find(atoms.begin(), atoms.end(), atom) == atoms.end())
        atoms.push_back(std::move(atom));
}

} // namespace

Domain parse_domain(std::string_view text) {
    Reader reader(text);
    return DomainBuilder().build(reader.read_top());
}

ProblemInstance parse_problem(std::string_view text, const Domain &domain) {
    Reader reader(text);
    const SExpr root = reader.read_top();
    expect_list(root, "(define ...)");
    if (root.items.empty() || !root.items[0].is_token("define"))
        fail(root, "expected (define ...)");
    if (root.items.size() < 2)
        fail(root, "missing (problem <name>)");
    const SExpr &head = expect_list(root.items[1], "(problem <name>)");
    if (head.items.size() != 2 || !head.items[0].is_token("problem"))
        fail(head, "expected (problem <name>)");

    ProblemInstance problem;
    problem.name = expect_token(head.items[1], "problem name");
    const SExpr *init = nullptr;
    const SExpr *goal = nullptr;
    for (std::size_t i = 2; i < root.items.size(); ++i) {
        const SExpr &section = expect_list(root.items[i], "problem section");
        if (section.items.empty())
            fail(section, "empty problem section");
        const std::string &key = expect_token(section.items[0], "section keyword");
        if (key == ":domain") {
            if (section.items.size() != 2)
                fail(section, "expected (:domain <name>)");
            problem.domain_name = expect_token(section.items[1], "domain name");
            if (problem.domain_name != domain.name)
                throw ModelError("problem refers to domain " + problem.domain_name +
                                 " but domain is " + domain.name);
        } else if (key == ":objects") {
            problem.objects = parse_typed_list(section.items, 1);
            for (const auto &o : problem.objects) {
                if (o.type != "object" &&
                    std::none_of(domain.types.begin(), domain.types.end(),
                                 [&](const TypedName &t) { return t.name == o.type; }))
                    throw ModelError("undeclared type " + o.type + " for object " + o.name);
            }
        } else if (key == ":init") {
            init = &section;
        } else if (key == ":goal") {
            goal = &section;
        } else {
            fail(section.items[0], "unsupported problem section " + key);
        }
    }
    if (init)
        for (std::size_t k = 1; k < init->items.size(); ++k)
            push_unique(problem.initial, ground_atom(init->items[k], domain, problem.objects));
    if (goal) {
        std::vector<Atom> goals;
        for (std::size_t k = 1; k < goal->items.size(); ++k)
            collect_goal(goal->items[k], domain, problem.objects, goals);
        for (auto &g : goals)
            push_unique(problem.goals, std::move(g));
    }
    return problem;
}

std::string print_domain(const Domain &domain) {
    const bool typed = domain_is_typed(domain);
    std::ostringstream out;
    out << "(define (domain " << domain.name << ")\n";
    if (!domain.requirements.empty()) {
        out << "  (:requirements";
        for (const auto &r : domain.requirements)
            out << ' ' << r;
        out << ")\n";
    }
    if (!domain.types.empty())
        out << "  (:types " << join_typed(domain.types, true) << ")\n";
    if (!domain.constants.empty())
        out << "  (:constants " << join_typed(domain.constants, typed) << ")\n";
    out << "  (:predicates";
    for (const auto &p : domain.predicates) {
        out << " (" << p.name;
        if (!p.params.empty())
            out << ' ' << join_typed(p.params, typed);
        out << ')';
    }
    out << ")\n";
    for (const auto &s : domain.schemas) {
        out << "  (:action " << s.name << "\n";
        out << "    :parameters (" << join_typed(s.params, typed) << ")\n";
        out << "    :precondition (and";
        for (const auto &t : s.pre)
            out << ' ' << print_template(t, s);
        out << ")\n";
        out << "    :effect (and";
        for (const auto &t : s.add)
            out << ' ' << print_template(t, s);
        for (const auto &t : s.del)
            out << " (not " << print_template(t, s) << ')';
        out << "))\n";
    }
    out << ")\n";
    return out.str();
}

std::string print_problem(const ProblemInstance &problem) {
    const bool typed = std::any_of(problem.objects.begin(), problem.objects.end(),
                                   [](const TypedName &o) { return o.type != "object"; });
    std::ostringstream out;
    out << "(define (problem " << problem.name << ")\n";
    out << "  (:domain " << problem.domain_name << ")\n";
    out << "  (:objects " << join_typed(problem.objects, typed) << ")\n";
    out << "  (:init";
    for (const auto &a : problem.initial)
        out << ' ' << to_string(a);
    out << ")\n";
    out << "  (:goal (and";
    for (const auto &a : problem.goals)
        out << ' ' << to_string(a);
    out << ")))\n";
    return out.str();
}

std::string format_plan(const Plan &plan) {
    std::ostringstream out;
    for (std::size_t k = 0; k < plan.steps.size(); ++k)
        for (const auto &a : plan.steps[k])
            out << "step " << k << ": " << to_string(a) << '\n';
    return out.str();
}

Plan parse_plan(std::string_view text, const Domain &domain, const ProblemInstance &problem,
                FactTable &facts) {
    Plan plan;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == ';')
            continue;
        std::size_t k = 0;
        char open = 0;
        std::istringstream ls(line);
        std::string word;
        ls >> word >> k;
        if (word != "step" || ls.get() != ':')
            throw ParseError("expected 'step <k>: (...)'", lineno, first + 1);
        ls >> open;
        if (open != '(')
            throw ParseError("expected '(' before action", lineno, 1);
        std::string rest;
        std::getline(ls, rest, ')');
        std::istringstream toks(rest);
        std::string name;
        toks >> name;
        std::transform(name.begin(), name.end(), name.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        std::vector<std::string> args;
        for (std::string a; toks >> a;) {
            std::transform(a.begin(), a.end(), a.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            args.push_back(a);
        }
        auto schema = std::find_if(domain.schemas.begin(), domain.schemas.end(),
                                   [&](const OperatorSchema &s) { return s.name == name; });
        if (schema == domain.schemas.end())
            throw ModelError("unknown action " + name + " on plan line " + std::to_string(lineno));
        if (schema->params.size() != args.size())
            throw ModelError("wrong argument count for " + name + " on plan line " +
                             std::to_string(lineno));
        for (const auto &a : args) {
            auto is = [&](const TypedName &o) { return o.name == a; };
            if (std::none_of(problem.objects.begin(), problem.objects.end(), is) &&
                std::none_of(domain.constants.begin(), domain.constants.end(), is))
                throw ModelError("undeclared object " + a + " on plan line " +
                                 std::to_string(lineno));
        }
        if (plan.steps.size() <= k)
            plan.steps.resize(k + 1);
        plan.steps[k].push_back(instantiate(*schema, args, facts));
    }
    return plan;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace spikeplan::strips
