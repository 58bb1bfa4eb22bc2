#include "spikeplan/bench.hpp"

#include "spikeplan/grounding.hpp"
#include "spikeplan/oracle.hpp"
#include "spikeplan/pddl.hpp"

#include <json.hpp>

#include <chrono>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace spikeplan::bench {

PlanResult solve(const strips::GroundTask &task, const PlannerOptions &options) {
    if (options.mode != Mode::Explicit)
        return plan(task, options);
    const auto start = std::chrono::steady_clock::now();
    oracle::ExplicitResult e = oracle::explicit_graphplan(task, options.max_ranks);
    PlanResult r;
    r.found = e.found;
    r.plan = std::move(e.plan);
    r.stats.ranks = e.layers;
    r.stats.opening = e.opening;
    r.stats.fix_point = e.level_off;
    if (e.level_off)
        r.stats.buffer = *e.level_off + 1;
    r.stats.plan_steps = r.plan.step_count();
    r.stats.plan_actions = r.plan.action_count();
    r.stats.time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return r;
}

Row run(const std::string &name, const std::string &domain_text,
        const std::string &problem_text, const PlannerOptions &options) {
    Row row;
    row.problem = name;
    row.mode = options.mode;
    try {
        const auto domain = strips::parse_domain(domain_text);
        const auto problem = strips::parse_problem(problem_text, domain);
        const auto task = strips::ground(domain, problem);
        PlanResult r = solve(task, options);
        row.stats = r.stats;
        row.status = r.found ? "ok" : "noplan";
    } catch (const std::exception &e) {
        row.status = e.what();
    }
    return row;
}

const std::string &csv_header() {
    static const std::string header =
        "problem,mode,ranks,opening,fixpoint,buffer,plan_steps,plan_actions,candidates_gen,"
        "candidates_adm,candidates_skip,mutex_perm,mutex_temp,retests,retests_avoided,"
        "memo_sets,time_ms";
    return header;
}

namespace {

std::string opt(const std::optional<std::size_t> &v) { return v ? std::to_string(*v) : ""; }

// Failure text goes into the plan columns; commas and quotes are kept out of it.
std::string cell(std::string s) {
    for (char &c : s)
        if (c == ',' || c == '"' || c == '\n')
            c = ' ';
    return s;
}

} // namespace

std::string csv_row(const Row &row) {
    const RunStats &s = row.stats;
    std::ostringstream out;
    out << row.problem << ',' << to_string(row.mode) << ',' << s.ranks << ',' << opt(s.opening)
        << ',' << opt(s.fix_point) << ',' << opt(s.buffer) << ',';
    if (row.status == "ok")
        out << s.plan_steps << ',' << s.plan_actions;
    else
        out << cell(row.status) << ',';
    out << ',' << s.candidates_generated << ',' << s.candidates_admitted << ','
        << s.candidates_skipped << ',' << s.permanent_tests << ',' << s.temporary_tests << ','
        << s.retests << ',' << s.retests_avoided << ',' << s.memo_sets << ',';
    out.setf(std::ios::fixed);
    out.precision(3);
    out << s.time_ms;
    return out.str();
}

std::vector<SuiteEntry> parse_suite(const std::string &json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("suite: ") + e.what());
    }
    std::vector<SuiteEntry> suite;
    if (!doc.contains("runs"))
        return suite;
    try {
        for (const auto &entry : doc.at("runs")) {
            SuiteEntry e;
            e.family = entry.at("family").get<std::string>();
            if (entry.contains("sizes")) {
                e.sizes = entry.at("sizes").get<std::vector<int>>();
            } else {
                for (int n = entry.at("from").get<int>(); n <= entry.at("to").get<int>(); ++n)
                    e.sizes.push_back(n);
            }
            for (const auto &m : entry.value("modes", std::vector<std::string>{"wavefront"})) {
                auto mode = parse_mode(m);
                if (!mode)
                    throw std::invalid_argument("suite: unknown mode '" + m + "'");
                e.modes.push_back(*mode);
            }
            e.repetitions = entry.value("repetitions", 1);
            suite.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("suite: ") + e.what());
    }
    return suite;
}

std::vector<Row> run_suite(const std::vector<SuiteEntry> &suite, const PlannerOptions &base,
                           std::ostream &csv) {
    std::vector<Row> rows;
    csv << csv_header() << '\n';
    for (const auto &entry : suite)
        for (int n : entry.sizes)
            for (Mode mode : entry.modes)
                for (int rep = 0; rep < entry.repetitions; ++rep) {
                    PlannerOptions options = base;
                    options.mode = mode;
                    Row row;
                    try {
                        const gen::Instance inst = gen::by_name(entry.family, n);
                        row = run(inst.name, inst.domain, inst.problem, options);
                    } catch (const std::exception &e) {
                        row.problem = entry.family + "-" + std::to_string(n);
                        row.mode = mode;
                        row.status = e.what();
                    }
                    csv << csv_row(row) << '\n' << std::flush;
                    rows.push_back(std::move(row));
                }
    return rows;
}

} // namespace spikeplan::bench
