#include "spikeplan/bench.hpp"
#include "spikeplan/generators.hpp"
#include "spikeplan/grounding.hpp"
#include "spikeplan/oracle.hpp"
#include "spikeplan/pddl.hpp"
#include "spikeplan/planner.hpp"
#include "spikeplan/spike.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace spikeplan;

namespace {

enum Exit { kFound = 0, kUsage = 1, kFileError = 2, kNoPlan = 3, kCapacity = 4 };

void print_stats(const RunStats &s, std::ostream &out) {
    auto opt = [](const std::optional<std::size_t> &v) {
        return v ? std::to_string(*v) : std::string("-");
    };
    out << "ranks " << s.ranks << ", opening " << opt(s.opening) << ", fix point "
        << opt(s.fix_point) << ", buffer " << opt(s.buffer) << "\n";
    out << "plan steps " << s.plan_steps << ", actions " << s.plan_actions << "\n";
    out << "candidates generated " << s.candidates_generated << ", admitted "
        << s.candidates_admitted << ", skipped " << s.candidates_skipped << ", queue peak "
        << s.queue_peak << "\n";
    out << "mutex tests permanent " << s.permanent_tests << ", temporary " << s.temporary_tests
        << ", retests " << s.retests << ", avoided " << s.retests_avoided << "\n";
    out << "memo sets " << s.memo_sets << ", nodes " << s.nodes << ", time " << s.time_ms
        << " ms\n";
}

bool write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"STRIPS planner over a bit-vector plan graph"};
    app.require_subcommand(0, 1);

    std::string domain_path, problem_path, mode_name = "wavefront", memo_name = "subset";
    std::string stats_path, dump_path;
    PlannerOptions options;
    bool no_changed_acts = false;
    app.add_option("--domain", domain_path, "Domain file");
    app.add_option("--problem", problem_path, "Problem file");
    app.add_option("--mode", mode_name, "Planner mode")
        ->check(CLI::IsMember({"wavefront", "no-wavefront", "explicit"}));
    app.add_flag("--heuristic", options.heuristic, "Scored candidate queue");
    app.add_option("--penetration-weight", options.penetration_weight);
    app.add_option("--fragment-weight", options.fragment_weight);
    app.add_flag("--no-changedacts", no_changed_acts, "Retest every temporary action mutex");
    app.add_option("--memo", memo_name, "Memoization policy")
        ->check(CLI::IsMember({"subset", "full"}));
    app.add_flag("--exclude-failing-goal", options.exclude_failing_goal,
                 "Subset memo leaves out the goal that failed");
    app.add_option("--max-ranks", options.max_ranks);
    app.add_option("--max-candidates", options.max_candidates);
    app.add_option("--maxsize", options.max_size, "Bit cap per spike vector");
    app.add_option("--stats", stats_path, "Append a CSV row of run statistics");
    app.add_option("--dump-graph", dump_path, "Write the spike ranks as text");

    auto *gen_cmd = app.add_subcommand("gen", "Write a generated domain and problem");
    std::string family, out_dir = ".";
    int size = 0;
    gen_cmd->add_option("family", family)
        ->required()
        ->check(CLI::IsMember({"toh", "gripper", "ferry", "tsp"}));
    gen_cmd->add_option("n", size)->required();
    gen_cmd->add_option("--out-dir", out_dir);

    auto *bench_cmd = app.add_subcommand("bench", "Run a suite and write CSV");
    std::string suite_path, csv_path;
    bench_cmd->add_option("suite", suite_path, "JSON suite description")->required();
    bench_cmd->add_option("--out", csv_path, "CSV output (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }
    options.mode = *parse_mode(mode_name);
    options.memo = memo_name == "full" ? MemoMode::Full : MemoMode::Subset;
    options.changed_acts = !no_changed_acts;
    options.dump_graph = !dump_path.empty();

    if (*gen_cmd) {
        gen::Instance inst;
        try {
            inst = gen::by_name(family, size);
        } catch (const std::invalid_argument &e) {
            std::cerr << "error: " << e.what() << "\n";
            return kUsage;
        }
        const auto dir = std::filesystem::path(out_dir);
        const auto d = dir / (inst.name + "-domain.pddl");
        const auto p = dir / (inst.name + ".pddl");
        if (!write_file(d.string(), inst.domain) || !write_file(p.string(), inst.problem)) {
            std::cerr << "error: cannot write to " << out_dir << "\n";
            return kFileError;
        }
        std::cout << d.string() << "\n" << p.string() << "\n";
        return kFound;
    }

    if (*bench_cmd) {
        std::vector<bench::SuiteEntry> suite;
        try {
            suite = bench::parse_suite(strips::read_file(suite_path));
        } catch (const std::exception &e) {
            std::cerr << "error: " << e.what() << "\n";
            return kFileError;
        }
        if (csv_path.empty()) {
            bench::run_suite(suite, options, std::cout);
        } else {
            std::ofstream out(csv_path);
            if (!out) {
                std::cerr << "error: cannot write " << csv_path << "\n";
                return kFileError;
            }
            bench::run_suite(suite, options, out);
        }
        return kFound;
    }

    if (domain_path.empty() || problem_path.empty()) {
        std::cerr << "error: --domain and --problem are required\n" << app.help();
        return kUsage;
    }

    strips::GroundTask task;
    try {
        const auto domain = strips::parse_domain(strips::read_file(domain_path));
        const auto problem = strips::parse_problem(strips::read_file(problem_path), domain);
        task = strips::ground(domain, problem);
    } catch (const CapacityError &e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return kCapacity;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFileError;
    }

    PlanResult result;
    try {
        result = bench::solve(task, options);
    } catch (const CapacityError &e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return kCapacity;
    } catch (const oracle::BudgetExceeded &e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return kCapacity;
    }

    if (options.mode == Mode::Explicit && options.dump_graph) {
        Spike spike(task, SpikeOptions{options.max_size, options.changed_acts});
        while (!spike.fix_point())
            spike.extend_rank();
        result.graph_dump = spike.dump();
    }
    if (!dump_path.empty() && !write_file(dump_path, result.graph_dump)) {
        std::cerr << "error: cannot write " << dump_path << "\n";
        return kFileError;
    }
    if (!stats_path.empty()) {
        const bool fresh = !std::filesystem::exists(stats_path);
        std::ofstream out(stats_path, std::ios::app);
        bench::Row row{std::filesystem::path(problem_path).stem().string(), options.mode,
                       result.found ? "ok" : "noplan", result.stats};
        if (fresh)
            out << bench::csv_header() << "\n";
        out << bench::csv_row(row) << "\n";
    }

    if (result.found)
        std::cout << strips::format_plan(result.plan);
    else
        std::cout << "no plan\n";
    print_stats(result.stats, std::cerr);
    return result.found ? kFound : kNoPlan;
}
