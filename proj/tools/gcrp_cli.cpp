#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "gcrp/bench.hpp"
#include "gcrp/gcrp.hpp"
#include "gcrp/instance.hpp"
#include "gcrp/oracle.hpp"

using namespace gcrp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitBound = 3;
constexpr int kExitConfig = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

MetricInstance load_instance(const std::string& path) {
    MetricInstance inst = parse_instance(read_file(path));
    auto problems = validate_metric(inst);
    if (!problems.empty()) {
        std::string msg = path + ": not a valid metric instance: " + to_string(problems.front().kind);
        if (!problems.front().detail.empty()) msg += " (" + problems.front().detail + ")";
        throw UsageError(msg);
    }
    return inst;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) parts.push_back(cur);
    return parts;
}

// "A:B" or a single seed "A".
std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
    try {
        auto colon = text.find(':');
        if (colon == std::string::npos) {
            auto s = std::stoull(text);
            return {s, s + 1};
        }
        return {std::stoull(text.substr(0, colon)), std::stoull(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw UsageError("bad seed range '" + text + "' (expected A:B)");
    }
}

struct GenOptions {
    std::uint64_t seed = 0;
    int n = 6;
    int k = 2;
    double frac_v = 0.5;
    double frac_e = 0.2;
    std::string ends = "free";
    std::string cross = "any";
    std::string out;
};

GeneratorParams to_params(const GenOptions& o) {
    GeneratorParams p;
    p.n = o.n;
    p.k = o.k;
    p.frac_required_v = o.frac_v;
    p.frac_required_e = o.frac_e;
    p.endpoints = o.ends == "given" ? EndpointsMode::Given : EndpointsMode::Free;
    p.cross = o.cross == "none" ? CrossPolicy::None : o.cross == "some" ? CrossPolicy::AtLeastOne : CrossPolicy::Any;
    return p;
}

int cmd_gen(const GenOptions& o) {
    MetricInstance inst = generate_random(to_params(o), o.seed);
    write_output(o.out, serialize_instance(inst));
    return kExitOk;
}

int cmd_solve(const std::string& path, const std::string& alg, const std::string& out) {
    const MetricInstance inst = load_instance(path);
    auto choice = parse_solver_choice(alg);
    if (!choice) throw UsageError("unknown algorithm '" + alg + "'");
    const GcrpSolution sol = solve(inst, *choice);
    write_output(out, serialize_solution(sol));
    auto problems = check_tour(inst, sol.tour);
    (out.empty() || out == "-" ? std::cerr : std::cout)
        << "solved " << path << ": algorithm " << to_string(sol.algorithm) << ", cost " << sol.tour.cost << ", "
        << sol.tour.size() << " tour vertices, " << (problems.empty() ? "valid" : "INVALID: " + problems.front())
        << "\n";
    return problems.empty() ? kExitOk : kExitCheckFailed;
}

int cmd_oracle(const std::string& path, int cap) {
    const MetricInstance inst = load_instance(path);
    OracleBudget budget;
    budget.gcrp_cap = cap;
    const OracleResult r = exact_gcrp(inst, budget);
    std::cout << "optimum " << r.opt_cost << "\n";
    std::cout << "tour";
    for (Vertex v : r.witness.vertices) std::cout << ' ' << v;
    std::cout << "\nexplored " << r.nodes_explored << "\n";
    return kExitOk;
}

int cmd_check(const std::string& instance_path, const std::string& solution_path) {
    const MetricInstance inst = load_instance(instance_path);
    const SolutionFile sol = parse_solution(read_file(solution_path));
    auto problems = check_tour(inst, sol.tour);
    if (problems.empty()) {
        std::cout << "valid: cost " << sol.tour.cost << "\n";
        return kExitOk;
    }
    for (const auto& p : problems) std::cout << "invalid: " << p << "\n";
    return kExitCheckFailed;
}

struct BenchOptions {
    std::string seeds = "0:50";
    std::vector<std::string> sizes{"8x2"};
    std::vector<std::string> fractions{"0.5/0.2"};
    std::vector<std::string> algorithms{"alg2"};
    int oracle_cap = 10;
    int jobs = 1;
    bool no_oracle = false;
    bool timing = false;
    std::string fault;
    std::string out;
};

BenchConfig to_config(const BenchOptions& o) {
    BenchConfig c;
    std::tie(c.seed_begin, c.seed_end) = parse_seed_range(o.seeds);
    c.sizes.clear();
    for (const auto& s : o.sizes) {
        auto parts = split(s, 'x');
        try {
            if (parts.size() != 2) throw std::invalid_argument(s);
            c.sizes.emplace_back(std::stoi(parts[0]), std::stoi(parts[1]));
        } catch (const std::exception&) {
            throw UsageError("bad size '" + s + "' (expected NxK)");
        }
    }
    c.fractions.clear();
    for (const auto& f : o.fractions) {
        auto parts = split(f, '/');
        try {
            if (parts.size() != 2) throw std::invalid_argument(f);
            c.fractions.emplace_back(std::stod(parts[0]), std::stod(parts[1]));
        } catch (const std::exception&) {
            throw UsageError("bad fractions '" + f + "' (expected V/E)");
        }
    }
    c.algorithms.clear();
    for (const auto& a : o.algorithms) {
        auto choice = parse_solver_choice(a);
        if (!choice) throw UsageError("unknown algorithm '" + a + "'");
        c.algorithms.push_back(*choice);
    }
    c.oracle_cap = o.oracle_cap;
    c.with_oracle = !o.no_oracle;
    c.jobs = o.jobs;
    if (!o.fault.empty()) {
        c.fault = parse_fault(o.fault);
        if (!c.fault) throw UsageError("unknown fault '" + o.fault + "'");
    }
    return c;
}

int cmd_bench(const BenchOptions& o) {
    const BenchReport report = run_bench(to_config(o));
    if (o.out.empty() || o.out == "-") {
        std::cout << report_tsv(report, o.timing);
    } else {
        write_output(o.out, report_tsv(report, o.timing));
    }
    std::cerr << report_summary(report);
    return report.has_violation() ? kExitBound : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"General cluster routing: instance generation, solvers, exact oracle and benchmarks"};
    app.set_config("--config", "", "Read options from a TOML/INI file");
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
    gen_cmd->add_option("--seed", gen.seed, "Random seed");
    gen_cmd->add_option("--n", gen.n, "Number of vertices")->check(CLI::Range(1, 1000));
    gen_cmd->add_option("--k", gen.k, "Number of clusters")->check(CLI::Range(1, 1000));
    gen_cmd->add_option("--frac-v", gen.frac_v, "Fraction of required vertices")->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--frac-e", gen.frac_e, "Required edges per vertex")->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--ends", gen.ends, "Cluster ends")->check(CLI::IsMember({"given", "free"}));
    gen_cmd->add_option("--cross", gen.cross, "Cross-cluster required edges")
        ->check(CLI::IsMember({"none", "any", "some"}));
    gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

    std::string solve_path, solve_alg = "auto", solve_out;
    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
    solve_cmd->add_option("instance", solve_path, "Instance file")->required();
    solve_cmd->add_option("--alg", solve_alg, "Solver")->check(CLI::IsMember({"auto", "alg2", "alg3", "alg4"}));
    solve_cmd->add_option("--out", solve_out, "Solution file (default stdout)");

    std::string oracle_path;
    int oracle_cap = OracleBudget{}.gcrp_cap;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum of a small instance");
    oracle_cmd->add_option("instance", oracle_path, "Instance file")->required();
    oracle_cmd->add_option("--oracle-cap", oracle_cap, "Largest instance size the oracle accepts");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Seeded benchmark sweep with ratio report");
    bench_cmd->add_option("--seed", bench.seeds, "Seed range A:B (half-open) or a single seed");
    bench_cmd->add_option("--sizes", bench.sizes, "Sizes as NxK")->delimiter(',');
    bench_cmd->add_option("--fractions", bench.fractions, "Required fractions as V/E")->delimiter(',');
    bench_cmd->add_option("--alg", bench.algorithms, "Solvers (alg2, alg3, alg4, auto)")->delimiter(',');
    bench_cmd->add_option("--oracle-cap", bench.oracle_cap, "Largest instance size the oracle accepts");
    bench_cmd->add_option("--jobs", bench.jobs, "Worker threads");
    bench_cmd->add_flag("--no-oracle", bench.no_oracle, "Skip the oracle and ratio checks");
    bench_cmd->add_flag("--timing", bench.timing, "Add a wall time column");
    bench_cmd->add_option("--inject-fault", bench.fault, "Break solver output on purpose (drop-vertex, misreport-cost)");
    bench_cmd->add_option("--out", bench.out, "TSV report file (default stdout)");

    std::string check_instance, check_solution;
    auto* check_cmd = app.add_subcommand("check", "Validate a solution file against its instance");
    check_cmd->add_option("instance", check_instance, "Instance file")->required();
    check_cmd->add_option("solution", check_solution, "Solution file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen);
        if (*solve_cmd) return cmd_solve(solve_path, solve_alg, solve_out);
        if (*oracle_cmd) return cmd_oracle(oracle_path, oracle_cap);
        if (*bench_cmd) return cmd_bench(bench);
        if (*check_cmd) return cmd_check(check_instance, check_solution);
    } catch (const InfeasibleInstance& e) {
        std::cerr << "infeasible: " << e.verdict().describe() << "\n";
        return kExitInfeasible;
    } catch (const DispatchError& e) {
        std::cerr << "dispatch error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const GenerationError& e) {
        std::cerr << "generation failed: " << e.what() << "\n";
        return kExitConfig;
    } catch (const BenchConfigError& e) {
        std::cerr << "bad configuration: " << e.what() << "\n";
        return kExitConfig;
    } catch (const OracleCapExceeded& e) {
        std::cerr << "oracle cap: " << e.what() << "\n";
        return kExitConfig;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
