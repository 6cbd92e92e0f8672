#include "gcrp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "gcrp/random.hpp"

namespace gcrp {

namespace {

std::string format_fixed(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::string format_fraction(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Solution files

std::optional<Algorithm> parse_algorithm(std::string_view text) {
    for (Algorithm a : {Algorithm::Alg2, Algorithm::Alg3T1, Algorithm::Alg3T2, Algorithm::Alg4, Algorithm::TsppCase})
        if (to_string(a) == text) return a;
    return std::nullopt;
}

std::string serialize_solution(const GcrpSolution& sol) {
    std::ostringstream out;
    out << "gcrp-solution v1\n";
    out << "algorithm " << to_string(sol.algorithm) << "\n";
    out << "cost " << sol.tour.cost << "\n";
    out << "tour";
    for (Vertex v : sol.tour.vertices) out << ' ' << v;
    out << "\n";
    for (const ClusterPath& p : sol.per_cluster) {
        out << "path " << p.cluster << ' ' << p.start << ' ' << p.end;
        for (Vertex v : p.path.vertices) out << ' ' << v;
        out << "\n";
    }
    return out.str();
}

SolutionFile parse_solution(std::string_view text) {
    SolutionFile sol;
    sol.tour.closed = true;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool header = false, have_alg = false, have_cost = false, have_tour = false;
    auto integer = [&](std::istringstream& ls, const char* what) {
        long long x;
        if (!(ls >> x)) throw ParseError(ParseError::Kind::Malformed, line_no, std::string("expected ") + what);
        return x;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (!header) {
            std::string version;
            ls >> version;
            if (key != "gcrp-solution" || version != "v1")
                throw ParseError(ParseError::Kind::Header, line_no, "expected 'gcrp-solution v1'");
            header = true;
            continue;
        }
        if (key == "algorithm") {
            std::string name;
            ls >> name;
            auto a = parse_algorithm(name);
            if (!a) throw ParseError(ParseError::Kind::Malformed, line_no, "unknown algorithm '" + name + "'");
            sol.algorithm = *a;
            have_alg = true;
        } else if (key == "cost") {
            sol.tour.cost = integer(ls, "a cost");
            have_cost = true;
        } else if (key == "tour") {
            long long v;
            while (ls >> v) sol.tour.vertices.push_back(static_cast<Vertex>(v));
            if (!ls.eof()) throw ParseError(ParseError::Kind::Malformed, line_no, "bad tour vertex");
            have_tour = true;
        } else if (key == "path") {
            ClusterPath p;
            p.cluster = static_cast<int>(integer(ls, "a cluster index"));
            p.start = static_cast<Vertex>(integer(ls, "a start vertex"));
            p.end = static_cast<Vertex>(integer(ls, "an end vertex"));
            long long v;
            while (ls >> v) p.path.vertices.push_back(static_cast<Vertex>(v));
            if (!ls.eof()) throw ParseError(ParseError::Kind::Malformed, line_no, "bad path vertex");
            sol.per_cluster.push_back(std::move(p));
        } else {
            throw ParseError(ParseError::Kind::Malformed, line_no, "unknown key '" + key + "'");
        }
        std::string extra;
        if (key != "tour" && key != "path" && (ls >> extra))
            throw ParseError(ParseError::Kind::Malformed, line_no, "trailing text '" + extra + "'");
    }
    if (!header) throw ParseError(ParseError::Kind::Header, line_no, "empty solution file");
    if (!have_alg || !have_cost || !have_tour)
        throw ParseError(ParseError::Kind::Missing, line_no, "solution needs algorithm, cost and tour lines");
    return sol;
}

// ---------------------------------------------------------------------------
// Ratios

Ratio ceiling_for(Algorithm a) {
    switch (a) {
        case Algorithm::Alg2: return {12, 5};
        case Algorithm::Alg3T1:
        case Algorithm::Alg3T2: return {13, 4};
        case Algorithm::Alg4: return {9, 4};
        case Algorithm::TsppCase: return {3, 2};
    }
    return {1, 1};
}

bool within(Cost cost, Ratio ratio, Cost opt) { return cost * ratio.den <= ratio.num * opt; }

std::optional<Fault> parse_fault(std::string_view text) {
    if (text == "drop-vertex") return Fault::DropVertex;
    if (text == "misreport-cost") return Fault::MisreportCost;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Sweeps

void validate_bench_config(const BenchConfig& config) {
    if (config.seed_end < config.seed_begin) throw BenchConfigError("seed range ends before it begins");
    if (config.sizes.empty()) throw BenchConfigError("no sizes given");
    if (config.fractions.empty()) throw BenchConfigError("no required-content fractions given");
    if (config.algorithms.empty()) throw BenchConfigError("no algorithms given");
    if (config.jobs < 1) throw BenchConfigError("jobs must be at least 1");
    for (auto [n, k] : config.sizes) {
        if (n < 1 || k < 1 || k > n)
            throw BenchConfigError("size n=" + std::to_string(n) + " k=" + std::to_string(k) + " is not valid");
        if (config.with_oracle && n > config.oracle_cap)
            throw BenchConfigError("size n=" + std::to_string(n) + " exceeds the oracle cap " +
                                   std::to_string(config.oracle_cap) + "; raise --oracle-cap or pass --no-oracle");
    }
    for (auto [fv, fe] : config.fractions)
        if (!(fv >= 0 && fv <= 1 && fe >= 0 && fe <= 1)) throw BenchConfigError("fractions must lie in [0,1]");
}

bool BenchReport::has_violation() const {
    for (const BenchRow& r : rows)
        if (!r.ok()) return true;
    return false;
}

namespace {

struct RowSpec {
    std::uint64_t seed;
    std::size_t size_index;
    std::size_t fraction_index;
    std::size_t algorithm_index;
};

GeneratorParams params_for(const BenchConfig& config, const RowSpec& spec) {
    GeneratorParams p;
    p.n = config.sizes[spec.size_index].first;
    p.k = config.sizes[spec.size_index].second;
    p.frac_required_v = config.fractions[spec.fraction_index].first;
    p.frac_required_e = config.fractions[spec.fraction_index].second;
    switch (config.algorithms[spec.algorithm_index]) {
        case SolverChoice::Alg2:
            p.endpoints = EndpointsMode::Given;
            p.cross = CrossPolicy::Any;
            break;
        case SolverChoice::Alg3:
            p.endpoints = EndpointsMode::Free;
            p.cross = CrossPolicy::None;
            break;
        case SolverChoice::Alg4:
            p.endpoints = EndpointsMode::Free;
            p.cross = CrossPolicy::AtLeastOne;
            break;
        case SolverChoice::Auto:
            p.endpoints = spec.seed % 2 == 0 ? EndpointsMode::Given : EndpointsMode::Free;
            p.cross = CrossPolicy::Any;
            break;
    }
    return p;
}

void inject(Fault fault, const MetricInstance& inst, GcrpSolution& sol) {
    auto& w = sol.tour.vertices;
    switch (fault) {
        case Fault::DropVertex: {
            if (w.empty()) return;
            auto content = analyze_required(inst).all_content();
            auto it = std::find_if(w.begin(), w.end(), [&](Vertex v) {
                return std::binary_search(content.begin(), content.end(), v);
            });
            w.erase(it == w.end() ? w.begin() : it);
            sol.tour.cost = walk_cost(w, true, inst.dist);
            break;
        }
        case Fault::MisreportCost:
            sol.tour.cost = sol.tour.cost * 3 + 1;
            break;
    }
}

BenchRow run_row(const BenchConfig& config, const RowSpec& spec) {
    BenchRow row;
    const GeneratorParams p = params_for(config, spec);
    row.seed = spec.seed;
    row.requested = config.algorithms[spec.algorithm_index];
    row.n = p.n;
    row.k = p.k;
    row.instance = "seed" + std::to_string(spec.seed) + "-n" + std::to_string(p.n) + "-k" + std::to_string(p.k) +
                   "-v" + format_fraction(p.frac_required_v) + "-e" + format_fraction(p.frac_required_e);
    const std::uint64_t stream =
        (static_cast<std::uint64_t>(spec.size_index) << 32) | (static_cast<std::uint64_t>(spec.fraction_index) << 16) |
        static_cast<std::uint64_t>(spec.algorithm_index);
    MetricInstance inst;
    try {
        inst = generate_random(p, mix_seed(spec.seed, stream));
    } catch (const GenerationError&) {
        row.generation_failed = true;
        return row;
    }

    GcrpSolution sol;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        sol = solve(inst, row.requested);
    } catch (const Error& e) {
        row.problems.push_back(std::string("solver error: ") + e.what());
        return row;
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (config.fault) inject(*config.fault, inst, sol);
    row.algorithm = sol.algorithm;
    row.cost = sol.tour.cost;
    row.ceiling = ceiling_for(sol.algorithm);
    row.problems = check_tour(inst, sol.tour);
    if (!config.with_oracle) return row;

    OracleBudget budget;
    budget.gcrp_cap = config.oracle_cap;
    const OracleResult opt = exact_gcrp(inst, budget);
    row.oracle = opt.opt_cost;
    if (row.cost < opt.opt_cost) row.violations.push_back("cost below the optimum");
    if (!within(row.cost, row.ceiling, opt.opt_cost)) row.violations.push_back("ratio above ceiling");

    for (auto [tag, c] : sol.candidates) {
        if (tag == Algorithm::Alg3T1) row.t1 = c;
        if (tag == Algorithm::Alg3T2) row.t2 = c;
    }
    if (row.t1 && row.t2 && sol.ledger.D) {
        row.ledger = ledger_from_reference(inst, opt.witness);
        row.ledger.D = sol.ledger.D;
        const Cost L = *row.ledger.L, D = *row.ledger.D, opt2 = 2 * opt.opt_cost;
        // Doubled: 2 T1 <= 3 OPT + L + 4 D and 2 T2 <= 3 OPT + 6 L - 4 D.
        if (2 * *row.t1 > opt2 + opt.opt_cost + L + 4 * D) row.violations.push_back("T1 ledger bound");
        if (2 * *row.t2 > opt2 + opt.opt_cost + 6 * L - 4 * D) row.violations.push_back("T2 ledger bound");
    }
    return row;
}

}  // namespace

BenchReport run_bench(const BenchConfig& config) {
    validate_bench_config(config);
    std::vector<RowSpec> specs;
    for (std::uint64_t seed = config.seed_begin; seed < config.seed_end; ++seed)
        for (std::size_t si = 0; si < config.sizes.size(); ++si)
            for (std::size_t fi = 0; fi < config.fractions.size(); ++fi)
                for (std::size_t ai = 0; ai < config.algorithms.size(); ++ai) specs.push_back({seed, si, fi, ai});

    BenchReport report;
    report.rows.resize(specs.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < specs.size();) {
            try {
                report.rows[i] = run_row(config, specs[i]);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = specs.size();
            }
        }
    };
    const int jobs = std::min<int>(config.jobs, static_cast<int>(std::max<std::size_t>(specs.size(), 1)));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
    return report;
}

std::string report_tsv(const BenchReport& report, bool timing) {
    std::ostringstream out;
    out << "instance\trequested\talgorithm\tn\tk\tcost\toracle\tratio\tceiling\tmargin\tstatus";
    if (timing) out << "\twall_ms";
    out << "\n";
    for (const BenchRow& r : report.rows) {
        out << r.instance << '\t' << to_string(r.requested) << '\t';
        if (r.generation_failed) {
            out << "-\t" << r.n << '\t' << r.k << "\t-\t-\t-\t-\t-\tgeneration-failed";
        } else {
            out << to_string(r.algorithm) << '\t' << r.n << '\t' << r.k << '\t' << r.cost << '\t';
            if (r.oracle) {
                const double ratio = *r.oracle > 0 ? static_cast<double>(r.cost) / static_cast<double>(*r.oracle) : 1.0;
                out << *r.oracle << '\t' << format_fixed(ratio) << '\t' << format_fixed(r.ceiling.value()) << '\t'
                    << format_fixed(r.ceiling.value() - ratio);
            } else {
                out << "-\t-\t" << format_fixed(r.ceiling.value()) << "\t-";
            }
            out << '\t';
            if (!r.problems.empty())
                out << "INVALID: " << r.problems.front();
            else if (!r.violations.empty())
                out << "VIOLATION: " << r.violations.front();
            else
                out << "ok";
        }
        if (timing) out << '\t' << format_fixed(r.wall_ms);
        out << "\n";
    }
    return out.str();
}

std::string report_summary(const BenchReport& report) {
    struct Stats {
        int rows = 0;
        int bad = 0;
        double max_ratio = 0;
        bool any_ratio = false;
    };
    std::map<std::string, Stats> by_alg;
    int skipped = 0;
    for (const BenchRow& r : report.rows) {
        if (r.generation_failed) {
            ++skipped;
            continue;
        }
        Stats& s = by_alg[to_string(r.algorithm)];
        ++s.rows;
        if (!r.ok()) ++s.bad;
        if (r.oracle && *r.oracle > 0) {
            s.max_ratio = std::max(s.max_ratio, static_cast<double>(r.cost) / static_cast<double>(*r.oracle));
            s.any_ratio = true;
        }
    }
    std::ostringstream out;
    out << "rows: " << report.rows.size();
    if (skipped) out << " (" << skipped << " without a generated instance)";
    out << "\n";
    for (const auto& [name, s] : by_alg) {
        out << name << ": " << s.rows << " rows";
        if (s.any_ratio) out << ", max ratio " << format_fixed(s.max_ratio);
        out << ", " << s.bad << " failing\n";
    }
    out << (report.has_violation() ? "FAILURE: some rows are invalid or exceed their bound\n" : "all rows within bounds\n");
    return out.str();
}

}  // namespace gcrp
