#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gcrp/gcrp.hpp"
#include "gcrp/oracle.hpp"

namespace gcrp {

// ---------------------------------------------------------------------------
// Solution files

struct SolutionFile {
    Algorithm algorithm = Algorithm::Alg2;
    Walk tour;
    std::vector<ClusterPath> per_cluster;

    bool operator==(const SolutionFile&) const = default;
};

std::optional<Algorithm> parse_algorithm(std::string_view text);

std::string serialize_solution(const GcrpSolution& sol);
// Raises ParseError. The tour cost is taken as recorded, so check_tour
// catches a file whose cost line was edited.
SolutionFile parse_solution(std::string_view text);

// ---------------------------------------------------------------------------
// Ratio ceilings

struct Ratio {
    Cost num = 1;
    Cost den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Ratio&) const = default;
};

// 12/5, 13/4 (both Alg3 candidates), 9/4, and 3/2 for the single cycle case.
Ratio ceiling_for(Algorithm a);

// cost <= ratio * opt, in exact arithmetic.
bool within(Cost cost, Ratio ratio, Cost opt);

// ---------------------------------------------------------------------------
// Benchmark sweeps

// Deliberately broken solver outputs, to test that the harness notices.
enum class Fault { DropVertex, MisreportCost };

std::optional<Fault> parse_fault(std::string_view text);

struct BenchConfig {
    std::uint64_t seed_begin = 0;  // half-open seed range
    std::uint64_t seed_end = 0;
    std::vector<std::pair<int, int>> sizes{{8, 2}};             // (n, k)
    std::vector<std::pair<double, double>> fractions{{0.5, 0.2}};  // (required V, required E)
    std::vector<SolverChoice> algorithms{SolverChoice::Alg2};
    int oracle_cap = 10;
    bool with_oracle = true;
    int jobs = 1;
    std::optional<Fault> fault;
};

class BenchConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// Raises BenchConfigError for an unusable configuration, including sizes
// above the oracle cap when the oracle is requested.
void validate_bench_config(const BenchConfig& config);

struct BenchRow {
    std::string instance;
    std::uint64_t seed = 0;
    SolverChoice requested = SolverChoice::Auto;
    int n = 0;
    int k = 0;
    // Set when the generator gave up on this configuration.
    bool generation_failed = false;
    Algorithm algorithm = Algorithm::Alg2;
    Cost cost = 0;
    std::vector<std::string> problems;  // validity check output
    std::optional<Cost> oracle;
    Ratio ceiling;
    // Ledger-based bounds (only Alg3 rows with an oracle).
    std::optional<Cost> t1;
    std::optional<Cost> t2;
    BoundsLedger ledger;
    std::vector<std::string> violations;
    double wall_ms = 0;

    bool ok() const { return problems.empty() && violations.empty(); }
};

struct BenchReport {
    std::vector<BenchRow> rows;

    bool has_violation() const;
};

BenchReport run_bench(const BenchConfig& config);

// Rows in (seed, size, fractions, algorithm) order. Wall times are only
// written when `timing` is set, so that reports stay byte-identical.
std::string report_tsv(const BenchReport& report, bool timing = false);
std::string report_summary(const BenchReport& report);

}  // namespace gcrp
