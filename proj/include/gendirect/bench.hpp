#ifndef GENDIRECT_BENCH_HPP
#define GENDIRECT_BENCH_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gendirect/config.hpp"
#include "gendirect/engine.hpp"
#include "gendirect/problems.hpp"

namespace gendirect {

/// One benchmark run's outcome plus the incumbent trajectory checkpoints
/// needed to evaluate f_min at arbitrary budgets.
struct SuiteRecord {
    std::string problem;
    int n = 0;
    std::string config;
    std::uint64_t seed = 0;
    long long m = 0;
    long long k = 0;
    double f_min = 0.0;
    double pe = std::numeric_limits<double>::quiet_NaN();
    bool solved = false;
    std::string stop_reason;
    double wall_ms = 0.0;
    std::vector<std::pair<long long, double>> checkpoints;  // (m, f_min), m ascending
};

struct NamedConfig {
    std::string name;
    AlgorithmConfig config;
};

/// Runs the full configs x problems x seeds cross product. Problems with a
/// known minimizer are shifted per seed before running. A run stopped by the
/// wall-clock cap records m = n*1e5. Deterministic given the seeds; `jobs`
/// only distributes independent runs across threads.
std::vector<SuiteRecord> run_suite(const std::vector<NamedConfig>& configs,
                                   const std::vector<TestProblem>& problems,
                                   const RunLimits& limits, const std::vector<std::uint64_t>& seeds,
                                   int jobs = 1);

struct DataProfile {
    std::vector<double> budgets;  // evaluations per dimension
    std::map<std::string, std::vector<double>> fraction_solved;  // per config
};

/// Fraction of instances solved within m/n <= budget, per config.
DataProfile data_profile(const std::vector<SuiteRecord>& records, std::vector<double> budgets = {});

/// Per config x facet success percentages; facets with no population are
/// absent from the map. Facet keys: "overall", "<tag>+", "<tag>-" for tags
/// separable / multimodal / scalable.
std::map<std::string, std::map<std::string, double>> success_table(
    const std::vector<SuiteRecord>& records);

/// Friedman mean ranks of the configs by f_min attained at each evaluation
/// budget (budgets are per-dimension, as in n x 10^k). Requires every config
/// to cover the same instances.
std::map<std::string, std::vector<double>> friedman_mean_ranks(
    const std::vector<SuiteRecord>& records, const std::vector<double>& budgets);

std::string records_to_csv(const std::vector<SuiteRecord>& records);
std::string records_to_jsonl(const std::vector<SuiteRecord>& records);
std::vector<SuiteRecord> records_from_jsonl(const std::string& text);
std::string profile_to_csv(const DataProfile& profile);

}  // namespace gendirect

#endif  // GENDIRECT_BENCH_HPP
