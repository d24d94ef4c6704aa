#ifndef GENDIRECT_ENGINE_HPP
#define GENDIRECT_ENGINE_HPP

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gendirect/config.hpp"
#include "gendirect/hybrid.hpp"
#include "gendirect/partition.hpp"
#include "gendirect/selection.hpp"

namespace gendirect {

/// A box-constrained minimization problem in original units.
struct OptProblem {
    std::string name;
    Objective objective;
    int n = 0;
    std::vector<double> a, b;
    std::optional<double> f_star;               // known optimal value
    std::optional<std::vector<double>> x_star;  // known minimizer
    std::optional<double> f_goal;               // production-mode target
};

struct RunLimits {
    long long max_evals = 0;   // 0: defaults to n * 1e5
    long long max_iters = 1'000'000'000;
    double max_seconds = 0.0;  // 0: no wall-clock limit
    double pe_tolerance = 0.01;
};

enum class StopReason { Goal, PercentError, Evaluations, Iterations, Time };

std::string_view to_string(StopReason r);

/// Percent error against a known optimum (the benchmark success metric).
/// Throws if f undercuts f_star by more than 1e-9, which signals a broken
/// reference value or an evaluation bug.
double percent_error(double f, double f_star);

/// Stop check in priority order: goal, percent error, evaluations,
/// iterations, time.
std::optional<StopReason> should_stop(double f_min, long long m, long long k,
                                      double elapsed_seconds, const RunLimits& limits,
                                      std::optional<double> f_goal, std::optional<double> f_star);

struct TraceRow {
    long long k;
    long long m;
    double f_min;
    int selected;
    double ep;
    int level;   // multi-level restriction level (2 when inactive)
    char phase;  // 'U' usual / 'G' globally-biased
};

struct RunResult {
    double f_min = 0.0;
    std::vector<double> x_min;  // original units
    long long k = 0;
    long long m = 0;
    std::optional<double> pe;
    StopReason stop_reason = StopReason::Iterations;
    std::vector<TraceRow> trace;
};

/// One in-flight optimization run; step() executes one selection /
/// subdivision / hybridization cycle. Exposed so tests can drive iterations
/// with a pinned candidate set.
class Run {
public:
    Run(const AlgorithmConfig& config, const OptProblem& problem, const RunLimits& limits);
    ~Run();

    Run(const Run&) = delete;
    Run& operator=(const Run&) = delete;

    /// Executes one iteration; `forced` overrides candidate selection.
    void step(const std::optional<std::vector<ElementId>>& forced = std::nullopt);

    /// True while no stopping condition holds.
    bool running();

    RunResult result();

    const Partition& partition() const;
    double f_min() const;
    long long evaluations() const;
    long long iterations() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Executes Algorithm-1 end to end: normalize, initialize, iterate until a
/// stopping rule fires.
RunResult run(const AlgorithmConfig& config, const OptProblem& problem, const RunLimits& limits);

}  // namespace gendirect

#endif  // GENDIRECT_ENGINE_HPP
