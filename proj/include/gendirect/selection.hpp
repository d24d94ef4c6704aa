#ifndef GENDIRECT_SELECTION_HPP
#define GENDIRECT_SELECTION_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "gendirect/geometry.hpp"
#include "gendirect/options.hpp"

namespace gendirect {

/// Selection-facing view of an element: its id, measure and aggregated value.
struct ScoredElement {
    ElementId id;
    double delta;
    double aggr;
};

/// Elements sharing one measure, ordered by (aggr ascending, id descending).
struct MeasureGroup {
    double delta = 0.0;
    std::vector<ScoredElement> members;
};

/// Groups elements by measure (relative tolerance 1e-12), ascending delta.
std::vector<MeasureGroup> group_by_measure(std::vector<ScoredElement> items);

struct SelectionContext {
    double f_median = std::numeric_limits<double>::quiet_NaN();
    double f_average = std::numeric_limits<double>::quiet_NaN();
};

/// Candidates admitting a Lipschitz constant that makes their lower bound
/// best-possible and undercuts f_min by the active refinement margin.
/// Implemented as the lower-right convex hull of per-group best points.
/// Returns one representative id per selected group.
std::vector<ElementId> select_original(const std::vector<MeasureGroup>& groups, double f_min,
                                       SolRefin sol_refin, double ep,
                                       const SelectionContext& ctx = {});

/// Lowest-aggr member of every measure group.
std::vector<ElementId> select_aggressive(const std::vector<MeasureGroup>& groups);

/// Non-dominated candidates: larger measure better, smaller aggr better.
std::vector<ElementId> select_pareto(const std::vector<MeasureGroup>& groups);

/// The two Pareto extremes: lowest aggr overall and largest measure.
std::vector<ElementId> select_reduced_pareto(const std::vector<MeasureGroup>& groups);

/// Expands or collapses ties on (delta, aggr): All keeps every tied element,
/// One keeps the highest id per tied cluster.
std::vector<ElementId> apply_equal_candidates(const std::vector<ElementId>& selected,
                                              EqualCand equal_cand,
                                              const std::vector<MeasureGroup>& groups);

/// Runs one strategy uniformly (refinement applies to Original only).
std::vector<ElementId> run_strategy(SelectionStrategy strategy,
                                    const std::vector<MeasureGroup>& groups, double f_min,
                                    SolRefin sol_refin, double ep, const SelectionContext& ctx);

/// State machine for the epsilon-control techniques.
struct EpsilonState {
    ControlEp mode = ControlEp::Off;
    double base_ep = 1e-4;
    double current_ep = 1e-4;
    int stagnation_counter = 0;  // consecutive iterations without improvement
    int phase_counter = 0;       // iterations spent in the current regime
    int cycle_index = 0;         // position in the W-cycle "21011012"
    int current_level = 2;
};

EpsilonState make_epsilon_state(ControlEp mode, double base_ep);

/// Advances the state by one iteration given whether f_min improved during
/// the previous one.
void epsilon_step(EpsilonState& state, bool improved);

/// Level restriction of the multi-level techniques: level 2 keeps all groups,
/// level 0 keeps only the largest-measure 10% of elements (whole groups,
/// quota ceil(0.1 * count)), level 1 keeps the complement.
std::vector<MeasureGroup> multilevel_restrict(const std::vector<MeasureGroup>& groups, int level);

/// Two-phase (usual / globally-biased) selection state.
struct GlobalBiasState {
    enum class Phase { Usual, Global };
    Phase phase = Phase::Usual;
    int stagnation_counter = 0;
    int global_iterations_used = 0;
    double min_measure_threshold = 0.0;
    double reference_f_min = std::numeric_limits<double>::infinity();
    // tuning
    int stagnation_limit = 10;
    double improve_rtol = 1e-4;
    int global_cap = 10;
};

/// In the global phase only groups with delta at or above the frozen median
/// threshold survive; the phase ends on improvement or after the cap.
std::vector<MeasureGroup> global_bias_filter(GlobalBiasState& state,
                                             const std::vector<MeasureGroup>& groups,
                                             bool improved, double f_min);

/// Distances to the incumbent replace aggregated values and the configured
/// strategy runs once more; the result is unioned with `selected`.
/// `distance_groups` must carry the same ids/deltas with aggr = distance.
std::vector<ElementId> two_phase_expand(const std::vector<ElementId>& selected,
                                        SelectionStrategy strategy, EqualCand equal_cand,
                                        const std::vector<MeasureGroup>& distance_groups);

}  // namespace gendirect

#endif  // GENDIRECT_SELECTION_HPP
