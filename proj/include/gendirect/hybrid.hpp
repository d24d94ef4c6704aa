#ifndef GENDIRECT_HYBRID_HPP
#define GENDIRECT_HYBRID_HPP

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "gendirect/geometry.hpp"
#include "gendirect/options.hpp"

namespace gendirect {

struct HybridConfig {
    HybridStrategy strategy = HybridStrategy::Off;
    LocalSearchKind local_search = LocalSearchKind::InteriorPoint;
    int max_iterations = 1000;
    int max_evaluations = 3000;
};

struct LocalSearchResult {
    UnitPoint x;
    double f;
    long long evals_used;
};

/// Objective over the unit cube (scaling applied by the caller).
using UnitObjective = std::function<double(const UnitPoint&)>;

/// Bounded derivative-free descent from x0 inside [0,1]^n: a box-projected
/// simplex-reflection search with a coordinate-pattern polish near bounds.
/// The four solver names select the initial step only. Never returns a point
/// worse than the start; every objective call is counted. `stop_below` is the
/// run-level objective limit: the search returns as soon as it falls at or
/// under it.
LocalSearchResult local_search(const UnitObjective& f, UnitPoint x0, std::optional<double> f0,
                               const HybridConfig& cfg,
                               std::optional<double> stop_below = std::nullopt);

/// Splits the below-median part of the archive into single-linkage clusters
/// (threshold 0.1*sqrt(n)) and returns the best point of each cluster.
std::vector<UnitPoint> cluster_points(const std::vector<UnitPoint>& points,
                                      const std::vector<double>& values);

/// Runs the configured hybridization strategy once per engine iteration.
class HybridDriver {
public:
    HybridDriver(HybridConfig cfg, int n) : cfg_(std::move(cfg)), n_(n) {}

    const HybridConfig& config() const { return cfg_; }

    /// Launches local searches per the strategy and folds improvements into
    /// f_min / x_min. `out_of_budget` is consulted before every launch;
    /// `stop_below` propagates the run's objective limit into each search.
    /// Returns the number of objective evaluations spent.
    long long step(const UnitObjective& f, bool improved_this_iter,
                   const std::vector<std::pair<UnitPoint, std::optional<double>>>& poc_starts,
                   const std::vector<std::pair<UnitPoint, double>>& archive, long long m_total,
                   const std::function<bool(long long used_so_far)>& out_of_budget,
                   std::optional<double> stop_below, double& f_min, UnitPoint& x_min);

private:
    long long launch(const UnitObjective& f, const UnitPoint& x0, std::optional<double> f0,
                     std::optional<double> stop_below, double& f_min, UnitPoint& x_min) const;

    HybridConfig cfg_;
    int n_;
    bool clustering_done_ = false;
};

}  // namespace gendirect

#endif  // GENDIRECT_HYBRID_HPP
