#ifndef GENDIRECT_SCORING_HPP
#define GENDIRECT_SCORING_HPP

#include <stdexcept>

#include "gendirect/geometry.hpp"
#include "gendirect/options.hpp"

namespace gendirect {

/// Aggregated function value of an element under the given strategy.
/// Midpoint/MidMin require a midpoint sample; callers resolve scheme
/// fallbacks before calling (see effective_aggr).
inline double aggregate_value(const Element& e, AggrFuncVal mode) {
    if (e.samples.empty()) throw std::invalid_argument("aggregate_value: empty sample set");
    switch (mode) {
        case AggrFuncVal::Midpoint:
            if (e.midpoint_sample < 0)
                throw std::invalid_argument("aggregate_value: element has no midpoint sample");
            return e.samples[static_cast<std::size_t>(e.midpoint_sample)].value;
        case AggrFuncVal::Minimum: {
            double m = e.samples[0].value;
            for (const Sample& s : e.samples) m = std::min(m, s.value);
            return m;
        }
        case AggrFuncVal::Mean: {
            double sum = 0.0;
            for (const Sample& s : e.samples) sum += s.value;
            return sum / static_cast<double>(e.samples.size());
        }
        case AggrFuncVal::MidMin: {
            if (e.midpoint_sample < 0)
                throw std::invalid_argument("aggregate_value: element has no midpoint sample");
            double m = e.samples[0].value;
            for (const Sample& s : e.samples) m = std::min(m, s.value);
            return 0.5 * (m + e.samples[static_cast<std::size_t>(e.midpoint_sample)].value);
        }
    }
    throw std::logic_error("aggregate_value: unknown mode");
}

/// Measure of an element: a lambda fraction of its diagonal, or the largest
/// pairwise distance among its sample points.
inline double measure(const Element& e, CandMeasure mode, double lambda, double diag) {
    if (mode == CandMeasure::LongSide && e.samples.size() >= 2) {
        double best = 0.0;
        for (std::size_t i = 0; i < e.samples.size(); ++i)
            for (std::size_t j = i + 1; j < e.samples.size(); ++j) {
                double d2 = 0.0;
                for (std::size_t c = 0; c < e.samples[i].pos.size(); ++c) {
                    double dd = e.samples[i].pos[c] - e.samples[j].pos[c];
                    d2 += dd * dd;
                }
                best = std::max(best, d2);
            }
        return std::sqrt(best);
    }
    return lambda * diag;
}

/// Aggregation mode actually applied for a scheme: midpoint-based modes fall
/// back to Minimum when the scheme never evaluates element midpoints.
inline AggrFuncVal effective_aggr(AggrFuncVal requested, PartitionScheme scheme) {
    if ((requested == AggrFuncVal::Midpoint || requested == AggrFuncVal::MidMin) &&
        !scheme_samples_midpoint(scheme))
        return AggrFuncVal::Minimum;
    return requested;
}

/// Measure mode actually applied: LongSide degenerates on single-sample
/// schemes, where it falls back to Diagonal.
inline CandMeasure effective_measure(CandMeasure requested, PartitionScheme scheme) {
    if (requested == CandMeasure::LongSide && scheme_single_sample(scheme))
        return CandMeasure::Diagonal;
    return requested;
}

/// How new elements get their delta/aggr attributes stamped at creation.
struct ValuePolicy {
    AggrFuncVal aggr = AggrFuncVal::Midpoint;
    CandMeasure cand_measure = CandMeasure::Diagonal;
    double lambda = 0.0;  // <= 0 means per-scheme default
};

}  // namespace gendirect

#endif  // GENDIRECT_SCORING_HPP
