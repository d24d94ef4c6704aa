#ifndef GENDIRECT_GEOMETRY_HPP
#define GENDIRECT_GEOMETRY_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gendirect/rational.hpp"

namespace gendirect {

/// A point in the normalized [0,1]^n search space, double coordinates.
using UnitPoint = std::vector<double>;

/// A point with exact binary-ternary rational coordinates.
using RationalPoint = std::vector<Rational>;

inline UnitPoint to_doubles(const RationalPoint& p) {
    UnitPoint out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i].value();
    return out;
}

/// Affine map between the original box [a,b] and the unit cube.
class DomainScaler {
public:
    DomainScaler(std::vector<double> lower, std::vector<double> upper)
        : a_(std::move(lower)), b_(std::move(upper)) {
        if (a_.size() != b_.size())
            throw std::invalid_argument("DomainScaler: bound dimension mismatch");
        if (a_.empty()) throw std::invalid_argument("DomainScaler: empty bounds");
        for (std::size_t j = 0; j < a_.size(); ++j) {
            if (!std::isfinite(a_[j]) || !std::isfinite(b_[j]))
                throw std::invalid_argument("DomainScaler: non-finite bound");
            if (!(a_[j] < b_[j]))
                throw std::invalid_argument("DomainScaler: lower bound must be strictly below upper");
        }
    }

    std::size_t dimension() const { return a_.size(); }
    const std::vector<double>& lower() const { return a_; }
    const std::vector<double>& upper() const { return b_; }

    std::vector<double> to_original(const UnitPoint& x) const {
        check_dim(x.size());
        std::vector<double> out(x.size());
        for (std::size_t j = 0; j < x.size(); ++j)
            out[j] = std::abs(b_[j] - a_[j]) * x[j] + a_[j];
        return out;
    }

    UnitPoint to_unit(const std::vector<double>& x) const {
        check_dim(x.size());
        UnitPoint out(x.size());
        for (std::size_t j = 0; j < x.size(); ++j)
            out[j] = (x[j] - a_[j]) / (b_[j] - a_[j]);
        return out;
    }

private:
    void check_dim(std::size_t n) const {
        if (n != a_.size()) throw std::invalid_argument("DomainScaler: point dimension mismatch");
    }

    std::vector<double> a_, b_;
};

/// Objective callback over the original domain.
using Objective = std::function<double(const std::vector<double>&)>;

/// Memoizes objective values by unit-space position so that schemes sharing
/// sample points (vertices, face midpoints) never pay twice for the same
/// coordinates. Keys are coordinates rounded to 12 decimal digits.
class EvalCache {
public:
    EvalCache(Objective f, DomainScaler scaler)
        : f_(std::move(f)), scaler_(std::move(scaler)) {}

    /// Returns f at the unit point, evaluating at most once per quantized key.
    double evaluate(const UnitPoint& x) {
        Key k = quantize(x);
        auto it = table_.find(k);
        if (it != table_.end()) return it->second;
        double v = f_(scaler_.to_original(x));
        if (!std::isfinite(v))
            throw std::runtime_error("objective returned a non-finite value");
        table_.emplace(std::move(k), v);
        log_.emplace_back(x, v);
        ++evaluations_;
        if (listener_) listener_(x, v);
        return v;
    }

    bool contains(const UnitPoint& x) const { return table_.count(quantize(x)) > 0; }

    /// Number of true objective calls (cache hits excluded).
    std::int64_t evaluations() const { return evaluations_; }

    const DomainScaler& scaler() const { return scaler_; }

    /// Invoked once per distinct evaluation; used by the engine to track the
    /// incumbent without rescanning sample sets.
    void set_listener(std::function<void(const UnitPoint&, double)> fn) { listener_ = std::move(fn); }

    /// All evaluated (point, value) pairs in evaluation order.
    const std::vector<std::pair<UnitPoint, double>>& entries() const { return log_; }

private:
    using Key = std::vector<std::int64_t>;

    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::size_t h = k.size();
            for (auto c : k) h ^= std::hash<std::int64_t>()(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return h;
        }
    };

    static Key quantize(const UnitPoint& x) {
        Key k(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) k[j] = std::llround(x[j] * 1e12);
        return k;
    }

    Objective f_;
    DomainScaler scaler_;
    std::unordered_map<Key, double, KeyHash> table_;
    std::vector<std::pair<UnitPoint, double>> log_;
    std::int64_t evaluations_ = 0;
    std::function<void(const UnitPoint&, double)> listener_;
};

using ElementId = std::int64_t;
using VertexId = std::int32_t;

/// Axis-aligned box in unit space. `splits[j]` counts how many times the
/// lineage divided dimension j, so sides are exactly base^-splits[j] and
/// equal-shape cells compare identical without float noise.
struct HyperRectCell {
    RationalPoint lower, upper;
    std::vector<std::int32_t> splits;
};

struct SimplexCell {
    std::vector<VertexId> vertex_ids;  // n+1 ids into the partition vertex table
};

/// One evaluated sample attached to an element.
struct Sample {
    RationalPoint position;  // exact where representable
    UnitPoint pos;           // double mirror of position
    double value;
};

enum class CellKind { Box, Simplex };

/// A partition cell together with its sample set and selection attributes.
struct Element {
    ElementId id = -1;
    CellKind kind = CellKind::Box;
    HyperRectCell box;
    SimplexCell simplex;
    std::vector<Sample> samples;
    int midpoint_sample = -1;  // index into samples, -1 when the scheme has none
    UnitPoint mid;             // box center / vertex centroid, unit doubles
    double diag = 0.0;         // box diagonal / longest simplex edge, unit space
    double delta = 0.0;        // measure under the active policy
    double aggr = 0.0;         // aggregated function value under the active policy
    double min_sample = std::numeric_limits<double>::infinity();
};

}  // namespace gendirect

#endif  // GENDIRECT_GEOMETRY_HPP
