#include "gendirect/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gendirect {

namespace {

double initial_step(LocalSearchKind kind) {
    switch (kind) {
        case LocalSearchKind::InteriorPoint:
        case LocalSearchKind::SqpLegacy: return 0.05;
        case LocalSearchKind::Sqp:
        case LocalSearchKind::ActiveSet: return 0.02;
    }
    return 0.05;
}

void clamp_unit(UnitPoint& x) {
    for (double& c : x) c = std::min(1.0, std::max(0.0, c));
}

struct Budget {
    const UnitObjective& f;
    long long cap;
    long long used = 0;

    bool spent() const { return used >= cap; }

    double eval(UnitPoint x) {
        clamp_unit(x);
        ++used;
        return f(x);
    }
};

}  // namespace

LocalSearchResult local_search(const UnitObjective& f, UnitPoint x0, std::optional<double> f0,
                               const HybridConfig& cfg, std::optional<double> stop_below) {
    const std::size_t n = x0.size();
    clamp_unit(x0);
    Budget budget{f, cfg.max_evaluations};

    // A zero budget still reports f(x0), at the cost of that one evaluation.
    double fx0 = f0.has_value() ? *f0 : budget.eval(x0);
    UnitPoint best_x = x0;
    double best_f = fx0;
    auto done = [&] {
        return budget.spent() || (stop_below && best_f <= *stop_below);
    };
    if (done()) return {best_x, best_f, budget.used};

    auto note = [&](const UnitPoint& x, double v) {
        if (v < best_f) {
            best_f = v;
            best_x = x;
        }
    };

    // Simplex-reflection descent, candidates projected onto the box.
    double step = initial_step(cfg.local_search);
    std::vector<UnitPoint> xs(n + 1, x0);
    std::vector<double> fs(n + 1, fx0);
    for (std::size_t i = 0; i < n && !done(); ++i) {
        UnitPoint& v = xs[i + 1];
        v[i] += (v[i] + step <= 1.0) ? step : -step;
        fs[i + 1] = budget.eval(v);
        note(v, fs[i + 1]);
    }

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    std::vector<std::size_t> order(n + 1);
    for (int it = 0; it < cfg.max_iterations && !done(); ++it) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
        double fbest = fs[order[0]], fworst = fs[order[n]];
        if (std::abs(fworst - fbest) <= 1e-12 * (1.0 + std::abs(fbest))) break;

        UnitPoint centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += xs[order[i]][j] / static_cast<double>(n);

        const UnitPoint& worst = xs[order[n]];
        UnitPoint xr(n);
        for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + alpha * (centroid[j] - worst[j]);
        clamp_unit(xr);
        double fr = budget.eval(xr);
        note(xr, fr);

        if (fr < fs[order[0]] && !done()) {
            UnitPoint xe(n);
            for (std::size_t j = 0; j < n; ++j) xe[j] = centroid[j] + gamma * (xr[j] - centroid[j]);
            clamp_unit(xe);
            double fe = budget.eval(xe);
            note(xe, fe);
            if (fe < fr) {
                xs[order[n]] = xe;
                fs[order[n]] = fe;
            } else {
                xs[order[n]] = xr;
                fs[order[n]] = fr;
            }
        } else if (fr < fs[order[n - 1]]) {
            xs[order[n]] = xr;
            fs[order[n]] = fr;
        } else if (!done()) {
            UnitPoint xc(n);
            for (std::size_t j = 0; j < n; ++j) xc[j] = centroid[j] + rho * (worst[j] - centroid[j]);
            clamp_unit(xc);
            double fc = budget.eval(xc);
            note(xc, fc);
            if (fc < fs[order[n]]) {
                xs[order[n]] = xc;
                fs[order[n]] = fc;
            } else {
                for (std::size_t i = 1; i <= n && !done(); ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        xs[order[i]][j] = xs[order[0]][j] + sigma * (xs[order[i]][j] - xs[order[0]][j]);
                    fs[order[i]] = budget.eval(xs[order[i]]);
                    note(xs[order[i]], fs[order[i]]);
                }
            }
        }
    }

    // Coordinate-pattern polish; picks up descent directions the simplex loses
    // when it collapses against a face.
    double pstep = 0.25 * step;
    while (pstep > 1e-12 && !done()) {
        bool moved = false;
        for (std::size_t j = 0; j < n && !done(); ++j) {
            for (double dir : {+1.0, -1.0}) {
                if (done()) break;
                UnitPoint cand = best_x;
                cand[j] += dir * pstep;
                if (cand[j] < 0.0 || cand[j] > 1.0) continue;
                double fc = budget.eval(cand);
                if (fc < best_f) {
                    best_f = fc;
                    best_x = cand;
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) pstep *= 0.5;
    }

    return {best_x, best_f, budget.used};
}

std::vector<UnitPoint> cluster_points(const std::vector<UnitPoint>& points,
                                      const std::vector<double>& values) {
    if (points.empty()) throw std::invalid_argument("cluster_points: empty archive");
    if (points.size() != values.size())
        throw std::invalid_argument("cluster_points: points/values size mismatch");

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::size_t m = sorted.size();
    double median =
        m % 2 == 1 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (values[i] <= median) keep.push_back(i);

    const std::size_t n = points[keep.front()].size();
    const double threshold = 0.1 * std::sqrt(static_cast<double>(n));
    const double thr2 = threshold * threshold;

    // Single-linkage via union-find.
    std::vector<std::size_t> parent(keep.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = i + 1; j < keep.size(); ++j) {
            double d2 = 0.0;
            const UnitPoint& pi = points[keep[i]];
            const UnitPoint& pj = points[keep[j]];
            for (std::size_t c = 0; c < n; ++c) {
                double d = pi[c] - pj[c];
                d2 += d * d;
            }
            if (d2 <= thr2) parent[find(i)] = find(j);
        }

    std::vector<std::size_t> root_best(keep.size(), SIZE_MAX);
    std::vector<std::size_t> roots;  // discovery order
    for (std::size_t i = 0; i < keep.size(); ++i) {
        std::size_t r = find(i);
        if (root_best[r] == SIZE_MAX) {
            roots.push_back(r);
            root_best[r] = i;
        } else if (values[keep[i]] < values[keep[root_best[r]]]) {
            root_best[r] = i;
        }
    }
    std::vector<UnitPoint> out;
    out.reserve(roots.size());
    for (std::size_t r : roots) out.push_back(points[keep[root_best[r]]]);
    return out;
}

long long HybridDriver::launch(const UnitObjective& f, const UnitPoint& x0,
                               std::optional<double> f0, std::optional<double> stop_below,
                               double& f_min, UnitPoint& x_min) const {
    LocalSearchResult r = local_search(f, x0, f0, cfg_, stop_below);
    if (r.f < f_min) {
        f_min = r.f;
        x_min = r.x;
    }
    return r.evals_used;
}

long long HybridDriver::step(const UnitObjective& f, bool improved_this_iter,
                             const std::vector<std::pair<UnitPoint, std::optional<double>>>& poc_starts,
                             const std::vector<std::pair<UnitPoint, double>>& archive,
                             long long m_total,
                             const std::function<bool(long long)>& out_of_budget,
                             std::optional<double> stop_below, double& f_min, UnitPoint& x_min) {
    long long used = 0;
    switch (cfg_.strategy) {
        case HybridStrategy::Off: return 0;

        case HybridStrategy::Single:
            if (improved_this_iter && !out_of_budget(used))
                used += launch(f, x_min, f_min, stop_below, f_min, x_min);
            return used;

        case HybridStrategy::Aggressive: {
            std::vector<UnitPoint> launched;
            for (const auto& [start, value] : poc_starts) {
                if (out_of_budget(used)) break;
                if (stop_below && f_min <= *stop_below) break;
                bool dup = false;
                for (const UnitPoint& prev : launched) {
                    double d2 = 0.0;
                    for (std::size_t j = 0; j < start.size(); ++j) {
                        double d = start[j] - prev[j];
                        d2 += d * d;
                    }
                    if (d2 <= 1e-6 * 1e-6) {
                        dup = true;
                        break;
                    }
                }
                if (dup) continue;
                launched.push_back(start);
                used += launch(f, start, value, stop_below, f_min, x_min);
            }
            return used;
        }

        case HybridStrategy::Clustering: {
            if (!clustering_done_) {
                if (m_total < 100LL * n_ + 1) return 0;
                std::vector<UnitPoint> pts;
                std::vector<double> vals;
                pts.reserve(archive.size());
                vals.reserve(archive.size());
                for (const auto& [p, v] : archive) {
                    pts.push_back(p);
                    vals.push_back(v);
                }
                std::vector<UnitPoint> starts = cluster_points(pts, vals);
                for (const UnitPoint& s : starts) {
                    if (out_of_budget(used)) break;
                    if (stop_below && f_min <= *stop_below) break;
                    used += launch(f, s, std::nullopt, stop_below, f_min, x_min);
                }
                clustering_done_ = true;
                return used;
            }
            // After the clustering round the strategy degenerates to Single.
            if (improved_this_iter && !out_of_budget(used))
                used += launch(f, x_min, f_min, stop_below, f_min, x_min);
            return used;
        }
    }
    return used;
}

}  // namespace gendirect
