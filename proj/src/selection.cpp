#include "gendirect/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace gendirect {

namespace {

constexpr double kGroupRelTol = 1e-12;
constexpr const char* kWCycle = "21011012";

double refinement_threshold(SolRefin mode, double f_min, double ep, const SelectionContext& ctx) {
    switch (mode) {
        case SolRefin::Min: return f_min - ep * std::abs(f_min);
        case SolRefin::Median: return f_min - ep * std::abs(f_min - ctx.f_median);
        case SolRefin::Average: return f_min - ep * std::abs(f_min - ctx.f_average);
        case SolRefin::Off: return std::numeric_limits<double>::infinity();
    }
    throw std::logic_error("refinement_threshold: unknown mode");
}

}  // namespace

std::vector<MeasureGroup> group_by_measure(std::vector<ScoredElement> items) {
    if (items.empty()) throw std::invalid_argument("group_by_measure: empty partition");
    std::sort(items.begin(), items.end(), [](const ScoredElement& a, const ScoredElement& b) {
        return a.delta < b.delta || (a.delta == b.delta && a.id < b.id);
    });
    std::vector<MeasureGroup> groups;
    for (const ScoredElement& e : items) {
        bool fresh = groups.empty();
        if (!fresh) {
            double rep = groups.back().delta;
            fresh = (e.delta - rep) > kGroupRelTol * std::max(std::abs(rep), std::abs(e.delta));
        }
        if (fresh) {
            groups.push_back({e.delta, {}});
        }
        groups.back().members.push_back(e);
    }
    for (MeasureGroup& g : groups)
        std::sort(g.members.begin(), g.members.end(),
                  [](const ScoredElement& a, const ScoredElement& b) {
                      return a.aggr < b.aggr || (a.aggr == b.aggr && a.id > b.id);
                  });
    return groups;
}

std::vector<ElementId> select_original(const std::vector<MeasureGroup>& groups, double f_min,
                                       SolRefin sol_refin, double ep,
                                       const SelectionContext& ctx) {
    if (groups.empty()) throw std::invalid_argument("select_original: empty input");

    struct Pt {
        double d, f;
        ElementId id;
    };
    std::vector<Pt> pts;
    pts.reserve(groups.size());
    for (const MeasureGroup& g : groups)
        pts.push_back({g.delta, g.members.front().aggr, g.members.front().id});

    // Lower envelope over (delta, aggr), keeping collinear points: any point a
    // positive-slope line can touch first admits a valid rate-of-change
    // constant.
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (hull.size() >= 2) {
            const Pt& a = pts[hull[hull.size() - 2]];
            const Pt& b = pts[hull[hull.size() - 1]];
            double cross = (b.d - a.d) * (pts[i].f - a.f) - (b.f - a.f) * (pts[i].d - a.d);
            if (cross < 0.0) hull.pop_back();
            else break;
        }
        hull.push_back(i);
    }

    double threshold = refinement_threshold(sol_refin, f_min, ep, ctx);
    std::vector<ElementId> out;
    for (std::size_t h = 0; h < hull.size(); ++h) {
        const Pt& p = pts[hull[h]];
        double slope_next = std::numeric_limits<double>::infinity();
        if (h + 1 < hull.size()) {
            const Pt& q = pts[hull[h + 1]];
            slope_next = (q.f - p.f) / (q.d - p.d);
        }
        if (!(slope_next > 0.0)) continue;  // no positive constant reaches this point
        if (sol_refin != SolRefin::Off && h + 1 < hull.size()) {
            // Largest admissible constant is the slope to the next hull point.
            if (!(p.f - slope_next * p.d <= threshold)) continue;
        }
        out.push_back(p.id);
    }
    return out;
}

std::vector<ElementId> select_aggressive(const std::vector<MeasureGroup>& groups) {
    if (groups.empty()) throw std::invalid_argument("select_aggressive: empty input");
    std::vector<ElementId> out;
    out.reserve(groups.size());
    for (const MeasureGroup& g : groups) out.push_back(g.members.front().id);
    return out;
}

std::vector<ElementId> select_pareto(const std::vector<MeasureGroup>& groups) {
    if (groups.empty()) throw std::invalid_argument("select_pareto: empty input");
    // Scan from the largest measure down: a group's best survives only if it
    // strictly undercuts every best seen at larger measures.
    std::vector<ElementId> out;
    double best_f = std::numeric_limits<double>::infinity();
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        double f = it->members.front().aggr;
        if (f < best_f) {
            out.push_back(it->members.front().id);
            best_f = f;
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<ElementId> select_reduced_pareto(const std::vector<MeasureGroup>& groups) {
    if (groups.empty()) throw std::invalid_argument("select_reduced_pareto: empty input");
    const ScoredElement* min_f = nullptr;
    for (const MeasureGroup& g : groups) {
        const ScoredElement& cand = g.members.front();
        // Ties on aggr resolve toward the larger measure (groups ascend).
        if (min_f == nullptr || cand.aggr <= min_f->aggr) min_f = &cand;
    }
    const ScoredElement& max_d = groups.back().members.front();
    std::vector<ElementId> out{min_f->id};
    if (max_d.id != min_f->id) out.push_back(max_d.id);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ElementId> apply_equal_candidates(const std::vector<ElementId>& selected,
                                              EqualCand equal_cand,
                                              const std::vector<MeasureGroup>& groups) {
    std::unordered_map<ElementId, std::pair<const MeasureGroup*, double>> where;
    for (const MeasureGroup& g : groups)
        for (const ScoredElement& e : g.members) where[e.id] = {&g, e.aggr};

    std::vector<ElementId> out;
    for (ElementId id : selected) {
        auto it = where.find(id);
        if (it == where.end()) throw std::invalid_argument("apply_equal_candidates: unknown id");
        const auto& [group, aggr] = it->second;
        if (equal_cand == EqualCand::All) {
            for (const ScoredElement& e : group->members)
                if (e.aggr == aggr) out.push_back(e.id);
        } else {
            // Members are ordered (aggr asc, id desc): the first member of the
            // tied run carries the highest index.
            ElementId keep = id;
            for (const ScoredElement& e : group->members)
                if (e.aggr == aggr) {
                    keep = e.id;
                    break;
                }
            out.push_back(keep);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<ElementId> run_strategy(SelectionStrategy strategy,
                                    const std::vector<MeasureGroup>& groups, double f_min,
                                    SolRefin sol_refin, double ep, const SelectionContext& ctx) {
    switch (strategy) {
        case SelectionStrategy::Original:
            return select_original(groups, f_min, sol_refin, ep, ctx);
        case SelectionStrategy::Aggressive: return select_aggressive(groups);
        case SelectionStrategy::Pareto: return select_pareto(groups);
        case SelectionStrategy::RedPareto: return select_reduced_pareto(groups);
    }
    throw std::logic_error("run_strategy: unknown strategy");
}

EpsilonState make_epsilon_state(ControlEp mode, double base_ep) {
    EpsilonState s;
    s.mode = mode;
    s.base_ep = base_ep;
    switch (mode) {
        case ControlEp::Off: s.current_ep = base_ep; break;
        case ControlEp::Restart: s.current_ep = 0.0; break;
        case ControlEp::MultiLevel1:
            s.current_level = 2;
            s.current_ep = 1e-4;
            break;
        case ControlEp::MultiLevel2:
            s.current_level = 2;
            s.current_ep = 1e-5;
            break;
    }
    return s;
}

namespace {

double multilevel2_ep(int level) {
    switch (level) {
        case 2: return 1e-5;
        case 1: return 1e-7;
        default: return 0.0;
    }
}

}  // namespace

void epsilon_step(EpsilonState& state, bool improved) {
    switch (state.mode) {
        case ControlEp::Off: return;
        case ControlEp::Restart: {
            if (state.current_ep == 0.0) {
                if (improved) {
                    state.stagnation_counter = 0;
                } else if (++state.stagnation_counter >= 5) {
                    state.current_ep = 0.01;
                    state.stagnation_counter = 0;
                    state.phase_counter = 0;
                }
            } else {
                // Leave the 0.01 regime on improvement, or once 50 iterations
                // pass without any.
                ++state.phase_counter;
                if (improved || state.phase_counter >= 50) {
                    state.current_ep = 0.0;
                    state.stagnation_counter = 0;
                    state.phase_counter = 0;
                }
            }
            return;
        }
        case ControlEp::MultiLevel1:
        case ControlEp::MultiLevel2: {
            state.cycle_index = (state.cycle_index + 1) % 8;
            state.current_level = kWCycle[static_cast<std::size_t>(state.cycle_index)] - '0';
            state.current_ep =
                state.mode == ControlEp::MultiLevel1 ? 1e-4 : multilevel2_ep(state.current_level);
            return;
        }
    }
}

std::vector<MeasureGroup> multilevel_restrict(const std::vector<MeasureGroup>& groups, int level) {
    if (level >= 2) return groups;
    std::size_t total = 0;
    for (const MeasureGroup& g : groups) total += g.members.size();
    std::size_t quota = (total + 9) / 10;  // ceil(0.10 * count)

    // Whole groups from the largest measure down until the quota is met.
    std::size_t cut = groups.size();  // first index belonging to the large set
    std::size_t picked = 0;
    while (cut > 0 && picked < quota) {
        --cut;
        picked += groups[cut].members.size();
    }
    std::vector<MeasureGroup> out;
    if (level == 0) {
        out.assign(groups.begin() + static_cast<std::ptrdiff_t>(cut), groups.end());
    } else {
        out.assign(groups.begin(), groups.begin() + static_cast<std::ptrdiff_t>(cut));
        if (out.empty()) out = groups;  // never hand selection an empty partition view
    }
    return out;
}

std::vector<MeasureGroup> global_bias_filter(GlobalBiasState& state,
                                             const std::vector<MeasureGroup>& groups,
                                             bool improved, double f_min) {
    auto significant = [&](double ref) {
        return (ref - f_min) > state.improve_rtol * std::max(1.0, std::abs(ref));
    };

    if (state.phase == GlobalBiasState::Phase::Usual) {
        if (significant(state.reference_f_min)) {
            state.reference_f_min = f_min;
            state.stagnation_counter = 0;
        } else {
            ++state.stagnation_counter;
        }
        if (state.stagnation_counter < state.stagnation_limit) return groups;

        // Enter the global phase; the size threshold freezes at the median
        // measure of the current groups.
        state.phase = GlobalBiasState::Phase::Global;
        state.global_iterations_used = 0;
        state.stagnation_counter = 0;
        std::size_t g = groups.size();
        state.min_measure_threshold = g % 2 == 1
                                          ? groups[g / 2].delta
                                          : 0.5 * (groups[g / 2 - 1].delta + groups[g / 2].delta);
    } else {
        if (improved || ++state.global_iterations_used > state.global_cap) {
            state.phase = GlobalBiasState::Phase::Usual;
            state.stagnation_counter = 0;
            state.reference_f_min = f_min;
            return groups;
        }
    }

    std::vector<MeasureGroup> out;
    for (const MeasureGroup& g : groups)
        if (g.delta >= state.min_measure_threshold) out.push_back(g);
    if (out.empty()) out = groups;
    return out;
}

std::vector<ElementId> two_phase_expand(const std::vector<ElementId>& selected,
                                        SelectionStrategy strategy, EqualCand equal_cand,
                                        const std::vector<MeasureGroup>& distance_groups) {
    double dist_min = std::numeric_limits<double>::infinity();
    for (const MeasureGroup& g : distance_groups)
        dist_min = std::min(dist_min, g.members.front().aggr);
    std::vector<ElementId> extra =
        run_strategy(strategy, distance_groups, dist_min, SolRefin::Off, 0.0, {});
    extra = apply_equal_candidates(extra, equal_cand, distance_groups);

    std::vector<ElementId> out = selected;
    out.insert(out.end(), extra.begin(), extra.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace gendirect
