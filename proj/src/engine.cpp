#include "gendirect/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gendirect {

std::string_view to_string(StopReason r) {
    switch (r) {
        case StopReason::Goal: return "goal";
        case StopReason::PercentError: return "pe";
        case StopReason::Evaluations: return "evals";
        case StopReason::Iterations: return "iters";
        case StopReason::Time: return "time";
    }
    return "?";
}

double percent_error(double f, double f_star) {
    if (f < f_star - 1e-9)
        throw std::runtime_error("percent_error: value undercuts the known optimum");
    return f_star != 0.0 ? 100.0 * (f - f_star) / std::abs(f_star) : 100.0 * f;
}

std::optional<StopReason> should_stop(double f_min, long long m, long long k,
                                      double elapsed_seconds, const RunLimits& limits,
                                      std::optional<double> f_goal, std::optional<double> f_star) {
    if (f_goal && f_min <= *f_goal) return StopReason::Goal;
    if (f_star && percent_error(f_min, *f_star) < limits.pe_tolerance)
        return StopReason::PercentError;
    if (m >= limits.max_evals) return StopReason::Evaluations;
    if (k >= limits.max_iters) return StopReason::Iterations;
    if (limits.max_seconds > 0.0 && elapsed_seconds > limits.max_seconds) return StopReason::Time;
    return std::nullopt;
}

namespace {

struct GroupEntry {
    double aggr;
    ElementId id;
    bool operator<(const GroupEntry& o) const {
        return aggr < o.aggr || (aggr == o.aggr && id > o.id);
    }
};

// Cells whose diagonal is below this are beyond the 12-digit evaluation-cache
// resolution: subdividing them can only replay cached values, so they leave
// the candidate pool.
constexpr double kSelectableDiag = 1e-10;

/// Incremental (delta -> members) index so each iteration flattens groups
/// without re-sorting the whole partition.
class GroupIndex {
public:
    void insert(const Element& e) {
        if (e.diag < kSelectableDiag) return;
        buckets_[e.delta].insert({e.aggr, e.id});
    }

    void erase(const Element& e) {
        if (e.diag < kSelectableDiag) return;
        auto it = buckets_.find(e.delta);
        it->second.erase(it->second.find({e.aggr, e.id}));
        if (it->second.empty()) buckets_.erase(it);
    }

    bool empty() const { return buckets_.empty(); }

    std::vector<MeasureGroup> flatten() const {
        std::vector<MeasureGroup> out;
        for (const auto& [delta, members] : buckets_) {
            bool fresh = out.empty();
            if (!fresh) {
                double rep = out.back().delta;
                fresh = (delta - rep) > 1e-12 * std::max(std::abs(rep), std::abs(delta));
            }
            if (fresh) out.push_back({delta, {}});
            MeasureGroup& g = out.back();
            // Buckets merged under the tolerance arrive delta-ascending; their
            // member runs stay (aggr, id desc)-sorted after a stable merge.
            std::vector<ScoredElement> merged;
            merged.reserve(g.members.size() + members.size());
            auto a = g.members.begin();
            auto b = members.begin();
            while (a != g.members.end() || b != members.end()) {
                bool take_a = b == members.end() ||
                              (a != g.members.end() &&
                               (a->aggr < b->aggr || (a->aggr == b->aggr && a->id > b->id)));
                if (take_a) {
                    merged.push_back(*a);
                    ++a;
                } else {
                    merged.push_back({b->id, delta, b->aggr});
                    ++b;
                }
            }
            g.members = std::move(merged);
        }
        return out;
    }

private:
    struct MemberCmp {
        bool operator()(const GroupEntry& x, const GroupEntry& y) const { return x < y; }
    };
    std::map<double, std::multiset<GroupEntry, MemberCmp>> buckets_;
};

}  // namespace

struct Run::Impl {
    AlgorithmConfig cfg;
    OptProblem problem;
    RunLimits limits;

    DomainScaler scaler;
    EvalCache cache;
    std::unique_ptr<Partition> partition;
    GroupIndex groups;
    EpsilonState eps;
    GlobalBiasState gb;
    HybridDriver hybrid;

    double f_min = std::numeric_limits<double>::infinity();
    UnitPoint x_min_unit;
    long long local_evals = 0;
    long long k = 0;
    bool improved_prev = false;
    std::vector<TraceRow> trace;
    std::optional<StopReason> stopped;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    Impl(const AlgorithmConfig& config, const OptProblem& prob, const RunLimits& lim)
        : cfg(config),
          problem(prob),
          limits(lim),
          scaler(prob.a, prob.b),
          cache(prob.objective, DomainScaler(prob.a, prob.b)),
          eps(make_epsilon_state(config.selection.control_ep, config.selection.ep)),
          hybrid(config.hybridization, prob.n) {
        gb.stagnation_limit = config.gb_stagnation_limit;
        gb.improve_rtol = config.gb_improve_rtol;
        gb.global_cap = config.gb_global_cap;
        if (limits.max_evals <= 0) limits.max_evals = 100000LL * problem.n;

        // The incumbent tracker must be in place before initial sampling.
        cache.set_listener([this](const UnitPoint& x, double v) {
            if (v < f_min) {
                f_min = v;
                x_min_unit = x;
            }
        });
        partition = std::make_unique<Partition>(
            config.partitioning.strategy, config.partitioning.sub_sides, prob.n, &cache,
            ValuePolicy{config.selection.aggr_func_val, config.selection.cand_measure,
                        config.selection.lambda});
        for (const auto& [id, e] : partition->elements()) groups.insert(e);
    }

    long long m() const { return cache.evaluations() + local_evals; }

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    }

    std::optional<StopReason> check_stop() {
        return should_stop(f_min, m(), k, elapsed(), limits, problem.f_goal, problem.f_star);
    }

    void subdivide_tracked(ElementId id) {
        groups.erase(partition->element(id));
        for (ElementId child : partition->subdivide(id)) groups.insert(partition->element(child));
    }

    void step(const std::optional<std::vector<ElementId>>& forced) {
        if (groups.empty()) {
            // Every cell sits below the evaluation-cache resolution; no
            // further iteration can evaluate anything new.
            stopped = StopReason::Iterations;
            return;
        }
        if (k > 0) epsilon_step(eps, improved_prev);

        std::vector<MeasureGroup> view = groups.flatten();
        if (cfg.selection.control_ep == ControlEp::MultiLevel1 ||
            cfg.selection.control_ep == ControlEp::MultiLevel2)
            view = multilevel_restrict(view, eps.current_level);
        if (cfg.selection.globally_biased)
            view = global_bias_filter(gb, view, improved_prev, f_min);

        SelectionContext ctx;
        if (cfg.selection.sol_refin == SolRefin::Median ||
            cfg.selection.sol_refin == SolRefin::Average) {
            std::vector<double> vals;
            for (const auto& [id, e] : partition->elements()) vals.push_back(e.aggr);
            std::sort(vals.begin(), vals.end());
            std::size_t sz = vals.size();
            ctx.f_median = sz % 2 == 1 ? vals[sz / 2] : 0.5 * (vals[sz / 2 - 1] + vals[sz / 2]);
            double sum = 0.0;
            for (double v : vals) sum += v;
            ctx.f_average = sum / static_cast<double>(sz);
        }

        std::vector<ElementId> selected;
        if (forced) {
            selected = *forced;
        } else {
            selected = run_strategy(cfg.selection.strategy, view, f_min, cfg.selection.sol_refin,
                                    eps.current_ep, ctx);
            selected = apply_equal_candidates(selected, cfg.selection.equal_cand, view);
            if (cfg.selection.two_phase) {
                std::vector<ScoredElement> ditems;
                ditems.reserve(partition->size());
                for (const auto& [id, e] : partition->elements()) {
                    if (e.diag < kSelectableDiag) continue;
                    double d2 = 0.0;
                    for (std::size_t j = 0; j < e.mid.size(); ++j) {
                        double d = e.mid[j] - x_min_unit[j];
                        d2 += d * d;
                    }
                    ditems.push_back({id, e.delta, std::sqrt(d2)});
                }
                selected = two_phase_expand(selected, cfg.selection.strategy,
                                            cfg.selection.equal_cand, group_by_measure(ditems));
            }
        }

        // Hybridization starting points snapshot before cells disappear.
        std::vector<std::pair<UnitPoint, std::optional<double>>> poc_starts;
        if (cfg.hybridization.strategy == HybridStrategy::Aggressive) {
            for (ElementId id : selected) {
                const Element& e = partition->element(id);
                std::optional<double> f0;
                if (e.midpoint_sample >= 0)
                    f0 = e.samples[static_cast<std::size_t>(e.midpoint_sample)].value;
                poc_starts.emplace_back(e.mid, f0);
            }
        }

        double f_before = f_min;
        for (ElementId id : selected) {
            subdivide_tracked(id);
            if (m() >= limits.max_evals) break;  // hard budget, checked per element
        }

        if (cfg.hybridization.strategy != HybridStrategy::Off && m() < limits.max_evals) {
            UnitObjective raw = [this](const UnitPoint& x) {
                return problem.objective(scaler.to_original(x));
            };
            bool improved_this_iter = f_min < f_before;
            long long m_before_hybrid = m();
            auto out_of_budget = [&](long long used) {
                return m_before_hybrid + used >= limits.max_evals;
            };
            // Run-level objective limit: local searches stop as soon as the
            // goal or the percent-error target is reached.
            std::optional<double> stop_below;
            if (problem.f_goal) stop_below = *problem.f_goal;
            if (problem.f_star) {
                double fs = *problem.f_star;
                double pe_cap = fs != 0.0 ? fs + limits.pe_tolerance * std::abs(fs) / 100.0
                                          : limits.pe_tolerance / 100.0;
                stop_below = stop_below ? std::min(*stop_below, pe_cap) : pe_cap;
            }
            local_evals += hybrid.step(raw, improved_this_iter, poc_starts, cache.entries(), m(),
                                       out_of_budget, stop_below, f_min, x_min_unit);
        }

        ++k;
        improved_prev = f_min < f_before;
        trace.push_back({k, m(), f_min, static_cast<int>(selected.size()), eps.current_ep,
                         eps.current_level,
                         gb.phase == GlobalBiasState::Phase::Global ? 'G' : 'U'});
    }
};

Run::Run(const AlgorithmConfig& config, const OptProblem& problem, const RunLimits& limits) {
    ConfigValidation v = validate_config(config);
    if (!v.ok()) {
        std::string msg = "invalid config:";
        for (const std::string& e : v.errors) msg += " " + e + ";";
        throw std::invalid_argument(msg);
    }
    if (problem.n < 1) throw std::invalid_argument("OptProblem: dimension must be at least 1");
    if (static_cast<int>(problem.a.size()) != problem.n ||
        static_cast<int>(problem.b.size()) != problem.n)
        throw std::invalid_argument("OptProblem: bound dimension mismatch");
    impl_ = std::make_unique<Impl>(v.config, problem, limits);
}

Run::~Run() = default;

void Run::step(const std::optional<std::vector<ElementId>>& forced) { impl_->step(forced); }

bool Run::running() {
    if (!impl_->stopped) impl_->stopped = impl_->check_stop();
    return !impl_->stopped.has_value();
}

const Partition& Run::partition() const { return *impl_->partition; }
double Run::f_min() const { return impl_->f_min; }
long long Run::evaluations() const { return impl_->m(); }
long long Run::iterations() const { return impl_->k; }

RunResult Run::result() {
    RunResult r;
    r.f_min = impl_->f_min;
    r.x_min = impl_->scaler.to_original(impl_->x_min_unit);
    r.k = impl_->k;
    r.m = impl_->m();
    if (impl_->problem.f_star) r.pe = percent_error(impl_->f_min, *impl_->problem.f_star);
    if (!impl_->stopped) impl_->stopped = impl_->check_stop();
    r.stop_reason = impl_->stopped.value_or(StopReason::Iterations);
    r.trace = impl_->trace;
    return r;
}

RunResult run(const AlgorithmConfig& config, const OptProblem& problem, const RunLimits& limits) {
    Run r(config, problem, limits);
    while (r.running()) r.step();
    return r.result();
}

}  // namespace gendirect
