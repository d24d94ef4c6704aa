// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code equals the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gendirect/bench.hpp"
#include "gendirect/config.hpp"
#include "gendirect/engine.hpp"
#include "gendirect/partition.hpp"
#include "gendirect/problems.hpp"
#include "gendirect/selection.hpp"

#include "oracles.hpp"

using namespace gendirect;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
};

double rat(long long num, int p, int q) { return Rational::make(num, p, q).value(); }

using PointSet = std::set<std::vector<double>>;

PointSet eval_points(const EvalCache& cache) {
    PointSet out;
    for (const auto& [p, v] : cache.entries()) out.insert(p);
    return out;
}

OptProblem unit_problem(int n) {
    OptProblem p;
    p.name = "unit";
    p.objective = [](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += std::sin(13.7 * x[i] + 1.3 * static_cast<double>(i) + 0.2);
        return s;
    };
    p.n = n;
    p.a.assign(static_cast<std::size_t>(n), 0.0);
    p.b.assign(static_cast<std::size_t>(n), 1.0);
    return p;
}

AlgorithmConfig scheme_config(PartitionScheme scheme) {
    AlgorithmConfig c;
    c.partitioning.strategy = scheme;
    c.partitioning.sub_sides = SideRule::One;
    return validate_config(c).config;
}

ElementId find_box(const Partition& part, const std::vector<std::pair<double, double>>& bounds) {
    for (const auto& [id, e] : part.elements()) {
        if (e.kind != CellKind::Box) continue;
        bool match = true;
        for (std::size_t j = 0; match && j < bounds.size(); ++j)
            match = e.box.lower[j].value() == bounds[j].first &&
                    e.box.upper[j].value() == bounds[j].second;
        if (match) return id;
    }
    return -1;
}

ElementId find_simplex(const Partition& part, const PointSet& vertices) {
    for (const auto& [id, e] : part.elements()) {
        if (e.kind != CellKind::Simplex) continue;
        PointSet vs;
        for (VertexId v : e.simplex.vertex_ids) vs.insert(to_doubles(part.vertex(v)));
        if (vs == vertices) return id;
    }
    return -1;
}

// ---------------------------------------------------------------------------
// 1. Geometry replay: Table-style initialization plus two forced iterations
//    per scheme, exact cumulative evaluation sets.
// ---------------------------------------------------------------------------
Check criterion_geometry_replay() {
    Check c;
    const double th = rat(1, 0, 1), tt = rat(2, 0, 1);  // 1/3, 2/3

    struct Step {
        std::function<std::vector<ElementId>(const Partition&)> pick;
        PointSet add;
    };
    struct Row {
        PartitionScheme scheme;
        PointSet init;
        std::vector<Step> steps;
    };

    auto one_box = [](std::vector<std::pair<double, double>> b) {
        return [b](const Partition& p) { return std::vector<ElementId>{find_box(p, b)}; };
    };
    auto root = [](const Partition& p) {
        return std::vector<ElementId>{p.elements().begin()->first};
    };

    std::vector<Row> rows;
    rows.push_back({PartitionScheme::DTC,
                    {{0.5, 0.5}},
                    {{root, {{rat(1, 1, 1), 0.5}, {rat(5, 1, 1), 0.5}}},
                     {one_box({{tt, 1.0}, {0.0, 1.0}}),
                      {{rat(5, 1, 1), rat(1, 1, 1)}, {rat(5, 1, 1), rat(5, 1, 1)}}}}});
    rows.push_back({PartitionScheme::DTDV,
                    {{0.0, 0.0}, {1.0, 1.0}},
                    {{root, {{th, 1.0}, {tt, 0.0}}},
                     {one_box({{0.0, th}, {0.0, 1.0}}), {{0.0, tt}, {th, th}}}}});
    rows.push_back({PartitionScheme::DBDP,
                    {{th, th}, {tt, tt}},
                    {{root, {{rat(1, 1, 1), tt}, {rat(5, 1, 1), th}}},
                     {one_box({{0.0, 0.5}, {0.0, 1.0}}),
                      {{rat(1, 1, 1), rat(1, 1, 1)}, {th, rat(5, 1, 1)}}}}});
    rows.push_back({PartitionScheme::DBVD,
                    {{th, th}, {1.0, 1.0}},
                    {{root, {{tt, th}, {0.0, 1.0}}},
                     {one_box({{0.0, 0.5}, {0.0, 1.0}}), {{0.0, 0.0}, {th, tt}}}}});
    rows.push_back({PartitionScheme::DBC,
                    {{0.5, 0.5}},
                    {{root, {{0.25, 0.5}, {0.75, 0.5}}},
                     {one_box({{0.0, 0.5}, {0.0, 1.0}}), {{0.25, 0.25}, {0.25, 0.75}}}}});
    rows.push_back(
        {PartitionScheme::DTCS,
         {{tt, th}, {th, tt}},
         {{[](const Partition& p) {
               return std::vector<ElementId>{find_simplex(p, {{0, 0}, {0, 1}, {1, 1}})};
           },
           {{rat(1, 0, 2), rat(4, 0, 2)}, {rat(5, 0, 2), rat(8, 0, 2)}}},
          {[th](const Partition& p) {
               return std::vector<ElementId>{find_simplex(p, {{0, 0}, {1, 0}, {1, 1}}),
                                             find_simplex(p, {{0, 0}, {0, 1}, {th, th}})};
           },
           {{rat(4, 0, 2), rat(1, 0, 2)},
            {rat(8, 0, 2), rat(5, 0, 2)},
            {rat(1, 0, 2), rat(2, 0, 2)},
            {rat(1, 0, 2), rat(6, 0, 2)}}}}});
    rows.push_back({PartitionScheme::DBVS,
                    {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}},
                    {{[](const Partition& p) {
                          return std::vector<ElementId>{
                              find_simplex(p, {{0, 0}, {0, 1}, {1, 1}})};
                      },
                      {{0.5, 0.5}}},
                     {[](const Partition& p) {
                          return std::vector<ElementId>{
                              find_simplex(p, {{0, 0}, {1, 0}, {1, 1}}),
                              find_simplex(p, {{0, 0}, {0, 1}, {0.5, 0.5}})};
                      },
                      {{0.0, 0.5}}}}});

    for (const Row& row : rows) {
        Run run(scheme_config(row.scheme), unit_problem(2), RunLimits{});
        PointSet expect = row.init;
        std::string name(to_string(row.scheme));
        c.expect(eval_points(run.partition().cache()) == expect, name + " initialization");
        for (std::size_t s = 0; s < row.steps.size(); ++s) {
            std::vector<ElementId> forced = row.steps[s].pick(run.partition());
            bool found = true;
            for (ElementId id : forced) found &= id >= 0;
            c.expect(found, name + " stage " + std::to_string(s + 1) + " cell lookup");
            if (!found) break;
            run.step(forced);
            for (const auto& p : row.steps[s].add) expect.insert(p);
            c.expect(eval_points(run.partition().cache()) == expect,
                     name + " stage " + std::to_string(s + 1) + " points");
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// 2. Combinatorics by enumeration.
// ---------------------------------------------------------------------------
Check criterion_combos() {
    Check c;
    auto [partitioning, selection, hybridization] = config_space_size();
    c.expect(partitioning == 14, "partitioning count " + std::to_string(partitioning));
    c.expect(selection == 4096, "selection count " + std::to_string(selection));
    c.expect(hybridization == 13, "hybridization count " + std::to_string(hybridization));
    c.expect(static_cast<int>(kAllSchemes.size() * kAllSideRules.size()) == partitioning,
             "7 schemes x 2 side rules");
    c.expect(1 + static_cast<int>((kAllHybridStrategies.size() - 1) * kAllLocalSearchKinds.size()) ==
                 hybridization,
             "off + 3 strategies x 4 local searches");
    return c;
}

// ---------------------------------------------------------------------------
// 3. Presets: validation round trip and exact per-pair field differences.
// ---------------------------------------------------------------------------
Check criterion_presets() {
    Check c;
    auto names = preset_names();
    c.expect(names.size() == 10, "ten presets");
    for (const std::string& name : names) {
        AlgorithmConfig cfg = preset(name);
        ConfigValidation v = config_from_json(config_to_json(cfg));
        c.expect(v.ok(), name + " round trip validates");
        c.expect(v.config == cfg, name + " round trip is lossless");
    }

    const std::map<std::string, std::vector<std::string>> expected_diffs = {
        {"1-DTC-GL", {"Hybridization.LocalSearch", "Hybridization.Strategy"}},
        {"HALRECT-IA", {"Hybridization.LocalSearch", "Hybridization.Strategy"}},
        {"MrDIRECT", {"Hybridization.LocalSearch", "Hybridization.Strategy"}},
        {"BIRMIN", {"Partitioning.SubSides", "Selection.Strategy", "Hybridization.LocalSearch"}},
        {"DIRMIN", {"Selection.CandMeasure", "Selection.EqualCand", "Selection.SolRefin"}},
    };
    for (const auto& [base, fields] : expected_diffs) {
        auto diff = config_diff(preset("original:" + base), preset("improved:" + base));
        std::vector<std::string> want = fields;
        std::sort(want.begin(), want.end());
        std::vector<std::string> got = diff;
        std::sort(got.begin(), got.end());
        c.expect(got == want, base + " changed fields");
    }
    return c;
}

// ---------------------------------------------------------------------------
// 4. Selection oracle equivalence on 500 random instances each.
// ---------------------------------------------------------------------------
Check criterion_selection_oracle() {
    Check c;
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    int mism_orig = 0, mism_pareto = 0;
    for (int rep = 0; rep < 500; ++rep) {
        int pool = 1 + static_cast<int>(u(rng) * 8);
        std::vector<double> deltas;
        for (int i = 0; i < pool; ++i) deltas.push_back(0.05 + u(rng));
        int n = 1 + static_cast<int>(u(rng) * 29);
        std::vector<oracles::Item> items;
        for (int i = 0; i < n; ++i)
            items.push_back(
                {i, deltas[static_cast<std::size_t>(i) % deltas.size()], 2.0 * u(rng) - 0.5});

        auto groups = oracles::to_groups(items);
        double fmin = items[0].aggr;
        for (const auto& it : items) fmin = std::min(fmin, it.aggr);
        std::vector<double> vals;
        for (const auto& it : items) vals.push_back(it.aggr);
        std::sort(vals.begin(), vals.end());
        double fmed = vals.size() % 2 == 1
                          ? vals[vals.size() / 2]
                          : 0.5 * (vals[vals.size() / 2 - 1] + vals[vals.size() / 2]);
        double favg = 0.0;
        for (double v : vals) favg += v;
        favg /= static_cast<double>(vals.size());

        for (SolRefin mode : {SolRefin::Min, SolRefin::Median, SolRefin::Average, SolRefin::Off}) {
            double ep = rep % 2 == 0 ? 1e-4 : 0.0;
            SelectionContext ctx{fmed, favg};
            auto got = apply_equal_candidates(select_original(groups, fmin, mode, ep, ctx),
                                              EqualCand::All, groups);
            auto want = oracles::original_selection(items, fmin, mode, ep, fmed, favg);
            if (got != want) ++mism_orig;
        }
        auto gotp = apply_equal_candidates(select_pareto(groups), EqualCand::All, groups);
        if (gotp != oracles::pareto_selection(items)) ++mism_pareto;
    }
    c.expect(mism_orig == 0, "original-selection mismatches: " + std::to_string(mism_orig));
    c.expect(mism_pareto == 0, "pareto mismatches: " + std::to_string(mism_pareto));
    return c;
}

// ---------------------------------------------------------------------------
// 5. Invariant suite, each family fuzzed over at least 200 cases.
// ---------------------------------------------------------------------------
Check criterion_invariants() {
    Check c;

    // volume conservation across all schemes/rules (224 sequences)
    {
        int violations = 0, cases = 0;
        for (PartitionScheme scheme : kAllSchemes)
            for (SideRule rule : kAllSideRules)
                for (int n : {1, 2, 3, 5})
                    for (unsigned rep = 0; rep < 4; ++rep) {
                        ++cases;
                        OptProblem p = unit_problem(n);
                        EvalCache cache(p.objective, DomainScaler(p.a, p.b));
                        Partition part(scheme, rule, n, &cache);
                        std::mt19937 rng(7777u * rep + 13u * static_cast<unsigned>(scheme) +
                                         static_cast<unsigned>(n));
                        for (int step = 0; step < 20; ++step) {
                            auto it = part.elements().begin();
                            std::advance(it, rng() % part.size());
                            part.subdivide(it->first);
                        }
                        if (std::abs(part.total_volume() - 1.0) > 1e-9) ++violations;
                    }
        c.expect(violations == 0,
                 "volume conservation violations: " + std::to_string(violations));
        c.expect(cases >= 200, "volume cases " + std::to_string(cases));
    }

    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto random_items = [&](int max_elems) {
        int pool = 1 + static_cast<int>(u(rng) * 8);
        std::vector<double> deltas;
        for (int i = 0; i < pool; ++i) deltas.push_back(0.05 + u(rng));
        int n = 1 + static_cast<int>(u(rng) * (max_elems - 1));
        std::vector<oracles::Item> items;
        for (int i = 0; i < n; ++i)
            items.push_back(
                {i, deltas[static_cast<std::size_t>(i) % deltas.size()], 2.0 * u(rng) - 0.5});
        return items;
    };
    auto expand = [](const std::vector<ElementId>& sel, const std::vector<MeasureGroup>& groups) {
        return apply_equal_candidates(sel, EqualCand::All, groups);
    };

    // hull subset of front at ep=0; reduced front properties
    {
        int viol = 0;
        for (int rep = 0; rep < 500; ++rep) {
            auto items = random_items(25);
            auto groups = oracles::to_groups(items);
            double fmin = items[0].aggr;
            for (const auto& it : items) fmin = std::min(fmin, it.aggr);
            auto hull = expand(select_original(groups, fmin, SolRefin::Off, 0.0, {}), groups);
            auto front = expand(select_pareto(groups), groups);
            for (ElementId id : hull)
                if (!std::binary_search(front.begin(), front.end(), id)) ++viol;
            auto red = select_reduced_pareto(groups);
            if (red.size() > 2) ++viol;
            for (ElementId id : red)
                if (!std::binary_search(front.begin(), front.end(), id)) ++viol;
        }
        c.expect(viol == 0, "hull/front violations: " + std::to_string(viol));
    }

    // measure-scaling invariance of all four strategies
    {
        int viol = 0;
        for (int rep = 0; rep < 200; ++rep) {
            auto items = random_items(25);
            double fmin = items[0].aggr;
            for (const auto& it : items) fmin = std::min(fmin, it.aggr);
            double scale = 0.01 + 100.0 * u(rng);
            auto scaled = items;
            for (auto& it : scaled) it.delta *= scale;
            auto g0 = oracles::to_groups(items);
            auto g1 = oracles::to_groups(scaled);
            if (expand(select_original(g0, fmin, SolRefin::Min, 1e-4, {}), g0) !=
                expand(select_original(g1, fmin, SolRefin::Min, 1e-4, {}), g1))
                ++viol;
            if (expand(select_pareto(g0), g0) != expand(select_pareto(g1), g1)) ++viol;
            if (expand(select_aggressive(g0), g0) != expand(select_aggressive(g1), g1)) ++viol;
            if (expand(select_reduced_pareto(g0), g0) != expand(select_reduced_pareto(g1), g1))
                ++viol;
        }
        c.expect(viol == 0, "measure-scaling violations: " + std::to_string(viol));
    }

    // additive-shift invariance for Median/Average refinement
    {
        int viol = 0;
        for (int rep = 0; rep < 200; ++rep) {
            auto items = random_items(25);
            std::vector<double> vals;
            for (const auto& it : items) vals.push_back(it.aggr);
            std::sort(vals.begin(), vals.end());
            double fmed = vals.size() % 2 == 1
                              ? vals[vals.size() / 2]
                              : 0.5 * (vals[vals.size() / 2 - 1] + vals[vals.size() / 2]);
            double favg = 0.0;
            for (double v : vals) favg += v;
            favg /= static_cast<double>(vals.size());
            double fmin = vals.front();
            double shift = 200.0 * u(rng) - 100.0;
            auto shifted = items;
            for (auto& it : shifted) it.aggr += shift;
            auto g0 = oracles::to_groups(items);
            auto g1 = oracles::to_groups(shifted);
            for (SolRefin mode : {SolRefin::Median, SolRefin::Average}) {
                SelectionContext c0{fmed, favg};
                SelectionContext c1{fmed + shift, favg + shift};
                if (expand(select_original(g0, fmin, mode, 1e-4, c0), g0) !=
                    expand(select_original(g1, fmin + shift, mode, 1e-4, c1), g1))
                    ++viol;
            }
        }
        c.expect(viol == 0, "additive-shift violations: " + std::to_string(viol));
    }

    // engine invariants: f_min monotone, cache single-evaluation, determinism
    {
        int viol = 0;
        std::vector<PartitionScheme> schemes(kAllSchemes.begin(), kAllSchemes.end());
        for (int rep = 0; rep < 200; ++rep) {
            AlgorithmConfig cfg;
            cfg.partitioning.strategy = schemes[static_cast<std::size_t>(rep) % schemes.size()];
            cfg.partitioning.sub_sides = rep % 2 == 0 ? SideRule::All : SideRule::One;
            cfg.selection.strategy =
                kAllSelectionStrategies[static_cast<std::size_t>(rep / 2) % 4];
            cfg.selection.sol_refin = kAllSolRefins[static_cast<std::size_t>(rep / 8) % 4];
            cfg.selection.control_ep = kAllControlEps[static_cast<std::size_t>(rep / 32) % 4];
            cfg.selection.two_phase = rep % 5 == 0;
            cfg.selection.globally_biased = rep % 7 == 0;
            AlgorithmConfig valid = validate_config(cfg).config;

            OptProblem p;
            double cx = 0.1 + 0.8 * u(rng), cy = 0.1 + 0.8 * u(rng);
            p.objective = [cx, cy](const std::vector<double>& x) {
                return (x[0] - cx) * (x[0] - cx) + 2.3 * (x[1] - cy) * (x[1] - cy) +
                       0.3 * std::sin(9.0 * x[0]);
            };
            p.n = 2;
            p.a = {0.0, 0.0};
            p.b = {1.0, 1.0};
            RunLimits lim;
            lim.max_iters = 12;

            RunResult r1 = run(valid, p, lim);
            RunResult r2 = run(valid, p, lim);
            for (std::size_t i = 1; i < r1.trace.size(); ++i)
                if (r1.trace[i].f_min > r1.trace[i - 1].f_min) ++viol;
            if (r1.trace.size() != r2.trace.size()) ++viol;
            for (std::size_t i = 0; i < r1.trace.size() && i < r2.trace.size(); ++i) {
                if (r1.trace[i].m != r2.trace[i].m || r1.trace[i].f_min != r2.trace[i].f_min ||
                    r1.trace[i].selected != r2.trace[i].selected)
                    ++viol;
            }
        }
        c.expect(viol == 0, "engine invariant violations: " + std::to_string(viol));
    }

    // cache single-evaluation guarantee under random subdivision
    {
        int viol = 0;
        for (int rep = 0; rep < 200; ++rep) {
            PartitionScheme scheme = kAllSchemes[static_cast<std::size_t>(rep) % 7];
            int n = 2 + rep % 2;
            OptProblem p = unit_problem(n);
            long long raw_calls = 0;
            Objective counting = [&raw_calls, base = p.objective](const std::vector<double>& x) {
                ++raw_calls;
                return base(x);
            };
            EvalCache cache(counting, DomainScaler(p.a, p.b));
            Partition part(scheme, rep % 2 == 0 ? SideRule::All : SideRule::One, n, &cache);
            std::mt19937 lrng(static_cast<unsigned>(rep));
            for (int step = 0; step < 15; ++step) {
                auto it = part.elements().begin();
                std::advance(it, lrng() % part.size());
                part.subdivide(it->first);
            }
            std::set<std::vector<long long>> distinct;
            for (const auto& [pt, v] : cache.entries()) {
                std::vector<long long> key;
                for (double x : pt) key.push_back(std::llround(x * 1e12));
                distinct.insert(key);
            }
            if (raw_calls != cache.evaluations()) ++viol;
            if (static_cast<long long>(distinct.size()) != cache.evaluations()) ++viol;
        }
        c.expect(viol == 0, "cache violations: " + std::to_string(viol));
    }

    return c;
}

// ---------------------------------------------------------------------------
// 6. Desk-scale solving with the classic configuration.
// ---------------------------------------------------------------------------
Check criterion_desk_scale() {
    Check c;
    const char* suite[] = {"Sphere",    "Rosenbrock", "Rastrigin",      "Ackley",   "Griewank",
                           "Levy",      "Zakharov",   "StyblinskiTang", "Schwefel", "Branin",
                           "SixHumpCamel", "GoldsteinPrice", "Easom",  "Booth",    "Matyas",
                           "Michalewicz", "Bohachevsky", "ThreeHumpCamel", "Beale", "DropWave"};
    std::vector<TestProblem> problems;
    for (const char* name : suite) problems.push_back(make_problem(name, 2));
    c.expect(problems.size() == 20, "suite size");

    NamedConfig classic{"classic", validate_config(AlgorithmConfig{}).config};
    RunLimits lim;  // defaults: M_max = n*1e5, pe 0.01
    auto records = run_suite({classic}, problems, lim, {1}, 4);

    int solved = 0;
    std::ostringstream failed;
    for (const SuiteRecord& r : records) {
        if (r.solved) ++solved;
        else failed << " " << r.problem;
    }
    c.expect(solved >= 18, "solved " + std::to_string(solved) + "/20; unsolved:" + failed.str());
    // frozen regression value: the classic configuration solves the full suite
    c.expect(solved == 20, "regression: expected 20/20, got " + std::to_string(solved));
    return c;
}

// ---------------------------------------------------------------------------
// 7. Hybrid sanity: the Single hybrid beats the pure variant on Sphere n=5.
// ---------------------------------------------------------------------------
Check criterion_hybrid_sanity() {
    Check c;
    TestProblem sphere = shift_problem(make_problem("Sphere", 5), 1);

    AlgorithmConfig pure_cfg = validate_config(AlgorithmConfig{}).config;
    AlgorithmConfig hybrid_cfg = pure_cfg;
    hybrid_cfg.hybridization.strategy = HybridStrategy::Single;

    RunResult pure = run(pure_cfg, sphere.to_opt_problem(), {});
    RunResult hybrid = run(hybrid_cfg, sphere.to_opt_problem(), {});

    c.expect(pure.stop_reason == StopReason::PercentError, "pure run solves");
    c.expect(hybrid.stop_reason == StopReason::PercentError, "hybrid run solves");
    c.expect(hybrid.m < pure.m, "hybrid evals " + std::to_string(hybrid.m) +
                                    " !< pure evals " + std::to_string(pure.m));
    return c;
}

// ---------------------------------------------------------------------------
// 8. Shift correctness: 1e4 seeds x 5 problems.
// ---------------------------------------------------------------------------
Check criterion_shift() {
    Check c;
    int violations = 0;
    for (const char* name : {"Branin", "Rastrigin", "Booth", "Schwefel", "Hartman3"}) {
        TestProblem base = make_problem(name);
        for (std::uint64_t seed = 1; seed <= 10000; ++seed) {
            TestProblem s = shift_problem(base, seed);
            for (int j = 0; j < base.n; ++j) {
                double x = s.x_star[static_cast<std::size_t>(j)];
                if (x < base.a[static_cast<std::size_t>(j)] ||
                    x > base.b[static_cast<std::size_t>(j)])
                    ++violations;
            }
            if (std::abs(s.objective(s.x_star) - base.f_star) > 1e-9) ++violations;
        }
    }
    c.expect(violations == 0, "violations: " + std::to_string(violations));
    return c;
}

// ---------------------------------------------------------------------------
// 9. Metrics: percent error, Friedman ranks, data-profile shape.
// ---------------------------------------------------------------------------
Check criterion_metrics() {
    Check c;
    c.expect(percent_error(0.005, 0.0) == 0.5, "pe zero-optimum branch");
    c.expect(std::abs(percent_error(1.00005, 1.0) - 0.005) < 1e-12, "pe relative branch");
    c.expect(std::abs(percent_error(-1.9, -2.0) - 5.0) < 1e-12, "pe negative optimum");

    // 3 configs x 4 problems rank oracle (hand-computed)
    {
        const double vals[4][3] = {
            {1.0, 2.0, 3.0}, {3.0, 1.0, 2.0}, {2.0, 2.0, 1.0}, {1.0, 3.0, 2.0}};
        std::vector<SuiteRecord> recs;
        const char* probs[] = {"P1", "P2", "P3", "P4"};
        const char* confs[] = {"a", "b", "c"};
        for (int pi = 0; pi < 4; ++pi)
            for (int ci = 0; ci < 3; ++ci) {
                SuiteRecord r;
                r.problem = probs[pi];
                r.n = 2;
                r.config = confs[ci];
                r.seed = 1;
                r.m = 100;
                r.checkpoints = {{10, vals[pi][ci]}};
                recs.push_back(r);
            }
        auto ranks = friedman_mean_ranks(recs, {100});
        c.expect(ranks.at("a") == std::vector<double>{1.875}, "rank a");
        c.expect(ranks.at("b") == std::vector<double>{2.125}, "rank b");
        c.expect(ranks.at("c") == std::vector<double>{2.0}, "rank c");
    }

    // profile on a real (tiny) suite: monotone, endpoint matches success rate
    {
        NamedConfig classic{"classic", validate_config(AlgorithmConfig{}).config};
        RunLimits lim;
        lim.max_evals = 2000;
        std::vector<TestProblem> probs{make_problem("Booth"), make_problem("Branin"),
                                       make_problem("Easom")};
        auto records = run_suite({classic}, probs, lim, {2});
        DataProfile prof = data_profile(records, {1, 10, 100, 1000, 100000});
        const auto& curve = prof.fraction_solved.at("classic");
        bool monotone = true;
        for (std::size_t i = 1; i < curve.size(); ++i) monotone &= curve[i] >= curve[i - 1];
        c.expect(monotone, "profile monotone");
        auto table = success_table(records);
        c.expect(std::abs(curve.back() * 100.0 - table.at("classic").at("overall")) < 1e-12,
                 "profile endpoint equals success rate");
    }
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        const char* name;
        std::function<Check()> fn;
    };
    std::vector<Criterion> criteria = {
        {"geometry replay (Table rows, exact)", criterion_geometry_replay},
        {"combinatorics (14, 4096, 13)", criterion_combos},
        {"presets round-trip and pair diffs", criterion_presets},
        {"selection oracle equivalence (500+500)", criterion_selection_oracle},
        {"invariant suite (>=200 cases each)", criterion_invariants},
        {"desk-scale solving (>=90% of 20 problems)", criterion_desk_scale},
        {"hybrid sanity (fewer evals on Sphere n=5)", criterion_hybrid_sanity},
        {"shift correctness (1e4 seeds x 5 problems)", criterion_shift},
        {"metrics (pe, ranks, profiles)", criterion_metrics},
    };

    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!only.empty() && !only.count(static_cast<int>(i) + 1)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Check result;
        try {
            result = criteria[i].fn();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail << "exception: " << e.what();
        }
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
        std::printf("[%s] criterion %zu: %s (%.0f ms)%s%s\n", result.ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, ms, result.ok ? "" : " -- ",
                    result.ok ? "" : result.detail.str().c_str());
        if (!result.ok) ++failures;
    }
    return failures;
}
