#include "gendirect/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "json.hpp"

namespace gendirect {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SuiteRecord run_one(const NamedConfig& cfg, const TestProblem& base, const RunLimits& limits,
                    std::uint64_t seed) {
    TestProblem prob = base.x_star.empty() ? base : shift_problem(base, seed);

    auto t0 = std::chrono::steady_clock::now();
    RunResult res = run(cfg.config, prob.to_opt_problem(), limits);
    auto t1 = std::chrono::steady_clock::now();

    SuiteRecord rec;
    rec.problem = base.name;
    rec.n = base.n;
    rec.config = cfg.name;
    rec.seed = seed;
    rec.m = res.m;
    rec.k = res.k;
    rec.f_min = res.f_min;
    rec.stop_reason = std::string(to_string(res.stop_reason));
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (res.pe) {
        rec.pe = *res.pe;
        rec.solved = *res.pe < limits.pe_tolerance;
    }
    if (res.stop_reason == StopReason::Time) rec.m = 100000LL * base.n;

    // Keep checkpoints only where the incumbent moved; enough to read
    // f_min at any budget.
    double last = std::numeric_limits<double>::infinity();
    for (const TraceRow& row : res.trace) {
        if (row.f_min < last) {
            rec.checkpoints.emplace_back(row.m, row.f_min);
            last = row.f_min;
        }
    }
    if (rec.checkpoints.empty() || rec.checkpoints.back().first != res.m)
        rec.checkpoints.emplace_back(res.m, res.f_min);
    return rec;
}

double value_at_budget(const SuiteRecord& rec, double budget_abs) {
    double out = std::numeric_limits<double>::infinity();
    for (const auto& [m, f] : rec.checkpoints) {
        if (static_cast<double>(m) > budget_abs) break;
        out = f;
    }
    return out;
}

}  // namespace

std::vector<SuiteRecord> run_suite(const std::vector<NamedConfig>& configs,
                                   const std::vector<TestProblem>& problems,
                                   const RunLimits& limits, const std::vector<std::uint64_t>& seeds,
                                   int jobs) {
    if (configs.empty()) throw std::invalid_argument("run_suite: no configs");
    if (problems.empty()) throw std::invalid_argument("run_suite: no problems");
    if (seeds.empty()) throw std::invalid_argument("run_suite: no seeds");

    struct Task {
        std::size_t c, p, s;
    };
    std::vector<Task> tasks;
    for (std::size_t c = 0; c < configs.size(); ++c)
        for (std::size_t p = 0; p < problems.size(); ++p)
            for (std::size_t s = 0; s < seeds.size(); ++s) tasks.push_back({c, p, s});

    std::vector<SuiteRecord> records(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& t = tasks[i];
            records[i] = run_one(configs[t.c], problems[t.p], limits, seeds[t.s]);
        }
    };

    int threads = std::max(1, jobs);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    return records;
}

DataProfile data_profile(const std::vector<SuiteRecord>& records, std::vector<double> budgets) {
    if (records.empty()) throw std::invalid_argument("data_profile: empty records");
    if (budgets.empty()) {
        double b = 1.0;
        while (b <= 1e5 + 1e-9) {
            budgets.push_back(b);
            b *= std::pow(10.0, 0.1);
        }
        budgets.push_back(1e5);
        std::sort(budgets.begin(), budgets.end());
        budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
    }

    std::map<std::string, std::vector<const SuiteRecord*>> by_config;
    for (const SuiteRecord& r : records) by_config[r.config].push_back(&r);

    DataProfile out;
    out.budgets = budgets;
    for (const auto& [name, recs] : by_config) {
        std::vector<double>& curve = out.fraction_solved[name];
        curve.reserve(budgets.size());
        for (double beta : budgets) {
            std::size_t solved = 0;
            for (const SuiteRecord* r : recs)
                if (r->solved && static_cast<double>(r->m) / r->n <= beta) ++solved;
            curve.push_back(static_cast<double>(solved) / static_cast<double>(recs.size()));
        }
    }
    return out;
}

std::map<std::string, std::map<std::string, double>> success_table(
    const std::vector<SuiteRecord>& records) {
    if (records.empty()) throw std::invalid_argument("success_table: empty records");

    // Tags come from the registry; unknown problem names are an error.
    std::map<std::string, std::array<bool, 3>> tags;
    for (const SuiteRecord& r : records)
        if (!tags.count(r.problem)) {
            TestProblem p = make_problem(r.problem);
            tags[r.problem] = {p.separable, p.multimodal, p.scalable};
        }

    static const char* kTagNames[3] = {"separable", "multimodal", "scalable"};
    std::map<std::string, std::map<std::string, double>> out;
    std::map<std::string, std::vector<const SuiteRecord*>> by_config;
    for (const SuiteRecord& r : records) by_config[r.config].push_back(&r);

    for (const auto& [name, recs] : by_config) {
        auto rate = [&](auto&& pred) -> std::optional<double> {
            std::size_t total = 0, solved = 0;
            for (const SuiteRecord* r : recs) {
                if (!pred(*r)) continue;
                ++total;
                if (r->solved) ++solved;
            }
            if (total == 0) return std::nullopt;
            return 100.0 * static_cast<double>(solved) / static_cast<double>(total);
        };
        auto put = [&](const std::string& key, std::optional<double> v) {
            if (v) out[name][key] = *v;
        };
        put("overall", rate([](const SuiteRecord&) { return true; }));
        for (int t = 0; t < 3; ++t) {
            put(std::string(kTagNames[t]) + "+",
                rate([&](const SuiteRecord& r) { return tags[r.problem][static_cast<std::size_t>(t)]; }));
            put(std::string(kTagNames[t]) + "-",
                rate([&](const SuiteRecord& r) { return !tags[r.problem][static_cast<std::size_t>(t)]; }));
        }
    }
    return out;
}

std::map<std::string, std::vector<double>> friedman_mean_ranks(
    const std::vector<SuiteRecord>& records, const std::vector<double>& budgets) {
    if (records.empty()) throw std::invalid_argument("friedman_mean_ranks: empty records");
    if (budgets.empty()) throw std::invalid_argument("friedman_mean_ranks: no budgets");

    using InstanceKey = std::tuple<std::string, int, std::uint64_t>;
    std::map<InstanceKey, std::map<std::string, const SuiteRecord*>> instances;
    std::set<std::string> configs;
    for (const SuiteRecord& r : records) {
        instances[{r.problem, r.n, r.seed}][r.config] = &r;
        configs.insert(r.config);
    }
    for (const auto& [key, per_config] : instances)
        if (per_config.size() != configs.size())
            throw std::invalid_argument("friedman_mean_ranks: unequal config coverage per problem");

    std::map<std::string, std::vector<double>> out;
    for (const std::string& c : configs) out[c].assign(budgets.size(), 0.0);

    for (std::size_t bi = 0; bi < budgets.size(); ++bi) {
        for (const auto& [key, per_config] : instances) {
            double budget_abs = budgets[bi] * std::get<1>(key);
            std::vector<std::pair<double, const std::string*>> vals;
            vals.reserve(per_config.size());
            for (const auto& [name, rec] : per_config)
                vals.emplace_back(value_at_budget(*rec, budget_abs), &name);
            std::sort(vals.begin(), vals.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            // Average ranks across ties.
            std::size_t i = 0;
            while (i < vals.size()) {
                std::size_t j = i;
                while (j + 1 < vals.size() && vals[j + 1].first == vals[i].first) ++j;
                double rank = 0.5 * static_cast<double>(i + j) + 1.0;
                for (std::size_t t = i; t <= j; ++t) out[*vals[t].second][bi] += rank;
                i = j + 1;
            }
        }
        for (auto& [name, ranks] : out) ranks[bi] /= static_cast<double>(instances.size());
    }
    return out;
}

std::string records_to_csv(const std::vector<SuiteRecord>& records) {
    std::ostringstream os;
    os << "problem,n,config,seed,m,k,fmin,pe,solved,stop_reason,wall_ms\n";
    for (const SuiteRecord& r : records) {
        char wall[32];
        std::snprintf(wall, sizeof(wall), "%.3f", r.wall_ms);
        os << r.problem << ',' << r.n << ',' << r.config << ',' << r.seed << ',' << r.m << ','
           << r.k << ',' << fmt_double(r.f_min) << ',' << fmt_double(r.pe) << ','
           << (r.solved ? "true" : "false") << ',' << r.stop_reason << ',' << wall << '\n';
    }
    return os.str();
}

std::string records_to_jsonl(const std::vector<SuiteRecord>& records) {
    std::ostringstream os;
    for (const SuiteRecord& r : records) {
        nlohmann::json j;
        j["problem"] = r.problem;
        j["n"] = r.n;
        j["config"] = r.config;
        j["seed"] = r.seed;
        j["m"] = r.m;
        j["k"] = r.k;
        j["fmin"] = r.f_min;
        j["pe"] = std::isnan(r.pe) ? nlohmann::json() : nlohmann::json(r.pe);
        j["solved"] = r.solved;
        j["stop_reason"] = r.stop_reason;
        j["wall_ms"] = r.wall_ms;
        nlohmann::json cps = nlohmann::json::array();
        for (const auto& [m, f] : r.checkpoints) cps.push_back({m, f});
        j["checkpoints"] = cps;
        os << j.dump() << '\n';
    }
    return os.str();
}

std::vector<SuiteRecord> records_from_jsonl(const std::string& text) {
    std::vector<SuiteRecord> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        SuiteRecord r;
        r.problem = j.at("problem").get<std::string>();
        r.n = j.at("n").get<int>();
        r.config = j.at("config").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.m = j.at("m").get<long long>();
        r.k = j.at("k").get<long long>();
        r.f_min = j.at("fmin").get<double>();
        r.pe = j.at("pe").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                    : j.at("pe").get<double>();
        r.solved = j.at("solved").get<bool>();
        r.stop_reason = j.at("stop_reason").get<std::string>();
        r.wall_ms = j.at("wall_ms").get<double>();
        for (const auto& cp : j.at("checkpoints"))
            r.checkpoints.emplace_back(cp.at(0).get<long long>(), cp.at(1).get<double>());
        out.push_back(std::move(r));
    }
    return out;
}

std::string profile_to_csv(const DataProfile& profile) {
    std::ostringstream os;
    os << "budget_per_dim";
    for (const auto& [name, curve] : profile.fraction_solved) os << ',' << name;
    os << '\n';
    for (std::size_t i = 0; i < profile.budgets.size(); ++i) {
        os << fmt_double(profile.budgets[i]);
        for (const auto& [name, curve] : profile.fraction_solved) os << ',' << fmt_double(curve[i]);
        os << '\n';
    }
    return os.str();
}

}  // namespace gendirect
