// Command-line front end: single runs, benchmark suites, data profiles,
// rank tables, preset and combination listings.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gendirect/bench.hpp"
#include "gendirect/config.hpp"
#include "gendirect/engine.hpp"
#include "gendirect/problems.hpp"

namespace {

using namespace gendirect;

constexpr int kExitUsage = 1;
constexpr int kExitRunFailure = 2;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("GENDIRECT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw CLI::ValidationError("GENDIRECT_SEED", "must be a non-negative integer");
        }
    }
    return 0;
}

AlgorithmConfig load_config(const std::string& config_file, const std::string& preset_name) {
    if (!config_file.empty() && !preset_name.empty())
        throw CLI::ValidationError("--config/--preset", "choose one, not both");
    if (!preset_name.empty()) return preset(preset_name);
    if (config_file.empty()) {
        ConfigValidation v = validate_config(AlgorithmConfig{});
        return v.config;
    }
    std::ifstream in(config_file);
    if (!in) throw CLI::ValidationError("--config", "cannot open '" + config_file + "'");
    nlohmann::json j = nlohmann::json::parse(in);
    ConfigValidation v = config_from_json(j);
    if (!v.ok()) {
        std::string msg;
        for (const std::string& e : v.errors) msg += e + "\n";
        throw CLI::ValidationError("--config", msg);
    }
    for (const std::string& w : v.warnings) std::cerr << "warning: " << w << "\n";
    return v.config;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

int cmd_run(const std::string& config_file, const std::string& preset_name,
            const std::string& problem_name, int n, std::uint64_t seed, long long max_evals,
            long long max_iters, double fgoal, bool has_fgoal, const std::string& out_file) {
    AlgorithmConfig cfg = load_config(config_file, preset_name);
    TestProblem prob = make_problem(problem_name, n);
    if (seed != 0) prob = shift_problem(prob, seed);
    OptProblem op = prob.to_opt_problem();
    if (has_fgoal) op.f_goal = fgoal;

    RunLimits limits;
    limits.max_evals = max_evals;
    if (max_iters > 0) limits.max_iters = max_iters;

    RunResult res = run(cfg, op, limits);

    nlohmann::json j;
    j["problem"] = prob.name;
    j["n"] = prob.n;
    j["seed"] = seed;
    j["f_min"] = res.f_min;
    j["x_min"] = res.x_min;
    j["k"] = res.k;
    j["m"] = res.m;
    j["stop_reason"] = std::string(to_string(res.stop_reason));
    if (res.pe) j["pe"] = *res.pe;
    std::string text = j.dump(2) + "\n";
    if (out_file.empty())
        std::cout << text;
    else
        write_file(out_file, text);
    return 0;
}

int cmd_suite(const std::string& configs_arg, const std::string& problems_arg, bool all_problems,
              const std::string& dims_arg, const std::string& seeds_arg, int jobs,
              long long max_evals, double max_seconds, const std::string& out_dir) {
    std::vector<NamedConfig> configs;
    for (const std::string& c : split_list(configs_arg)) {
        if (c.find(':') != std::string::npos && c.find(".json") == std::string::npos)
            configs.push_back({c, preset(c)});
        else
            configs.push_back({c, load_config(c, "")});
    }
    if (configs.empty()) throw CLI::ValidationError("--configs", "at least one config required");

    std::vector<int> dims;
    for (const std::string& d : split_list(dims_arg)) dims.push_back(std::stoi(d));
    if (dims.empty()) dims.push_back(0);

    std::vector<TestProblem> problems;
    std::vector<std::string> names =
        all_problems ? problem_names() : split_list(problems_arg);
    if (names.empty()) throw CLI::ValidationError("--problems", "no problems given");
    for (const std::string& name : names) {
        TestProblem base = make_problem(name);
        if (!base.scalable) {
            problems.push_back(std::move(base));
            continue;
        }
        for (int d : dims) problems.push_back(make_problem(name, d));
    }

    std::vector<std::uint64_t> seeds;
    for (const std::string& s : split_list(seeds_arg)) seeds.push_back(std::stoull(s));
    if (seeds.empty()) seeds.push_back(default_seed());

    RunLimits limits;
    limits.max_evals = max_evals;
    limits.max_seconds = max_seconds;

    std::vector<SuiteRecord> records = run_suite(configs, problems, limits, seeds, jobs);

    write_file(out_dir + "/records.csv", records_to_csv(records));
    write_file(out_dir + "/records.jsonl", records_to_jsonl(records));
    std::cerr << records.size() << " runs -> " << out_dir << "/records.{csv,jsonl}\n";

    auto table = success_table(records);
    for (const auto& [config, rates] : table) {
        std::cout << config << ":";
        for (const auto& [facet, rate] : rates) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.2f", rate);
            std::cout << " " << facet << "=" << buf;
        }
        std::cout << "\n";
    }
    return 0;
}

std::vector<SuiteRecord> load_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return records_from_jsonl(ss.str());
}

int cmd_profile(const std::string& records_file, const std::string& out_file) {
    DataProfile p = data_profile(load_records(records_file));
    std::string csv = profile_to_csv(p);
    if (out_file.empty())
        std::cout << csv;
    else
        write_file(out_file, csv);
    return 0;
}

int cmd_ranks(const std::string& records_file, const std::string& budgets_arg) {
    std::vector<double> budgets;
    for (const std::string& b : split_list(budgets_arg)) budgets.push_back(std::stod(b));
    if (budgets.empty()) budgets = {1e2, 1e3, 1e4, 1e5};

    auto ranks = friedman_mean_ranks(load_records(records_file), budgets);
    std::cout << "config";
    for (double b : budgets) std::cout << ",n*" << b;
    std::cout << "\n";
    for (const auto& [config, row] : ranks) {
        std::cout << config;
        for (double r : row) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.4f", r);
            std::cout << ',' << buf;
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_presets() {
    for (const std::string& name : preset_names()) {
        std::cout << name << "\n  " << config_to_json(preset(name)).dump() << "\n";
    }
    return 0;
}

int cmd_combos() {
    auto [partitioning, selection, hybridization] = config_space_size();
    std::cout << "partitioning: " << partitioning << "\n"
              << "selection: " << selection << "\n"
              << "hybridization: " << hybridization << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Composable DIRECT-type derivative-free global optimizer"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "Solve one problem with one configuration");
    std::string config_file, preset_name, problem_name, out_file;
    int n = 0;
    std::uint64_t seed = default_seed();
    long long max_evals = 0, max_iters = 0;
    double fgoal = 0.0;
    run_cmd->add_option("--config", config_file, "JSON config file");
    run_cmd->add_option("--preset", preset_name, "preset name (see `presets`)");
    run_cmd->add_option("--problem", problem_name, "problem name")->required();
    run_cmd->add_option("--n", n, "dimension (scalable problems)");
    run_cmd->add_option("--seed", seed, "shift seed (0 = unshifted)");
    run_cmd->add_option("--max-evals", max_evals, "evaluation budget (default n*1e5)");
    run_cmd->add_option("--max-iters", max_iters, "iteration budget");
    auto* fgoal_opt = run_cmd->add_option("--fgoal", fgoal, "stop when f_min <= fgoal");
    run_cmd->add_option("--out", out_file, "write the result JSON here");

    // suite
    auto* suite_cmd = app.add_subcommand("suite", "Run a configs x problems x seeds benchmark");
    std::string configs_arg, problems_arg, dims_arg = "2", seeds_arg, out_dir = ".";
    bool all_problems = false;
    int jobs = 1;
    double max_seconds = 0.0;
    suite_cmd->add_option("--configs", configs_arg, "comma list of presets or config files")
        ->required();
    suite_cmd->add_option("--problems", problems_arg, "comma list of problem names");
    suite_cmd->add_flag("--all", all_problems, "use every built-in problem");
    suite_cmd->add_option("--dims", dims_arg, "dimensions for scalable problems (default 2)");
    suite_cmd->add_option("--seeds", seeds_arg, "comma list of shift seeds");
    suite_cmd->add_option("--jobs", jobs, "worker threads");
    suite_cmd->add_option("--max-evals", max_evals, "per-run evaluation budget");
    suite_cmd->add_option("--max-seconds", max_seconds, "per-run wall-clock cap (0 = off)");
    suite_cmd->add_option("--out-dir", out_dir, "output directory (default .)");

    // profile
    auto* profile_cmd = app.add_subcommand("profile", "Data profile from suite records");
    std::string records_file, profile_out;
    profile_cmd->add_option("--records", records_file, "records.jsonl from `suite`")->required();
    profile_cmd->add_option("--out", profile_out, "output CSV (default stdout)");

    // ranks
    auto* ranks_cmd = app.add_subcommand("ranks", "Friedman mean ranks at budget snapshots");
    std::string ranks_records, budgets_arg;
    ranks_cmd->add_option("--records", ranks_records, "records.jsonl from `suite`")->required();
    ranks_cmd->add_option("--budgets", budgets_arg,
                          "per-dimension budgets (default 1e2,1e3,1e4,1e5)");

    auto* presets_cmd = app.add_subcommand("presets", "List the built-in configurations");
    auto* combos_cmd = app.add_subcommand("combos", "Count the option-space combinations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (run_cmd->parsed())
            return cmd_run(config_file, preset_name, problem_name, n, seed, max_evals, max_iters,
                           fgoal, fgoal_opt->count() > 0, out_file);
        if (suite_cmd->parsed())
            return cmd_suite(configs_arg, problems_arg, all_problems, dims_arg, seeds_arg, jobs,
                             max_evals, max_seconds, out_dir);
        if (profile_cmd->parsed()) return cmd_profile(records_file, profile_out);
        if (ranks_cmd->parsed()) return cmd_ranks(ranks_records, budgets_arg);
        if (presets_cmd->parsed()) return cmd_presets();
        if (combos_cmd->parsed()) return cmd_combos();
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << "\n";
        return kExitRunFailure;
    }
    return kExitUsage;
}
