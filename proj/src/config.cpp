#include "gendirect/config.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gendirect {

bool AlgorithmConfig::operator==(const AlgorithmConfig& o) const {
    return partitioning.strategy == o.partitioning.strategy &&
           partitioning.sub_sides == o.partitioning.sub_sides &&
           selection.aggr_func_val == o.selection.aggr_func_val &&
           selection.cand_measure == o.selection.cand_measure &&
           selection.strategy == o.selection.strategy &&
           selection.equal_cand == o.selection.equal_cand &&
           selection.sol_refin == o.selection.sol_refin && selection.ep == o.selection.ep &&
           selection.control_ep == o.selection.control_ep &&
           selection.globally_biased == o.selection.globally_biased &&
           selection.two_phase == o.selection.two_phase && selection.lambda == o.selection.lambda &&
           hybridization.strategy == o.hybridization.strategy &&
           hybridization.local_search == o.hybridization.local_search &&
           hybridization.max_iterations == o.hybridization.max_iterations &&
           hybridization.max_evaluations == o.hybridization.max_evaluations;
}

ConfigValidation validate_config(const AlgorithmConfig& input) {
    ConfigValidation out;
    out.config = input;

    if (!(input.selection.ep >= 0.0) || !std::isfinite(input.selection.ep))
        out.errors.push_back("Selection.Ep: must be a finite value >= 0");
    if (input.selection.lambda != 0.0 &&
        !(input.selection.lambda > 0.0 && input.selection.lambda <= 1.0))
        out.errors.push_back("Selection.Lambda: must lie in (0, 1]");
    if (input.hybridization.max_iterations <= 0)
        out.errors.push_back("Hybridization.MaxIterations: must be positive");
    if (input.hybridization.max_evaluations <= 0)
        out.errors.push_back("Hybridization.MaxEvaluations: must be positive");
    if (input.gb_stagnation_limit <= 0 || input.gb_global_cap <= 0 ||
        !(input.gb_improve_rtol >= 0.0))
        out.errors.push_back("GloballyBiased tuning: limits must be positive");

    if (out.config.selection.lambda <= 0.0)
        out.config.selection.lambda = default_lambda(out.config.partitioning.strategy);

    PartitionScheme scheme = out.config.partitioning.strategy;
    AggrFuncVal aggr = out.config.selection.aggr_func_val;
    if ((aggr == AggrFuncVal::Midpoint || aggr == AggrFuncVal::MidMin) &&
        !scheme_samples_midpoint(scheme)) {
        std::ostringstream w;
        w << "Selection.AggrFuncVal: " << to_string(aggr) << " needs a midpoint sample, which "
          << to_string(scheme) << " never evaluates; Minimum is used instead";
        out.warnings.push_back(w.str());
    }
    if (out.config.selection.cand_measure == CandMeasure::LongSide && scheme_single_sample(scheme)) {
        std::ostringstream w;
        w << "Selection.CandMeasure: LongSide degenerates on the single-sample scheme "
          << to_string(scheme) << "; Diagonal is used instead";
        out.warnings.push_back(w.str());
    }
    return out;
}

namespace {

const char* kKeys[] = {
    "Partitioning.Strategy",    "Partitioning.SubSides",      "Selection.AggrFuncVal",
    "Selection.CandMeasure",    "Selection.Strategy",         "Selection.EqualCand",
    "Selection.SolRefin",       "Selection.Ep",               "Selection.ControlEp",
    "Selection.GloballyBiased", "Selection.TwoPhase",         "Hybridization.Strategy",
    "Hybridization.LocalSearch", "Hybridization.MaxIterations", "Hybridization.MaxEvaluations",
};

bool known_key(const std::string& k) {
    for (const char* key : kKeys)
        if (k == key) return true;
    return false;
}

template <typename Enum, typename Parser>
void parse_enum_key(const nlohmann::json& j, const char* key, Enum* slot, Parser parser,
                    std::vector<std::string>& errors) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (!v.is_string()) {
        errors.push_back(std::string(key) + ": expected a string");
        return;
    }
    auto parsed = parser(v.template get<std::string>());
    if (!parsed) {
        errors.push_back(std::string(key) + ": unknown value '" + v.template get<std::string>() + "'");
        return;
    }
    *slot = *parsed;
}

std::optional<bool> parse_on_off(const std::string& s) {
    if (s == "On") return true;
    if (s == "Off") return false;
    return std::nullopt;
}

}  // namespace

ConfigValidation config_from_json(const nlohmann::json& j) {
    ConfigValidation out;
    if (!j.is_object()) {
        out.errors.push_back("config: expected a JSON object");
        return out;
    }
    for (const auto& [key, value] : j.items())
        if (!known_key(key)) out.errors.push_back(key + ": unknown parameter");

    AlgorithmConfig c;
    parse_enum_key(j, "Partitioning.Strategy", &c.partitioning.strategy, parse_scheme, out.errors);
    parse_enum_key(j, "Partitioning.SubSides", &c.partitioning.sub_sides, parse_side_rule,
                   out.errors);
    parse_enum_key(j, "Selection.AggrFuncVal", &c.selection.aggr_func_val, parse_aggr_func_val,
                   out.errors);
    parse_enum_key(j, "Selection.CandMeasure", &c.selection.cand_measure, parse_cand_measure,
                   out.errors);
    parse_enum_key(j, "Selection.Strategy", &c.selection.strategy, parse_selection_strategy,
                   out.errors);
    parse_enum_key(j, "Selection.EqualCand", &c.selection.equal_cand, parse_equal_cand, out.errors);
    parse_enum_key(j, "Selection.SolRefin", &c.selection.sol_refin, parse_sol_refin, out.errors);
    parse_enum_key(j, "Selection.ControlEp", &c.selection.control_ep, parse_control_ep, out.errors);
    parse_enum_key(j, "Selection.GloballyBiased", &c.selection.globally_biased, parse_on_off,
                   out.errors);
    parse_enum_key(j, "Selection.TwoPhase", &c.selection.two_phase, parse_on_off, out.errors);
    parse_enum_key(j, "Hybridization.Strategy", &c.hybridization.strategy, parse_hybrid_strategy,
                   out.errors);
    parse_enum_key(j, "Hybridization.LocalSearch", &c.hybridization.local_search,
                   parse_local_search_kind, out.errors);

    if (j.contains("Selection.Ep")) {
        if (!j.at("Selection.Ep").is_number())
            out.errors.push_back("Selection.Ep: expected a number");
        else
            c.selection.ep = j.at("Selection.Ep").get<double>();
    }
    for (auto [key, slot] : {std::pair{"Hybridization.MaxIterations", &c.hybridization.max_iterations},
                             std::pair{"Hybridization.MaxEvaluations", &c.hybridization.max_evaluations}}) {
        if (!j.contains(key)) continue;
        if (!j.at(key).is_number_integer())
            out.errors.push_back(std::string(key) + ": expected an integer");
        else
            *slot = j.at(key).get<int>();
    }

    if (!out.errors.empty()) return out;
    ConfigValidation normalized = validate_config(c);
    normalized.errors.insert(normalized.errors.begin(), out.errors.begin(), out.errors.end());
    return normalized;
}

nlohmann::json config_to_json(const AlgorithmConfig& c) {
    nlohmann::json j;
    j["Partitioning.Strategy"] = std::string(to_string(c.partitioning.strategy));
    j["Partitioning.SubSides"] = std::string(to_string(c.partitioning.sub_sides));
    j["Selection.AggrFuncVal"] = std::string(to_string(c.selection.aggr_func_val));
    j["Selection.CandMeasure"] = std::string(to_string(c.selection.cand_measure));
    j["Selection.Strategy"] = std::string(to_string(c.selection.strategy));
    j["Selection.EqualCand"] = std::string(to_string(c.selection.equal_cand));
    j["Selection.SolRefin"] = std::string(to_string(c.selection.sol_refin));
    j["Selection.Ep"] = c.selection.ep;
    j["Selection.ControlEp"] = std::string(to_string(c.selection.control_ep));
    j["Selection.GloballyBiased"] = c.selection.globally_biased ? "On" : "Off";
    j["Selection.TwoPhase"] = c.selection.two_phase ? "On" : "Off";
    j["Hybridization.Strategy"] = std::string(to_string(c.hybridization.strategy));
    j["Hybridization.LocalSearch"] = std::string(to_string(c.hybridization.local_search));
    j["Hybridization.MaxIterations"] = c.hybridization.max_iterations;
    j["Hybridization.MaxEvaluations"] = c.hybridization.max_evaluations;
    return j;
}

std::vector<std::string> config_diff(const AlgorithmConfig& a, const AlgorithmConfig& b) {
    std::vector<std::string> out;
    nlohmann::json ja = config_to_json(a), jb = config_to_json(b);
    for (const char* key : kKeys)
        if (ja.at(key) != jb.at(key)) out.push_back(key);
    return out;
}

std::tuple<int, int, int> config_space_size() {
    int partitioning = 0;
    for ([[maybe_unused]] auto s : kAllSchemes)
        for ([[maybe_unused]] auto r : kAllSideRules) ++partitioning;

    int selection = 0;
    for ([[maybe_unused]] auto a : kAllAggrFuncVals)
        for ([[maybe_unused]] auto m : kAllCandMeasures)
            for ([[maybe_unused]] auto s : kAllSelectionStrategies)
                for ([[maybe_unused]] auto e : kAllEqualCands)
                    for ([[maybe_unused]] auto f : kAllSolRefins)
                        for ([[maybe_unused]] auto c : kAllControlEps)
                            for (bool gb : {false, true})
                                for (bool tp : {false, true}) {
                                    (void)gb;
                                    (void)tp;
                                    ++selection;
                                }

    int hybridization = 0;
    for (auto h : kAllHybridStrategies) {
        if (h == HybridStrategy::Off) {
            ++hybridization;  // local-search choice is moot when disabled
            continue;
        }
        for ([[maybe_unused]] auto ls : kAllLocalSearchKinds) ++hybridization;
    }
    return {partitioning, selection, hybridization};
}

namespace {

AlgorithmConfig base_preset(const std::string& name) {
    AlgorithmConfig c;  // defaults: DTC, All, Midpoint, Diagonal, Original, All, Min, 1e-4, Off...
    if (name == "1-DTC-GL") {
        c.partitioning.sub_sides = SideRule::One;
        c.selection.strategy = SelectionStrategy::Pareto;
        c.selection.equal_cand = EqualCand::One;
        c.selection.sol_refin = SolRefin::Off;
        c.selection.two_phase = true;
    } else if (name == "HALRECT-IA") {
        c.partitioning.strategy = PartitionScheme::DBC;
        c.selection.aggr_func_val = AggrFuncVal::MidMin;
        c.selection.strategy = SelectionStrategy::Aggressive;
        c.selection.equal_cand = EqualCand::One;
        c.selection.sol_refin = SolRefin::Off;
    } else if (name == "MrDIRECT") {
        c.selection.control_ep = ControlEp::MultiLevel1;
    } else if (name == "BIRMIN") {
        c.partitioning.strategy = PartitionScheme::DBDP;
        c.partitioning.sub_sides = SideRule::One;
        c.selection.aggr_func_val = AggrFuncVal::Minimum;
        c.selection.equal_cand = EqualCand::One;
        c.selection.globally_biased = true;
        c.hybridization.strategy = HybridStrategy::Single;
    } else if (name == "DIRMIN") {
        c.hybridization.strategy = HybridStrategy::Aggressive;
    } else {
        throw std::invalid_argument("preset: unknown name '" + name + "'");
    }
    return c;
}

void improve_preset(const std::string& name, AlgorithmConfig& c) {
    if (name == "1-DTC-GL") {
        c.hybridization.strategy = HybridStrategy::Single;
        c.hybridization.local_search = LocalSearchKind::Sqp;
    } else if (name == "HALRECT-IA") {
        c.hybridization.strategy = HybridStrategy::Aggressive;
        c.hybridization.local_search = LocalSearchKind::Sqp;
    } else if (name == "MrDIRECT") {
        c.hybridization.strategy = HybridStrategy::Clustering;
        c.hybridization.local_search = LocalSearchKind::Sqp;
    } else if (name == "BIRMIN") {
        c.partitioning.sub_sides = SideRule::All;
        c.selection.strategy = SelectionStrategy::Pareto;
        c.hybridization.local_search = LocalSearchKind::Sqp;
    } else {  // DIRMIN
        c.selection.cand_measure = CandMeasure::LongSide;
        c.selection.equal_cand = EqualCand::One;
        c.selection.sol_refin = SolRefin::Median;
    }
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const char* base : {"1-DTC-GL", "HALRECT-IA", "MrDIRECT", "BIRMIN", "DIRMIN"}) {
        out.push_back(std::string("original:") + base);
        out.push_back(std::string("improved:") + base);
    }
    return out;
}

AlgorithmConfig preset(const std::string& name) {
    auto colon = name.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("preset: expected '<original|improved>:<name>', got '" + name +
                                    "'");
    std::string variant = name.substr(0, colon);
    std::string base = name.substr(colon + 1);
    AlgorithmConfig c = base_preset(base);
    if (variant == "improved")
        improve_preset(base, c);
    else if (variant != "original")
        throw std::invalid_argument("preset: unknown variant '" + variant + "'");
    ConfigValidation v = validate_config(c);
    if (!v.ok()) throw std::logic_error("preset: produced an invalid config");
    return v.config;
}

}  // namespace gendirect
