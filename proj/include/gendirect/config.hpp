#ifndef GENDIRECT_CONFIG_HPP
#define GENDIRECT_CONFIG_HPP

#include <string>
#include <tuple>
#include <vector>

#include "gendirect/hybrid.hpp"
#include "gendirect/options.hpp"

#include "json.hpp"

namespace gendirect {

struct PartitioningConfig {
    PartitionScheme strategy = PartitionScheme::DTC;
    SideRule sub_sides = SideRule::All;
};

struct SelectionConfig {
    AggrFuncVal aggr_func_val = AggrFuncVal::Midpoint;
    CandMeasure cand_measure = CandMeasure::Diagonal;
    SelectionStrategy strategy = SelectionStrategy::Original;
    EqualCand equal_cand = EqualCand::All;
    SolRefin sol_refin = SolRefin::Min;
    double ep = 1e-4;
    ControlEp control_ep = ControlEp::Off;
    bool globally_biased = false;
    bool two_phase = false;
    double lambda = 0.0;  // <= 0: per-scheme default
};

/// The full parameter record: partitioning, selection and hybridization
/// blocks plus the globally-biased tuning knobs.
struct AlgorithmConfig {
    PartitioningConfig partitioning;
    SelectionConfig selection;
    HybridConfig hybridization;

    int gb_stagnation_limit = 10;
    double gb_improve_rtol = 1e-4;
    int gb_global_cap = 10;

    bool operator==(const AlgorithmConfig& o) const;
};

struct ConfigValidation {
    AlgorithmConfig config;
    std::vector<std::string> errors;    // non-empty => config unusable
    std::vector<std::string> warnings;  // scheme fallbacks and similar notes
    bool ok() const { return errors.empty(); }
};

/// Normalizes a config: fills the per-scheme lambda default, checks numeric
/// domains and records scheme/strategy fallback warnings.
ConfigValidation validate_config(const AlgorithmConfig& input);

/// Parses the dotted-key JSON form ("Partitioning.Strategy": "DTC", ...).
/// Missing keys take defaults; unknown keys or values become errors.
ConfigValidation config_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const AlgorithmConfig& c);

/// Names of config fields that differ between two configs (dotted keys).
std::vector<std::string> config_diff(const AlgorithmConfig& a, const AlgorithmConfig& b);

/// Number of distinct (partitioning, selection, hybridization) combinations,
/// counted by enumerating the declared option domains.
std::tuple<int, int, int> config_space_size();

/// Table of ready-made configurations; names look like "original:MrDIRECT"
/// and "improved:BIRMIN".
std::vector<std::string> preset_names();
AlgorithmConfig preset(const std::string& name);

}  // namespace gendirect

#endif  // GENDIRECT_CONFIG_HPP
