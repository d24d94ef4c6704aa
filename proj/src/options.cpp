#include "gendirect/options.hpp"

namespace gendirect {

std::string_view to_string(PartitionScheme v) {
    switch (v) {
        case PartitionScheme::DTC: return "DTC";
        case PartitionScheme::DTDV: return "DTDV";
        case PartitionScheme::DTCS: return "DTCS";
        case PartitionScheme::DBVS: return "DBVS";
        case PartitionScheme::DBDP: return "DBDP";
        case PartitionScheme::DBVD: return "DBVD";
        case PartitionScheme::DBC: return "DBC";
    }
    return "?";
}

std::string_view to_string(SideRule v) { return v == SideRule::All ? "All" : "One"; }

std::string_view to_string(AggrFuncVal v) {
    switch (v) {
        case AggrFuncVal::Midpoint: return "Midpoint";
        case AggrFuncVal::Minimum: return "Minimum";
        case AggrFuncVal::Mean: return "Mean";
        case AggrFuncVal::MidMin: return "MidMin";
    }
    return "?";
}

std::string_view to_string(CandMeasure v) {
    return v == CandMeasure::Diagonal ? "Diagonal" : "LongSide";
}

std::string_view to_string(SelectionStrategy v) {
    switch (v) {
        case SelectionStrategy::Original: return "Original";
        case SelectionStrategy::Aggressive: return "Aggressive";
        case SelectionStrategy::Pareto: return "Pareto";
        case SelectionStrategy::RedPareto: return "RedPareto";
    }
    return "?";
}

std::string_view to_string(EqualCand v) { return v == EqualCand::All ? "All" : "One"; }

std::string_view to_string(SolRefin v) {
    switch (v) {
        case SolRefin::Min: return "Min";
        case SolRefin::Median: return "Median";
        case SolRefin::Average: return "Average";
        case SolRefin::Off: return "Off";
    }
    return "?";
}

std::string_view to_string(ControlEp v) {
    switch (v) {
        case ControlEp::Off: return "Off";
        case ControlEp::Restart: return "Restart";
        case ControlEp::MultiLevel1: return "MultiLevel1";
        case ControlEp::MultiLevel2: return "MultiLevel2";
    }
    return "?";
}

std::string_view to_string(HybridStrategy v) {
    switch (v) {
        case HybridStrategy::Off: return "Off";
        case HybridStrategy::Single: return "Single";
        case HybridStrategy::Clustering: return "Clustering";
        case HybridStrategy::Aggressive: return "Aggressive";
    }
    return "?";
}

std::string_view to_string(LocalSearchKind v) {
    switch (v) {
        case LocalSearchKind::InteriorPoint: return "interior-point";
        case LocalSearchKind::Sqp: return "sqp";
        case LocalSearchKind::SqpLegacy: return "sqp-legacy";
        case LocalSearchKind::ActiveSet: return "active-set";
    }
    return "?";
}

namespace {

template <typename Enum, typename Domain>
std::optional<Enum> parse_from(std::string_view s, const Domain& domain) {
    for (Enum v : domain)
        if (to_string(v) == s) return v;
    return std::nullopt;
}

}  // namespace

std::optional<PartitionScheme> parse_scheme(std::string_view s) {
    return parse_from<PartitionScheme>(s, kAllSchemes);
}
std::optional<SideRule> parse_side_rule(std::string_view s) {
    if (s == "ALL") return SideRule::All;  // Table 2 spells the default in caps
    return parse_from<SideRule>(s, kAllSideRules);
}
std::optional<AggrFuncVal> parse_aggr_func_val(std::string_view s) {
    if (s == "Min") return AggrFuncVal::Minimum;  // preset tables abbreviate Minimum
    return parse_from<AggrFuncVal>(s, kAllAggrFuncVals);
}
std::optional<CandMeasure> parse_cand_measure(std::string_view s) {
    return parse_from<CandMeasure>(s, kAllCandMeasures);
}
std::optional<SelectionStrategy> parse_selection_strategy(std::string_view s) {
    return parse_from<SelectionStrategy>(s, kAllSelectionStrategies);
}
std::optional<EqualCand> parse_equal_cand(std::string_view s) {
    return parse_from<EqualCand>(s, kAllEqualCands);
}
std::optional<SolRefin> parse_sol_refin(std::string_view s) {
    return parse_from<SolRefin>(s, kAllSolRefins);
}
std::optional<ControlEp> parse_control_ep(std::string_view s) {
    return parse_from<ControlEp>(s, kAllControlEps);
}
std::optional<HybridStrategy> parse_hybrid_strategy(std::string_view s) {
    return parse_from<HybridStrategy>(s, kAllHybridStrategies);
}
std::optional<LocalSearchKind> parse_local_search_kind(std::string_view s) {
    return parse_from<LocalSearchKind>(s, kAllLocalSearchKinds);
}

}  // namespace gendirect
