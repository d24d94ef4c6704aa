#ifndef GENDIRECT_OPTIONS_HPP
#define GENDIRECT_OPTIONS_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace gendirect {

enum class PartitionScheme { DTC, DTDV, DTCS, DBVS, DBDP, DBVD, DBC };
enum class SideRule { All, One };
enum class AggrFuncVal { Midpoint, Minimum, Mean, MidMin };
enum class CandMeasure { Diagonal, LongSide };
enum class SelectionStrategy { Original, Aggressive, Pareto, RedPareto };
enum class EqualCand { All, One };
enum class SolRefin { Min, Median, Average, Off };
enum class ControlEp { Off, Restart, MultiLevel1, MultiLevel2 };
enum class HybridStrategy { Off, Single, Clustering, Aggressive };
enum class LocalSearchKind { InteriorPoint, Sqp, SqpLegacy, ActiveSet };

inline constexpr std::array<PartitionScheme, 7> kAllSchemes = {
    PartitionScheme::DTC,  PartitionScheme::DTDV, PartitionScheme::DTCS, PartitionScheme::DBVS,
    PartitionScheme::DBDP, PartitionScheme::DBVD, PartitionScheme::DBC};
inline constexpr std::array<SideRule, 2> kAllSideRules = {SideRule::All, SideRule::One};
inline constexpr std::array<AggrFuncVal, 4> kAllAggrFuncVals = {
    AggrFuncVal::Midpoint, AggrFuncVal::Minimum, AggrFuncVal::Mean, AggrFuncVal::MidMin};
inline constexpr std::array<CandMeasure, 2> kAllCandMeasures = {CandMeasure::Diagonal,
                                                                CandMeasure::LongSide};
inline constexpr std::array<SelectionStrategy, 4> kAllSelectionStrategies = {
    SelectionStrategy::Original, SelectionStrategy::Aggressive, SelectionStrategy::Pareto,
    SelectionStrategy::RedPareto};
inline constexpr std::array<EqualCand, 2> kAllEqualCands = {EqualCand::All, EqualCand::One};
inline constexpr std::array<SolRefin, 4> kAllSolRefins = {SolRefin::Min, SolRefin::Median,
                                                          SolRefin::Average, SolRefin::Off};
inline constexpr std::array<ControlEp, 4> kAllControlEps = {
    ControlEp::Off, ControlEp::Restart, ControlEp::MultiLevel1, ControlEp::MultiLevel2};
inline constexpr std::array<HybridStrategy, 4> kAllHybridStrategies = {
    HybridStrategy::Off, HybridStrategy::Single, HybridStrategy::Clustering,
    HybridStrategy::Aggressive};
inline constexpr std::array<LocalSearchKind, 4> kAllLocalSearchKinds = {
    LocalSearchKind::InteriorPoint, LocalSearchKind::Sqp, LocalSearchKind::SqpLegacy,
    LocalSearchKind::ActiveSet};

std::string_view to_string(PartitionScheme v);
std::string_view to_string(SideRule v);
std::string_view to_string(AggrFuncVal v);
std::string_view to_string(CandMeasure v);
std::string_view to_string(SelectionStrategy v);
std::string_view to_string(EqualCand v);
std::string_view to_string(SolRefin v);
std::string_view to_string(ControlEp v);
std::string_view to_string(HybridStrategy v);
std::string_view to_string(LocalSearchKind v);

std::optional<PartitionScheme> parse_scheme(std::string_view s);
std::optional<SideRule> parse_side_rule(std::string_view s);
std::optional<AggrFuncVal> parse_aggr_func_val(std::string_view s);
std::optional<CandMeasure> parse_cand_measure(std::string_view s);
std::optional<SelectionStrategy> parse_selection_strategy(std::string_view s);
std::optional<EqualCand> parse_equal_cand(std::string_view s);
std::optional<SolRefin> parse_sol_refin(std::string_view s);
std::optional<ControlEp> parse_control_ep(std::string_view s);
std::optional<HybridStrategy> parse_hybrid_strategy(std::string_view s);
std::optional<LocalSearchKind> parse_local_search_kind(std::string_view s);

/// True for schemes whose elements carry an evaluated midpoint sample.
inline bool scheme_samples_midpoint(PartitionScheme s) {
    return s == PartitionScheme::DTC || s == PartitionScheme::DTCS || s == PartitionScheme::DBC;
}

/// True for schemes whose elements carry a single sample point.
inline bool scheme_single_sample(PartitionScheme s) {
    return s == PartitionScheme::DTC || s == PartitionScheme::DTCS;
}

/// Default measure scale factor per scheme.
inline double default_lambda(PartitionScheme s) {
    switch (s) {
        case PartitionScheme::DTC: return 0.5;
        case PartitionScheme::DBDP: return 2.0 / 3.0;
        default: return 1.0;
    }
}

}  // namespace gendirect

#endif  // GENDIRECT_OPTIONS_HPP
