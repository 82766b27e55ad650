#pragma once

#include "cointkit/ardl.hpp"
#include "cointkit/config.hpp"
#include "cointkit/dataio.hpp"
#include "cointkit/diagnostics.hpp"
#include "cointkit/unitroot.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cointkit {

/// One variable's row block: both tests, both deterministic specs, level and difference.
struct UnitRootRow {
    std::string variable;
    /// Keyed by (test, spec); first is the level, second the first difference.
    std::map<std::pair<UnitRootTestKind, Deterministic>, std::pair<UnitRootResult, UnitRootResult>> cells;
    OrderOfIntegration order = OrderOfIntegration::I0;
};

struct ModelReport {
    std::string name;
    ArdlSpec selected;
    Criterion criterion = Criterion::AIC;
    Eigen::Index n_effective = 0;
    Period sample_first;
    Period sample_last;
    BoundsTestResult bounds;
    std::optional<ReferenceBounds> reference_bounds;
    /// Absent when the gate withheld them.
    std::optional<LongRunCoefficients> long_run;
    std::optional<EcmResult> ecm;
    RegressionResult levels_fit;
    DiagnosticsReport diagnostics;
};

struct AnalysisReport {
    std::string source;
    DateFormat date_format = DateFormat::YearMonth;
    std::size_t observations = 0;
    std::set<Level> alpha_levels;
    Level decision_alpha = Level::Five;
    UnitRootTestKind classify_test = UnitRootTestKind::ADF;
    Deterministic classify_spec = Deterministic::Constant;
    bool force = false;
    std::vector<UnitRootRow> unit_root_table;
    std::vector<ModelReport> models;
    std::vector<std::string> warnings;
};

enum class PipelineStages { All, UnitRootOnly, ModelsOnly };

/// Applies each variable's transform chain to its source column. With no
/// variables configured every column is used as is.
[[nodiscard]] std::vector<TimeSeries> build_variables(const Dataset& raw, const PipelineConfig& cfg);

/// Runs the configured chain on already-loaded data. Stage failures rethrow
/// with the stage name prefixed; any I(2) variable raises I2VariablePresent
/// before lag selection.
[[nodiscard]] AnalysisReport run_pipeline(const PipelineConfig& cfg, const Dataset& raw,
                                          PipelineStages stages = PipelineStages::All);

/// Loads cfg.input and runs the chain.
[[nodiscard]] AnalysisReport run_pipeline(const PipelineConfig& cfg, PipelineStages stages = PipelineStages::All);

}  // namespace cointkit
