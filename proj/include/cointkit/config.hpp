#pragma once

#include "cointkit/dataio.hpp"
#include "cointkit/diagnostics.hpp"
#include "cointkit/simgen.hpp"
#include "cointkit/types.hpp"
#include "cointkit/unitroot.hpp"

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cointkit {

enum class Transform { Log, Difference };

[[nodiscard]] std::string_view to_string(Transform t) noexcept;

/// Analysis variable built from a CSV column by a chain of transforms.
struct VariableConfig {
    std::string name;
    std::string source;
    std::vector<Transform> transforms;
};

/// Published bounds to echo next to the computed ones.
struct ReferenceBounds {
    double lower = 0.0;
    double upper = 0.0;
    std::string note;
};

struct ModelConfig {
    std::string name;
    std::string dependent;
    std::vector<std::string> regressors;
    int max_p = 4;
    int max_q = 4;
    Criterion criterion = Criterion::AIC;
    BoundsCase bounds_case = BoundsCase::III;
    /// False when the case was not written in the config (a warning is emitted).
    bool case_explicit = false;
    std::optional<ReferenceBounds> reference_bounds;
};

struct UnitRootConfig {
    /// Test and deterministic spec that drive I(0)/I(1)/I(2) classification.
    UnitRootTestKind classify_test = UnitRootTestKind::ADF;
    Deterministic classify_spec = Deterministic::Constant;
    std::optional<int> max_lag;
    LagSelection selection = LagSelection::AIC;
    std::optional<int> bandwidth;
};

struct OutputConfig {
    std::optional<std::filesystem::path> json;
    std::optional<std::filesystem::path> text;
};

struct PipelineConfig {
    std::filesystem::path input;
    CsvConfig csv;
    /// Empty: every CSV value column enters untransformed.
    std::vector<VariableConfig> variables;
    std::vector<ModelConfig> models;
    std::set<Level> alpha_levels{Level::One, Level::Five, Level::Ten};
    Level decision_alpha = Level::Five;
    UnitRootConfig unit_root;
    DiagnosticsConfig diagnostics;
    OutputConfig output;
    bool force = false;

    /// Schema checks that need no data: at least one model (unless require_models
    /// is false), every model variable declared when variables are listed, lag
    /// bounds, alpha levels.
    void validate(bool require_models = true) const;
};

/// Parses YAML or JSON text. Relative paths resolve against base_dir.
/// Throws Error(ConfigError) on any schema violation.
[[nodiscard]] PipelineConfig parse_pipeline_config(std::string_view text,
                                                   const std::filesystem::path& base_dir = {});
[[nodiscard]] PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// DGP description for the simulate subcommand, under a top-level `simulate` key.
[[nodiscard]] Dgp parse_dgp_config(std::string_view text);
[[nodiscard]] Dgp load_dgp_config(const std::filesystem::path& path);

}  // namespace cointkit
