#pragma once

#include "cointkit/dataio.hpp"
#include "cointkit/linreg.hpp"
#include "cointkit/types.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace cointkit {

enum class UnitRootTestKind { ADF, PP };
enum class LagSelection { AIC, SBC, Fixed };
enum class Verdict { Stationary, UnitRoot };

[[nodiscard]] std::string_view to_string(UnitRootTestKind t) noexcept;
[[nodiscard]] std::string_view to_string(LagSelection s) noexcept;
[[nodiscard]] std::string_view to_string(Verdict v) noexcept;
[[nodiscard]] std::optional<UnitRootTestKind> parse_unit_root_test(std::string_view text);
[[nodiscard]] std::optional<LagSelection> parse_lag_selection(std::string_view text);

struct UnitRootResult {
    UnitRootTestKind test = UnitRootTestKind::ADF;
    Deterministic spec = Deterministic::Constant;
    /// Augmentation lags (ADF) or Newey-West bandwidth (PP).
    int lag_or_bandwidth = 0;
    /// t-ratio on the lagged level (ADF) or the Phillips-Perron Z_t.
    double statistic = 0.0;
    /// Observations in the test regression; the critical values are evaluated here.
    Eigen::Index nobs = 0;
    std::map<Level, double> critical_values;
    std::map<Level, Verdict> verdict_at;
    LagSelection selection = LagSelection::Fixed;
    RegressionResult regression;
};

/// Left-tail decision: stationary iff statistic < critical value.
[[nodiscard]] std::map<Level, Verdict> unit_root_verdicts(double statistic,
                                                          const std::map<Level, double>& critical_values);

/// floor(12 (T/100)^(1/4)).
[[nodiscard]] int default_adf_max_lag(Eigen::Index T) noexcept;

/// Augmented Dickey-Fuller test. Candidate lags 0..max_lag are compared on the
/// common max_lag sample (ties go to the smaller lag); the chosen lag is then
/// refitted on its own largest sample. With LagSelection::Fixed, max_lag is used as is.
[[nodiscard]] UnitRootResult adf_test(const Eigen::VectorXd& y, Deterministic spec,
                                      std::optional<int> max_lag = std::nullopt,
                                      LagSelection rule = LagSelection::AIC);
[[nodiscard]] UnitRootResult adf_test(const TimeSeries& s, Deterministic spec,
                                      std::optional<int> max_lag = std::nullopt,
                                      LagSelection rule = LagSelection::AIC);

/// Phillips-Perron Z_t test: unaugmented Dickey-Fuller regression with the
/// t-ratio corrected by the Newey-West long-run variance of its residuals.
[[nodiscard]] UnitRootResult pp_test(const Eigen::VectorXd& y, Deterministic spec,
                                     std::optional<int> bandwidth = std::nullopt);
[[nodiscard]] UnitRootResult pp_test(const TimeSeries& s, Deterministic spec,
                                     std::optional<int> bandwidth = std::nullopt);

struct ClassifyConfig {
    UnitRootTestKind test = UnitRootTestKind::ADF;
    Deterministic spec = Deterministic::Constant;
    std::optional<int> max_lag;
    LagSelection selection = LagSelection::AIC;
    std::optional<int> bandwidth;
    Level alpha = Level::Five;
};

enum class OrderOfIntegration { I0, I1, Higher };

[[nodiscard]] std::string_view to_string(OrderOfIntegration o) noexcept;

struct IntegrationOrder {
    std::string series;
    OrderOfIntegration order = OrderOfIntegration::I0;
    UnitRootResult level;
    UnitRootResult difference;
};

[[nodiscard]] UnitRootResult run_unit_root_test(const TimeSeries& s, const ClassifyConfig& cfg);

/// Level-then-first-difference protocol: I0 if the level is stationary at
/// cfg.alpha, I1 if only the difference is, Higher otherwise.
[[nodiscard]] IntegrationOrder classify_integration(const TimeSeries& s, const ClassifyConfig& cfg);

}  // namespace cointkit
