#pragma once

#include "cointkit/linreg.hpp"
#include "cointkit/types.hpp"

#include <Eigen/Dense>

#include <optional>
#include <set>
#include <vector>

namespace cointkit {

/// Cumulative stability path with its significance band. Entry i belongs to
/// recursion step t = k + 1 + i (1-based observation number).
struct StabilityResult {
    Eigen::VectorXd path;
    Eigen::VectorXd lower_bound;
    Eigen::VectorXd upper_bound;
    Level level = Level::Five;
    bool stable = true;
};

/// Standardised one-step-ahead prediction errors w_{k+1..n} of expanding-sample
/// fits. Throws RankDeficientPrefix when the first k rows are singular.
[[nodiscard]] Eigen::VectorXd recursive_residuals(const Eigen::VectorXd& y, const Eigen::MatrixXd& X);

/// LM = n R^2 of the residuals on the design plus `lags` zero-padded residual lags; chi2(lags).
[[nodiscard]] TestStatistic breusch_godfrey(const RegressionResult& rr, int lags);

/// F test on fitted-value powers added to the design.
[[nodiscard]] TestStatistic ramsey_reset(const RegressionResult& rr, const std::set<int>& powers = {2});

/// JB = n/6 (S^2 + (K-3)^2/4) with divisor-n moments; chi2(2).
[[nodiscard]] TestStatistic jarque_bera(const Eigen::VectorXd& residuals);

/// LM = n R^2 of squared residuals on the design; chi2(non-constant regressors).
[[nodiscard]] TestStatistic breusch_pagan(const RegressionResult& rr);

/// Brown-Durbin-Evans CUSUM with straight-line bounds a (sqrt(n-k) + 2 (t-k)/sqrt(n-k)).
[[nodiscard]] StabilityResult cusum(const RegressionResult& rr, Level level = Level::Five);

/// CUSUM of squares with parallel bounds (t-k)/(n-k) +/- c0.
[[nodiscard]] StabilityResult cusumsq(const RegressionResult& rr, Level level = Level::Five);

struct DiagnosticsConfig {
    bool serial_correlation = true;
    bool functional_form = true;
    bool normality = true;
    bool heteroscedasticity = true;
    bool stability = true;
    int bg_lags = 2;
    std::set<int> reset_powers{2};
    Level alpha = Level::Five;
};

/// The six-test battery. Disabled tests are absent; the verdict passes iff no
/// present test rejects at alpha and every present stability path stays in band.
struct DiagnosticsReport {
    std::optional<TestStatistic> serial_correlation;
    std::optional<TestStatistic> functional_form;
    std::optional<TestStatistic> normality;
    std::optional<TestStatistic> heteroscedasticity;
    std::optional<StabilityResult> cusum;
    std::optional<StabilityResult> cusumsq;
    Level alpha = Level::Five;
    bool pass = true;

    [[nodiscard]] bool empty() const noexcept {
        return !serial_correlation && !functional_form && !normality && !heteroscedasticity && !cusum && !cusumsq;
    }
};

[[nodiscard]] DiagnosticsReport run_diagnostics(const RegressionResult& rr, const DiagnosticsConfig& cfg);

}  // namespace cointkit
