#pragma once

#include "cointkit/critical_values.hpp"
#include "cointkit/dataio.hpp"
#include "cointkit/linreg.hpp"
#include "cointkit/types.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cointkit {

/// ARDL(p, q_1, ..., q_k) specification. In levels form the dependent variable
/// enters with lags 1..p and regressor j with lags 0..q_j.
struct ArdlSpec {
    std::string dependent;
    std::vector<std::string> regressors;
    int p = 1;
    std::map<std::string, int> q;
    Deterministic det = Deterministic::Constant;
    BoundsCase bounds_case = BoundsCase::III;

    /// Throws InvalidParameters unless p >= 1, every q >= 0, every regressor has
    /// a q, the dependent is not a regressor and det includes a constant.
    void validate() const;
    [[nodiscard]] int max_order() const;
    /// "ARDL(2, 1)" style label, regressors in declaration order.
    [[nodiscard]] std::string label() const;
};

/// Conditional error-correction (unrestricted ECM) fit of an ARDL model:
///
///   D(y)_t = c [+ g t] + sum_{i<p} a_i D(y)_{t-i} + sum_j sum_{i<q_j} b_ji D(x_j)_{t-i}
///            + l_1 y_{t-1} + sum_j l_j x_{j,t-1} + e_t
///
/// A regressor with q_j = 0 enters as the level x_{j,t} with no difference terms.
struct ArdlModel {
    ArdlSpec spec;
    RegressionResult levels_fit;
    Eigen::Index n_effective = 0;
    /// Dataset row of the first estimation observation.
    Eigen::Index sample_start = 0;
    std::vector<Period> sample_index;
    std::string dependent_level_term;
    /// regressor -> its level column name in levels_fit
    std::map<std::string, std::string> regressor_level_terms;
    /// Data the model was estimated on.
    std::shared_ptr<const Dataset> data;

    [[nodiscard]] double lambda1() const { return levels_fit.coefficient(dependent_level_term); }
};

enum class BoundsDecision { Cointegrated, NotCointegrated, Inconclusive };

[[nodiscard]] std::string_view to_string(BoundsDecision d) noexcept;

/// cointegrated iff F > upper, not_cointegrated iff F < lower.
[[nodiscard]] BoundsDecision bounds_decision(double f_statistic, const Bounds& bounds) noexcept;

struct BoundsTestResult {
    double f_statistic = 0.0;
    BoundsCase bounds_case = BoundsCase::III;
    int k = 0;
    std::map<Level, Bounds> bounds;
    std::map<Level, BoundsDecision> decision_at;
    Level alpha = Level::Five;
    BoundsDecision decision = BoundsDecision::Inconclusive;
    TestStatistic wald;
};

struct LongRunCoefficients {
    /// regressors first, then "C" (and "TREND" when present)
    std::vector<std::string> names;
    Eigen::VectorXd values;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd t_stats;

    [[nodiscard]] double value(std::string_view name) const;
    [[nodiscard]] double std_error(std::string_view name) const;
    [[nodiscard]] double t_stat(std::string_view name) const;
};

struct ShortRunTerm {
    std::string name;
    double coefficient = 0.0;
    double std_error = 0.0;
    double t_stat = 0.0;
    double p_value = 1.0;
};

struct EcmResult {
    std::vector<ShortRunTerm> short_run;
    /// Loading on the lagged equilibrium error, reported as ECM(-1).
    double ecm_coefficient = 0.0;
    double ecm_std_error = 0.0;
    double ecm_t_stat = 0.0;
    double ecm_p_value = 1.0;
    /// l_1 from the one-step conditional ECM and |ecm_coefficient - l_1|.
    double one_step_loading = 0.0;
    double identity_gap = 0.0;
    bool non_negative_loading = false;
    LongRunCoefficients long_run;
    RegressionResult fit;

    /// |ECM(-1)| * 100: share of a disequilibrium corrected per period.
    [[nodiscard]] double adjustment_percent() const noexcept { return std::abs(ecm_coefficient) * 100.0; }
};

inline constexpr const char* kEcmTerm = "ECM(-1)";

/// Exhaustive search over p in 1..max_p and q_j in 0..max_q, every candidate
/// fitted on the common sample of the largest orders. Ties go to the smaller
/// total lag count, then the smaller p.
[[nodiscard]] ArdlSpec select_lags(const Dataset& d, int max_p, int max_q, Criterion criterion,
                                   Deterministic det = Deterministic::Constant,
                                   BoundsCase bounds_case = BoundsCase::III);

/// Fits the conditional ECM on rows max(p, max q) + 1 .. T - 1.
[[nodiscard]] ArdlModel estimate_ardl(const Dataset& d, const ArdlSpec& spec);

/// Same ARDL in levels form (y on its lags and current/lagged x) on the same
/// rows. Its residuals equal those of estimate_ardl.
[[nodiscard]] RegressionResult estimate_ardl_levels(const Dataset& d, const ArdlSpec& spec);

/// Bounds F test on all lagged level terms (plus the intercept in case II).
[[nodiscard]] BoundsTestResult bounds_test(const ArdlModel& m, Level alpha = Level::Five);

/// Long-run multipliers -l_j / l_1 (constant -c / l_1) with delta-method errors.
[[nodiscard]] LongRunCoefficients long_run(const ArdlModel& m);

/// Two-step ECM: equilibrium error from long_run, then D(y) on the short-run
/// differences and the lagged equilibrium error.
[[nodiscard]] EcmResult estimate_ecm(const ArdlModel& m);

}  // namespace cointkit
