#pragma once

#include "cointkit/types.hpp"

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cointkit {

/// Named regressor columns. Names are unique and every column has n rows.
class DesignMatrix {
public:
    DesignMatrix(std::vector<std::string> names, Eigen::MatrixXd columns);

    /// Single column of ones named "const".
    [[nodiscard]] static DesignMatrix constant(Eigen::Index n);

    [[nodiscard]] DesignMatrix with_column(std::string name, const Eigen::VectorXd& column) const;
    [[nodiscard]] DesignMatrix without(const std::set<std::string>& names) const;

    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
    [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return x_; }
    [[nodiscard]] Eigen::Index rows() const noexcept { return x_.rows(); }
    [[nodiscard]] Eigen::Index cols() const noexcept { return x_.cols(); }
    [[nodiscard]] std::optional<Eigen::Index> index_of(std::string_view name) const noexcept;
    [[nodiscard]] Eigen::VectorXd column(std::string_view name) const;
    /// True when some column is a non-zero constant.
    [[nodiscard]] bool has_constant() const noexcept;

private:
    std::vector<std::string> names_;
    Eigen::MatrixXd x_;
};

/// OLS estimates with the full inference payload.
struct RegressionResult {
    std::vector<std::string> names;
    Eigen::VectorXd coefficients;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd t_stats;
    Eigen::VectorXd residuals;
    Eigen::VectorXd fitted;
    Eigen::MatrixXd cov_matrix;
    double rss = 0.0;
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    /// Overall significance F (all slopes zero; all coefficients when there is no constant).
    double f_statistic = 0.0;
    double f_p_value = 1.0;
    double durbin_watson = 0.0;
    /// Gaussian concentrated log-likelihood with ML variance RSS/n.
    double log_likelihood = 0.0;
    double aic = 0.0;
    double sbc = 0.0;
    /// RSS / (n - k).
    double sigma2 = 0.0;
    Eigen::Index n = 0;
    Eigen::Index k = 0;
    /// R² is centred iff the design contains a constant column.
    bool centered = true;
    std::shared_ptr<const DesignMatrix> design;

    [[nodiscard]] Eigen::Index index_of(std::string_view name) const;
    [[nodiscard]] double coefficient(std::string_view name) const { return coefficients[index_of(name)]; }
    [[nodiscard]] double std_error(std::string_view name) const { return std_errors[index_of(name)]; }
    [[nodiscard]] double t_stat(std::string_view name) const { return t_stats[index_of(name)]; }
    [[nodiscard]] Eigen::VectorXd dependent() const { return fitted + residuals; }
};

/// Least squares by column-pivoted Householder QR. Columns whose pivot falls
/// below 1e-10 times the largest column norm raise RankDeficient.
[[nodiscard]] RegressionResult ols(const Eigen::VectorXd& y, const DesignMatrix& X);

struct InformationCriteria {
    double aic;
    double sbc;
};

/// aic = -2 logL + 2k, sbc = -2 logL + k ln n.
[[nodiscard]] InformationCriteria information_criteria(double log_likelihood, Eigen::Index k,
                                                       Eigen::Index n) noexcept;
[[nodiscard]] InformationCriteria information_criteria(const RegressionResult& rr) noexcept;

struct Distribution {
    enum class Kind { F, ChiSquared, Normal, Nonstandard };
    Kind kind = Kind::Nonstandard;
    double df1 = 0.0;
    double df2 = 0.0;

    [[nodiscard]] std::string label() const;
};

struct TestStatistic {
    std::string name;
    double statistic = 0.0;
    Distribution distribution;
    /// Present iff the distribution is standard.
    std::optional<double> p_value;
    std::map<Level, Decision> decision_at;
};

/// Attaches the upper-tail p-value and per-level decisions for a standard distribution.
[[nodiscard]] TestStatistic make_test_statistic(std::string name, double statistic, Distribution dist);

[[nodiscard]] double chi_squared_sf(double x, double df);
[[nodiscard]] double f_sf(double x, double df1, double df2);
[[nodiscard]] double normal_cdf(double x);

enum class WaldContext { Standard, BoundsTest };

/// F test of H0: the named coefficients are all zero, from the restricted and
/// unrestricted residual sums of squares. In the bounds-test context the
/// statistic carries a nonstandard distribution and no p-value.
[[nodiscard]] TestStatistic wald_f_test(const RegressionResult& rr,
                                        const std::set<std::string>& restricted_names,
                                        WaldContext context = WaldContext::Standard);

/// Bartlett-kernel long-run variance with autocovariances of the demeaned
/// series at divisor n.
[[nodiscard]] double newey_west_lrv(const Eigen::VectorXd& residuals, int bandwidth);

/// floor(4 (n/100)^(2/9)).
[[nodiscard]] int default_newey_west_bandwidth(Eigen::Index n) noexcept;

[[nodiscard]] double durbin_watson(const Eigen::VectorXd& residuals);

}  // namespace cointkit
