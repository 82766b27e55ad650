#include "cointkit/linreg.hpp"

#include "cointkit/error.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cointkit {

namespace {

constexpr double kRankTolerance = 1e-10;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// DesignMatrix
// ---------------------------------------------------------------------------

DesignMatrix::DesignMatrix(std::vector<std::string> names, Eigen::MatrixXd columns)
    : names_(std::move(names)), x_(std::move(columns)) {
    if (static_cast<Eigen::Index>(names_.size()) != x_.cols())
        throw Error(ErrorCode::DimensionMismatch, "design has " + std::to_string(x_.cols()) +
                                                      " columns but " + std::to_string(names_.size()) + " names");
    std::set<std::string> seen;
    for (const auto& n : names_)
        if (!seen.insert(n).second) throw Error(ErrorCode::InvalidParameters, "duplicate column name '" + n + "'");
}

DesignMatrix DesignMatrix::constant(Eigen::Index n) {
    return DesignMatrix({"const"}, Eigen::MatrixXd::Ones(n, 1));
}

DesignMatrix DesignMatrix::with_column(std::string name, const Eigen::VectorXd& column) const {
    if (column.size() != x_.rows() && x_.cols() > 0)
        throw Error(ErrorCode::DimensionMismatch, "column '" + name + "' has the wrong length");
    Eigen::MatrixXd m(column.size(), x_.cols() + 1);
    if (x_.cols() > 0) m.leftCols(x_.cols()) = x_;
    m.col(x_.cols()) = column;
    auto names = names_;
    names.push_back(std::move(name));
    return DesignMatrix(std::move(names), std::move(m));
}

DesignMatrix DesignMatrix::without(const std::set<std::string>& drop) const {
    std::vector<std::string> names;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < x_.cols(); ++j) {
        if (drop.count(names_[static_cast<std::size_t>(j)])) continue;
        names.push_back(names_[static_cast<std::size_t>(j)]);
        keep.push_back(j);
    }
    Eigen::MatrixXd m(x_.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = x_.col(keep[j]);
    return DesignMatrix(std::move(names), std::move(m));
}

std::optional<Eigen::Index> DesignMatrix::index_of(std::string_view name) const noexcept {
    for (std::size_t j = 0; j < names_.size(); ++j)
        if (names_[j] == name) return static_cast<Eigen::Index>(j);
    return std::nullopt;
}

Eigen::VectorXd DesignMatrix::column(std::string_view name) const {
    auto j = index_of(name);
    if (!j) throw Error(ErrorCode::UnknownCoefficient, "no column '" + std::string(name) + "'");
    return x_.col(*j);
}

bool DesignMatrix::has_constant() const noexcept {
    for (Eigen::Index j = 0; j < x_.cols(); ++j) {
        const auto c = x_.col(j);
        if (c.size() > 0 && c[0] != 0.0 && (c.array() == c[0]).all()) return true;
    }
    return false;
}

Eigen::Index RegressionResult::index_of(std::string_view name) const {
    for (std::size_t j = 0; j < names.size(); ++j)
        if (names[j] == name) return static_cast<Eigen::Index>(j);
    throw Error(ErrorCode::UnknownCoefficient, "no coefficient '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

double chi_squared_sf(double x, double df) {
    if (!(x > 0.0)) return 1.0;
    if (!std::isfinite(x)) return 0.0;
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>(df), x));
}

double f_sf(double x, double df1, double df2) {
    if (!(x > 0.0)) return 1.0;
    if (!std::isfinite(x)) return 0.0;
    return boost::math::cdf(boost::math::complement(boost::math::fisher_f_distribution<double>(df1, df2), x));
}

double normal_cdf(double x) {
    return boost::math::cdf(boost::math::normal_distribution<double>(), x);
}

std::string Distribution::label() const {
    auto num = [](double v) {
        return std::abs(v - std::round(v)) < 1e-12 ? std::to_string(static_cast<long>(std::round(v)))
                                                   : std::to_string(v);
    };
    switch (kind) {
        case Kind::F: return "F(" + num(df1) + "," + num(df2) + ")";
        case Kind::ChiSquared: return "chi2(" + num(df1) + ")";
        case Kind::Normal: return "normal";
        case Kind::Nonstandard: return "nonstandard-tabulated";
    }
    return "nonstandard-tabulated";
}

TestStatistic make_test_statistic(std::string name, double statistic, Distribution dist) {
    TestStatistic ts{std::move(name), statistic, dist, std::nullopt, {}};
    switch (dist.kind) {
        case Distribution::Kind::F: ts.p_value = f_sf(statistic, dist.df1, dist.df2); break;
        case Distribution::Kind::ChiSquared: ts.p_value = chi_squared_sf(statistic, dist.df1); break;
        case Distribution::Kind::Normal: ts.p_value = 2.0 * (1.0 - normal_cdf(std::abs(statistic))); break;
        case Distribution::Kind::Nonstandard: return ts;
    }
    for (Level l : kAllLevels)
        ts.decision_at[l] = *ts.p_value < alpha_of(l) ? Decision::Reject : Decision::FailToReject;
    return ts;
}

// ---------------------------------------------------------------------------
// OLS
// ---------------------------------------------------------------------------

RegressionResult ols(const Eigen::VectorXd& y, const DesignMatrix& X) {
    const Eigen::Index n = X.rows();
    const Eigen::Index k = X.cols();
    if (y.size() != n)
        throw Error(ErrorCode::DimensionMismatch,
                    "y has " + std::to_string(y.size()) + " rows, design has " + std::to_string(n));
    if (n <= k)
        throw Error(ErrorCode::SampleTooShort,
                    std::to_string(n) + " observations for " + std::to_string(k) + " regressors");

    RegressionResult rr;
    rr.names = X.names();
    rr.n = n;
    rr.k = k;
    rr.design = std::make_shared<const DesignMatrix>(X);
    rr.centered = X.has_constant();

    if (k > 0) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X.matrix());
        qr.setThreshold(kRankTolerance);
        if (qr.rank() < k) {
            std::vector<std::string> involved;
            const auto& perm = qr.colsPermutation().indices();
            for (Eigen::Index j = qr.rank(); j < k; ++j)
                involved.push_back(X.names()[static_cast<std::size_t>(perm[j])]);
            throw Error(ErrorCode::RankDeficient, "collinear regressors: " + join(involved));
        }
        rr.coefficients = qr.solve(y);
        const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
        const Eigen::MatrixXd r_inv =
            r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
        const Eigen::MatrixXd xtx_inv_perm = r_inv * r_inv.transpose();
        const auto& p = qr.colsPermutation();
        const Eigen::MatrixXd xtx_inv = p * xtx_inv_perm * p.transpose();
        rr.fitted = X.matrix() * rr.coefficients;
        rr.residuals = y - rr.fitted;
        rr.rss = rr.residuals.squaredNorm();
        rr.sigma2 = rr.rss / static_cast<double>(n - k);
        rr.cov_matrix = rr.sigma2 * xtx_inv;
        rr.cov_matrix = (0.5 * (rr.cov_matrix + rr.cov_matrix.transpose())).eval();
    } else {
        rr.coefficients.resize(0);
        rr.cov_matrix.resize(0, 0);
        rr.fitted = Eigen::VectorXd::Zero(n);
        rr.residuals = y;
        rr.rss = y.squaredNorm();
        rr.sigma2 = rr.rss / static_cast<double>(n);
    }

    rr.std_errors = rr.cov_matrix.diagonal().cwiseMax(0.0).cwiseSqrt();
    rr.t_stats.resize(k);
    for (Eigen::Index j = 0; j < k; ++j)
        rr.t_stats[j] = rr.std_errors[j] > 0.0 ? rr.coefficients[j] / rr.std_errors[j] : kNaN;

    const double tss = rr.centered ? (y.array() - y.mean()).square().sum() : y.squaredNorm();
    rr.r_squared = tss > 0.0 ? std::clamp(1.0 - rr.rss / tss, 0.0, 1.0) : 0.0;
    const double dof_total = static_cast<double>(rr.centered ? n - 1 : n);
    rr.adj_r_squared = 1.0 - (1.0 - rr.r_squared) * dof_total / static_cast<double>(n - k);

    const Eigen::Index slopes = rr.centered ? k - 1 : k;
    if (slopes > 0) {
        const double num = (tss - rr.rss) / static_cast<double>(slopes);
        const double den = rr.rss / static_cast<double>(n - k);
        rr.f_statistic = den > 0.0 ? std::max(num, 0.0) / den : std::numeric_limits<double>::infinity();
        rr.f_p_value = f_sf(rr.f_statistic, static_cast<double>(slopes), static_cast<double>(n - k));
    } else {
        rr.f_statistic = kNaN;
        rr.f_p_value = kNaN;
    }

    rr.durbin_watson = rr.rss > 0.0 ? durbin_watson(rr.residuals) : kNaN;
    const double dn = static_cast<double>(n);
    rr.log_likelihood = -0.5 * dn * (std::log(2.0 * std::numbers::pi) + std::log(rr.rss / dn) + 1.0);
    const auto ic = information_criteria(rr.log_likelihood, k, n);
    rr.aic = ic.aic;
    rr.sbc = ic.sbc;
    return rr;
}

InformationCriteria information_criteria(double log_likelihood, Eigen::Index k, Eigen::Index n) noexcept {
    const double dk = static_cast<double>(k);
    return {-2.0 * log_likelihood + 2.0 * dk, -2.0 * log_likelihood + dk * std::log(static_cast<double>(n))};
}

InformationCriteria information_criteria(const RegressionResult& rr) noexcept {
    return information_criteria(rr.log_likelihood, rr.k, rr.n);
}

TestStatistic wald_f_test(const RegressionResult& rr, const std::set<std::string>& restricted_names,
                          WaldContext context) {
    if (restricted_names.empty())
        throw Error(ErrorCode::InvalidParameters, "wald test needs at least one restriction");
    for (const auto& name : restricted_names) (void)rr.index_of(name);
    if (!rr.design) throw Error(ErrorCode::InvalidParameters, "regression result carries no design");

    const Eigen::VectorXd y = rr.dependent();
    const double scale = std::max(y.squaredNorm(), std::numeric_limits<double>::min());
    if (rr.rss <= 1e-20 * scale)
        throw Error(ErrorCode::PerfectFitDegenerate, "unrestricted residual sum of squares is zero");

    const DesignMatrix restricted = rr.design->without(restricted_names);
    double rss_restricted = y.squaredNorm();
    if (restricted.cols() > 0) {
        try {
            rss_restricted = ols(y, restricted).rss;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::RankDeficient) throw;
            throw Error(ErrorCode::DegenerateRestriction, e.what());
        }
    }
    const double q = static_cast<double>(restricted_names.size());
    const double dof = static_cast<double>(rr.n - rr.k);
    const double f = std::max(rss_restricted - rr.rss, 0.0) / q / (rr.rss / dof);
    if (context == WaldContext::BoundsTest) {
        TestStatistic ts;
        ts.name = "Wald F (bounds)";
        ts.statistic = f;
        ts.distribution = {Distribution::Kind::Nonstandard, q, dof};
        return ts;
    }
    return make_test_statistic("Wald F", f, {Distribution::Kind::F, q, dof});
}

double newey_west_lrv(const Eigen::VectorXd& residuals, int bandwidth) {
    const Eigen::Index n = residuals.size();
    if (n == 0) throw Error(ErrorCode::SampleTooShort, "no residuals");
    if (bandwidth < 0) throw Error(ErrorCode::InvalidParameters, "bandwidth must be non-negative");
    if (bandwidth >= n)
        throw Error(ErrorCode::BandwidthTooLarge,
                    "bandwidth " + std::to_string(bandwidth) + " >= sample length " + std::to_string(n));
    const Eigen::VectorXd u = residuals.array() - residuals.mean();
    const double dn = static_cast<double>(n);
    double lrv = u.squaredNorm() / dn;
    for (int j = 1; j <= bandwidth; ++j) {
        const double gamma = u.tail(n - j).dot(u.head(n - j)) / dn;
        lrv += 2.0 * (1.0 - static_cast<double>(j) / (bandwidth + 1.0)) * gamma;
    }
    return std::max(lrv, 0.0);
}

int default_newey_west_bandwidth(Eigen::Index n) noexcept {
    return static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0)));
}

double durbin_watson(const Eigen::VectorXd& residuals) {
    const Eigen::Index n = residuals.size();
    if (n < 2) throw Error(ErrorCode::SampleTooShort, "durbin-watson needs at least two residuals");
    const double denom = residuals.squaredNorm();
    if (denom == 0.0) throw Error(ErrorCode::AllZeroResiduals, "all residuals are zero");
    return (residuals.tail(n - 1) - residuals.head(n - 1)).squaredNorm() / denom;
}

}  // namespace cointkit
