#include "cointkit/unitroot.hpp"

#include "cointkit/critical_values.hpp"
#include "cointkit/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace cointkit {

namespace {

constexpr const char* kLevelTerm = "y(-1)";

std::string lowered(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

struct TestRegression {
    Eigen::VectorXd dy;
    DesignMatrix design;
};

/// Dickey-Fuller regression on differences dy[start..]: deterministics, the
/// lagged level, then `lags` lagged differences.
TestRegression df_regression(const Eigen::VectorXd& y, Deterministic spec, int lags, Eigen::Index start) {
    const Eigen::Index T = y.size();
    const Eigen::VectorXd dy_all = y.tail(T - 1) - y.head(T - 1);
    const Eigen::Index n = (T - 1) - start;
    std::vector<std::string> names;
    Eigen::MatrixXd X(n, (spec == Deterministic::None ? 0 : spec == Deterministic::Constant ? 1 : 2) + 1 + lags);
    Eigen::Index col = 0;
    if (spec != Deterministic::None) {
        names.emplace_back("const");
        X.col(col++).setOnes();
    }
    if (spec == Deterministic::ConstantTrend) {
        names.emplace_back("trend");
        X.col(col++) = Eigen::VectorXd::LinSpaced(n, 1.0, static_cast<double>(n));
    }
    names.emplace_back(kLevelTerm);
    X.col(col++) = y.segment(start, n);
    for (int j = 1; j <= lags; ++j) {
        names.push_back("D(y(-" + std::to_string(j) + "))");
        X.col(col++) = dy_all.segment(start - j, n);
    }
    return {dy_all.segment(start, n), DesignMatrix(std::move(names), std::move(X))};
}

void check_not_degenerate(const Eigen::VectorXd& y) {
    if (y.size() >= 2 && ((y.tail(y.size() - 1) - y.head(y.size() - 1)).array() == 0.0).all())
        throw Error(ErrorCode::RankDeficient, "first differences are identically zero");
}

UnitRootResult finish(UnitRootTestKind test, Deterministic spec, int lag, double stat, LagSelection rule,
                      RegressionResult rr) {
    UnitRootResult r;
    r.test = test;
    r.spec = spec;
    r.lag_or_bandwidth = lag;
    r.statistic = stat;
    r.nobs = rr.n;
    r.selection = rule;
    r.critical_values = tau_critical_values(spec, rr.n);
    r.verdict_at = unit_root_verdicts(stat, r.critical_values);
    r.regression = std::move(rr);
    return r;
}

}  // namespace

std::string_view to_string(UnitRootTestKind t) noexcept { return t == UnitRootTestKind::ADF ? "ADF" : "PP"; }

std::string_view to_string(LagSelection s) noexcept {
    switch (s) {
        case LagSelection::AIC: return "AIC";
        case LagSelection::SBC: return "SBC";
        case LagSelection::Fixed: return "fixed";
    }
    return "fixed";
}

std::string_view to_string(Verdict v) noexcept { return v == Verdict::Stationary ? "stationary" : "unit_root"; }

std::string_view to_string(OrderOfIntegration o) noexcept {
    switch (o) {
        case OrderOfIntegration::I0: return "I0";
        case OrderOfIntegration::I1: return "I1";
        case OrderOfIntegration::Higher: return "higher";
    }
    return "higher";
}

std::optional<UnitRootTestKind> parse_unit_root_test(std::string_view text) {
    const auto t = lowered(text);
    if (t == "adf") return UnitRootTestKind::ADF;
    if (t == "pp") return UnitRootTestKind::PP;
    return std::nullopt;
}

std::optional<LagSelection> parse_lag_selection(std::string_view text) {
    const auto t = lowered(text);
    if (t == "aic") return LagSelection::AIC;
    if (t == "sbc" || t == "bic") return LagSelection::SBC;
    if (t == "fixed") return LagSelection::Fixed;
    return std::nullopt;
}

std::map<Level, Verdict> unit_root_verdicts(double statistic, const std::map<Level, double>& critical_values) {
    std::map<Level, Verdict> out;
    for (const auto& [level, cv] : critical_values)
        out[level] = statistic < cv ? Verdict::Stationary : Verdict::UnitRoot;
    return out;
}

int default_adf_max_lag(Eigen::Index T) noexcept {
    return static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(T) / 100.0, 0.25)));
}

UnitRootResult adf_test(const Eigen::VectorXd& y, Deterministic spec, std::optional<int> max_lag,
                        LagSelection rule) {
    const Eigen::Index T = y.size();
    const int max_k = max_lag.value_or(default_adf_max_lag(T));
    if (max_k < 0) throw Error(ErrorCode::InvalidParameters, "max_lag must be non-negative");
    if (T < max_k + 10)
        throw Error(ErrorCode::SampleTooShort, "ADF with max lag " + std::to_string(max_k) + " needs at least " +
                                                   std::to_string(max_k + 10) + " observations, got " +
                                                   std::to_string(T));
    check_not_degenerate(y);

    int best = max_k;
    if (rule != LagSelection::Fixed) {
        double best_ic = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= max_k; ++k) {
            auto reg = df_regression(y, spec, k, max_k);
            const auto rr = ols(reg.dy, reg.design);
            const double ic = rule == LagSelection::AIC ? rr.aic : rr.sbc;
            if (ic < best_ic) {
                best_ic = ic;
                best = k;
            }
        }
    }
    auto reg = df_regression(y, spec, best, best);
    auto rr = ols(reg.dy, reg.design);
    const double stat = rr.t_stat(kLevelTerm);
    return finish(UnitRootTestKind::ADF, spec, best, stat, rule, std::move(rr));
}

UnitRootResult adf_test(const TimeSeries& s, Deterministic spec, std::optional<int> max_lag, LagSelection rule) {
    return adf_test(s.values(), spec, max_lag, rule);
}

UnitRootResult pp_test(const Eigen::VectorXd& y, Deterministic spec, std::optional<int> bandwidth) {
    const Eigen::Index T = y.size();
    if (T < 15) throw Error(ErrorCode::SampleTooShort, "PP test needs at least 15 observations");
    check_not_degenerate(y);
    auto reg = df_regression(y, spec, 0, 0);
    auto rr = ols(reg.dy, reg.design);
    const Eigen::Index n = rr.n;
    const int bw = bandwidth.value_or(default_newey_west_bandwidth(n));
    if (bw < 0) throw Error(ErrorCode::InvalidParameters, "bandwidth must be non-negative");

    const double dn = static_cast<double>(n);
    const double gamma0 = rr.rss / dn;
    const double lambda2 = newey_west_lrv(rr.residuals, bw);
    if (!(lambda2 > 0.0)) throw Error(ErrorCode::ZeroVariance, "long-run variance is zero");
    const double lambda = std::sqrt(lambda2);
    const double s = std::sqrt(rr.sigma2);
    const double se = rr.std_error(kLevelTerm);
    const double t = rr.t_stat(kLevelTerm);
    const double z_t = std::sqrt(gamma0 / lambda2) * t - 0.5 * ((lambda2 - gamma0) / lambda) * (dn * se / s);
    return finish(UnitRootTestKind::PP, spec, bw, z_t, LagSelection::Fixed, std::move(rr));
}

UnitRootResult pp_test(const TimeSeries& s, Deterministic spec, std::optional<int> bandwidth) {
    return pp_test(s.values(), spec, bandwidth);
}

UnitRootResult run_unit_root_test(const TimeSeries& s, const ClassifyConfig& cfg) {
    if (cfg.test == UnitRootTestKind::ADF) return adf_test(s, cfg.spec, cfg.max_lag, cfg.selection);
    return pp_test(s, cfg.spec, cfg.bandwidth);
}

IntegrationOrder classify_integration(const TimeSeries& s, const ClassifyConfig& cfg) {
    IntegrationOrder out;
    out.series = s.name();
    out.level = run_unit_root_test(s, cfg);
    out.difference = run_unit_root_test(difference(s, 1), cfg);
    if (out.level.verdict_at.at(cfg.alpha) == Verdict::Stationary)
        out.order = OrderOfIntegration::I0;
    else if (out.difference.verdict_at.at(cfg.alpha) == Verdict::Stationary)
        out.order = OrderOfIntegration::I1;
    else
        out.order = OrderOfIntegration::Higher;
    return out;
}

}  // namespace cointkit
