#include "cointkit/diagnostics.hpp"

#include "cointkit/critical_values.hpp"
#include "cointkit/error.hpp"

#include <cmath>

namespace cointkit {

namespace {

const DesignMatrix& design_of(const RegressionResult& rr) {
    if (!rr.design) throw Error(ErrorCode::InvalidParameters, "regression result carries no design");
    return *rr.design;
}

bool rejects(const std::optional<TestStatistic>& t, Level alpha) {
    return t && t->decision_at.count(alpha) && t->decision_at.at(alpha) == Decision::Reject;
}

}  // namespace

Eigen::VectorXd recursive_residuals(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
    const Eigen::Index n = X.rows();
    const Eigen::Index k = X.cols();
    if (y.size() != n) throw Error(ErrorCode::DimensionMismatch, "y and X differ in rows");
    if (n <= k + 2)
        throw Error(ErrorCode::SampleTooShort, "recursive residuals need n > k + 2 (n=" + std::to_string(n) +
                                                   ", k=" + std::to_string(k) + ")");
    Eigen::VectorXd w(n - k);
    for (Eigen::Index t = k; t < n; ++t) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X.topRows(t));
        qr.setThreshold(1e-10);
        if (qr.rank() < k) {
            if (t == k)
                throw Error(ErrorCode::RankDeficientPrefix, "the first " + std::to_string(k) +
                                                                " observations do not identify the coefficients");
            throw Error(ErrorCode::RankDeficient, "expanding-sample design singular at t=" + std::to_string(t));
        }
        const Eigen::VectorXd b = qr.solve(y.head(t));
        const Eigen::VectorXd x = X.row(t).transpose();
        // x' (X'X)^-1 x = |R^-T P' x|^2
        const Eigen::VectorXd px = qr.colsPermutation().transpose() * x;
        const Eigen::VectorXd z = qr.matrixR()
                                      .topLeftCorner(k, k)
                                      .triangularView<Eigen::Upper>()
                                      .transpose()
                                      .solve(px);
        w[t - k] = (y[t] - x.dot(b)) / std::sqrt(1.0 + z.squaredNorm());
    }
    return w;
}

TestStatistic breusch_godfrey(const RegressionResult& rr, int lags) {
    if (lags < 1) throw Error(ErrorCode::InvalidParameters, "Breusch-Godfrey needs lags >= 1");
    const auto& X = design_of(rr);
    const Eigen::Index n = rr.n;
    if (n - rr.k - lags < 1)
        throw Error(ErrorCode::SampleTooShort, "too few observations for Breusch-Godfrey with " +
                                                   std::to_string(lags) + " lags");
    DesignMatrix aux = X;
    for (int j = 1; j <= lags; ++j) {
        Eigen::VectorXd col = Eigen::VectorXd::Zero(n);
        col.tail(n - j) = rr.residuals.head(n - j);
        aux = aux.with_column("resid(-" + std::to_string(j) + ")", col);
    }
    const auto fit = ols(rr.residuals, aux);
    const double lm = static_cast<double>(n) * fit.r_squared;
    return make_test_statistic("Breusch-Godfrey LM", lm, {Distribution::Kind::ChiSquared, static_cast<double>(lags)});
}

TestStatistic ramsey_reset(const RegressionResult& rr, const std::set<int>& powers) {
    if (powers.empty()) throw Error(ErrorCode::InvalidParameters, "RESET needs at least one power");
    for (int p : powers)
        if (p < 2 || p > 4) throw Error(ErrorCode::InvalidParameters, "RESET powers must lie in {2,3,4}");
    const auto& X = design_of(rr);
    const Eigen::VectorXd y = rr.dependent();
    if (rr.rss <= 1e-20 * std::max(y.squaredNorm(), std::numeric_limits<double>::min()))
        throw Error(ErrorCode::PerfectFitDegenerate, "zero residual variance");
    const Eigen::VectorXd& f = rr.fitted;
    const double spread = f.maxCoeff() - f.minCoeff();
    const double scale = f.cwiseAbs().maxCoeff();
    if (!(spread > 1e-10 * std::max(scale, 1.0))) throw Error(ErrorCode::ConstantFitted, "fitted values are constant");

    // powers of the rescaled fit; the F statistic is invariant to the scaling
    const Eigen::ArrayXd z = f.array() / scale;
    DesignMatrix aug = X;
    std::set<std::string> added;
    for (int p : powers) {
        const std::string name = "fitted^" + std::to_string(p);
        aug = aug.with_column(name, z.pow(static_cast<double>(p)).matrix());
        added.insert(name);
    }
    auto ts = wald_f_test(ols(y, aug), added);
    ts.name = "Ramsey RESET F";
    return ts;
}

TestStatistic jarque_bera(const Eigen::VectorXd& residuals) {
    const Eigen::Index n = residuals.size();
    if (n < 4) throw Error(ErrorCode::SampleTooShort, "Jarque-Bera needs at least 4 observations");
    const Eigen::ArrayXd d = residuals.array() - residuals.mean();
    const double dn = static_cast<double>(n);
    const double m2 = d.square().sum() / dn;
    if (!(m2 > 0.0)) throw Error(ErrorCode::ZeroVariance, "residuals have zero variance");
    const double m3 = d.cube().sum() / dn;
    const double m4 = d.square().square().sum() / dn;
    const double skew = m3 / std::pow(m2, 1.5);
    const double kurt = m4 / (m2 * m2);
    const double jb = dn / 6.0 * (skew * skew + (kurt - 3.0) * (kurt - 3.0) / 4.0);
    return make_test_statistic("Jarque-Bera", jb, {Distribution::Kind::ChiSquared, 2.0});
}

TestStatistic breusch_pagan(const RegressionResult& rr) {
    const auto& X = design_of(rr);
    const Eigen::VectorXd e2 = rr.residuals.array().square();
    const auto fit = ols(e2, X);
    const double df = static_cast<double>(X.cols() - (X.has_constant() ? 1 : 0));
    if (df < 1) throw Error(ErrorCode::InvalidParameters, "Breusch-Pagan needs a non-constant regressor");
    const double lm = static_cast<double>(rr.n) * fit.r_squared;
    return make_test_statistic("Breusch-Pagan-Godfrey LM", lm, {Distribution::Kind::ChiSquared, df});
}

StabilityResult cusum(const RegressionResult& rr, Level level) {
    const auto& X = design_of(rr);
    const Eigen::VectorXd w = recursive_residuals(rr.dependent(), X.matrix());
    const Eigen::Index m = w.size();
    const double sigma = std::sqrt(w.squaredNorm() / static_cast<double>(m));
    if (!(sigma > 0.0)) throw Error(ErrorCode::ZeroVariance, "recursive residuals are all zero");
    const double a = cusum_line_coefficient(level);
    const double root = std::sqrt(static_cast<double>(m));

    StabilityResult out;
    out.level = level;
    out.path.resize(m);
    out.lower_bound.resize(m);
    out.upper_bound.resize(m);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        acc += w[i] / sigma;
        out.path[i] = acc;
        out.upper_bound[i] = a * (root + 2.0 * static_cast<double>(i + 1) / root);
        out.lower_bound[i] = -out.upper_bound[i];
    }
    out.stable = ((out.path.array() >= out.lower_bound.array()) && (out.path.array() <= out.upper_bound.array())).all();
    return out;
}

StabilityResult cusumsq(const RegressionResult& rr, Level level) {
    const auto& X = design_of(rr);
    const Eigen::VectorXd w = recursive_residuals(rr.dependent(), X.matrix());
    const Eigen::Index m = w.size();
    const double total = w.squaredNorm();
    if (!(total > 0.0)) throw Error(ErrorCode::ZeroVariance, "recursive residuals are all zero");
    const double c0 = cusumsq_c0(m, level);

    StabilityResult out;
    out.level = level;
    out.path.resize(m);
    out.lower_bound.resize(m);
    out.upper_bound.resize(m);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        acc += w[i] * w[i];
        out.path[i] = acc / total;
        const double expected = static_cast<double>(i + 1) / static_cast<double>(m);
        out.lower_bound[i] = expected - c0;
        out.upper_bound[i] = expected + c0;
    }
    out.stable = ((out.path.array() >= out.lower_bound.array()) && (out.path.array() <= out.upper_bound.array())).all();
    return out;
}

DiagnosticsReport run_diagnostics(const RegressionResult& rr, const DiagnosticsConfig& cfg) {
    DiagnosticsReport r;
    r.alpha = cfg.alpha;
    if (cfg.serial_correlation) r.serial_correlation = breusch_godfrey(rr, cfg.bg_lags);
    if (cfg.functional_form) r.functional_form = ramsey_reset(rr, cfg.reset_powers);
    if (cfg.normality) r.normality = jarque_bera(rr.residuals);
    if (cfg.heteroscedasticity) r.heteroscedasticity = breusch_pagan(rr);
    if (cfg.stability) {
        r.cusum = cusum(rr, cfg.alpha);
        r.cusumsq = cusumsq(rr, cfg.alpha);
    }
    r.pass = !rejects(r.serial_correlation, cfg.alpha) && !rejects(r.functional_form, cfg.alpha) &&
             !rejects(r.normality, cfg.alpha) && !rejects(r.heteroscedasticity, cfg.alpha) &&
             (!r.cusum || r.cusum->stable) && (!r.cusumsq || r.cusumsq->stable);
    return r;
}

}  // namespace cointkit
