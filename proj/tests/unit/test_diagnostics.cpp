#include "cointkit/diagnostics.hpp"
#include "cointkit/error.hpp"
#include "cointkit/simgen.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

using namespace cointkit;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no cointkit::Error thrown";
    return ErrorCode::ConfigError;
}

RegressionResult fixture_fit() {
    const auto x1 = fixtures::vec(fixtures::kX1);
    const auto x2 = fixtures::vec(fixtures::kX2);
    return ols(fixtures::vec(fixtures::kY), DesignMatrix::constant(x1.size()).with_column("x1", x1).with_column("x2", x2));
}

RegressionResult line_fit(const Eigen::VectorXd& y, const Eigen::VectorXd& x) {
    return ols(y, DesignMatrix::constant(x.size()).with_column("x", x));
}

void expect_valid(const TestStatistic& ts) {
    EXPECT_GE(ts.statistic, 0.0);
    ASSERT_TRUE(ts.p_value.has_value());
    EXPECT_GE(*ts.p_value, 0.0);
    EXPECT_LE(*ts.p_value, 1.0);
    EXPECT_EQ(ts.decision_at.size(), 3u);
}

void expect_stability_consistent(const StabilityResult& s) {
    ASSERT_EQ(s.path.size(), s.lower_bound.size());
    ASSERT_EQ(s.path.size(), s.upper_bound.size());
    bool inside = true;
    for (Eigen::Index i = 0; i < s.path.size(); ++i)
        inside &= s.path[i] >= s.lower_bound[i] && s.path[i] <= s.upper_bound[i];
    EXPECT_EQ(s.stable, inside);
}

/// y = 1 + 0.5 x + e with x, e iid N(0, 1).
RegressionResult gaussian_fit(std::uint64_t seed, Eigen::Index n) {
    GaussianStream g(seed);
    const Eigen::VectorXd x = g.normals(n);
    const Eigen::VectorXd e = g.normals(n);
    return line_fit((1.0 + 0.5 * x.array() + e.array()).matrix(), x);
}

}  // namespace

TEST(Frozen, BreuschGodfrey) {
    const auto ts = breusch_godfrey(fixture_fit(), 2);
    EXPECT_NEAR(ts.statistic, 2.58627464023919, 1e-9);
    EXPECT_NEAR(*ts.p_value, 0.27440852382255393, 1e-9);
    EXPECT_EQ(ts.distribution.kind, Distribution::Kind::ChiSquared);
    EXPECT_EQ(ts.distribution.df1, 2.0);
}

TEST(Frozen, RamseyReset) {
    const auto rr = fixture_fit();
    const auto two = ramsey_reset(rr, {2});
    EXPECT_NEAR(two.statistic, 2.5005410003559714, 1e-9);
    EXPECT_NEAR(*two.p_value, 0.12255442761016266, 1e-9);
    const auto three = ramsey_reset(rr, {2, 3});
    EXPECT_NEAR(three.statistic, 2.88430326357515, 1e-9);
    EXPECT_NEAR(*three.p_value, 0.06926089429861489, 1e-9);
    EXPECT_EQ(three.distribution.kind, Distribution::Kind::F);
}

TEST(Frozen, JarqueBera) {
    const auto ts = jarque_bera(fixture_fit().residuals);
    EXPECT_NEAR(ts.statistic, 0.5516072786819732, 1e-10);
    EXPECT_NEAR(*ts.p_value, 0.758961946398319, 1e-10);
}

TEST(Frozen, BreuschPagan) {
    const auto ts = breusch_pagan(fixture_fit());
    EXPECT_NEAR(ts.statistic, 3.6606842394844508, 1e-9);
    EXPECT_NEAR(*ts.p_value, 0.16035869651352222, 1e-9);
    EXPECT_EQ(ts.distribution.df1, 2.0);
}

TEST(Frozen, RecursiveResiduals) {
    const auto rr = fixture_fit();
    const auto w = recursive_residuals(rr.dependent(), rr.design->matrix());
    ASSERT_EQ(w.size(), rr.n - rr.k);
    EXPECT_NEAR(w[0], 0.20931393245297328, 1e-10);
    EXPECT_NEAR(w[1], -1.1350268423637895, 1e-10);
    EXPECT_NEAR(w[2], 0.07296948951266947, 1e-10);
    EXPECT_NEAR(w[w.size() - 1], -0.19503504030637614, 1e-10);
}

TEST(RecursiveResiduals, SingularPrefix) {
    Eigen::MatrixXd X(6, 2);
    X << 1, 0, 1, 0, 1, 1, 1, 2, 1, 3, 1, 5;
    const Eigen::VectorXd y = fixtures::vec({1, 2, 3, 4, 5, 6});
    EXPECT_EQ(code_of([&] { (void)recursive_residuals(y, X); }), ErrorCode::RankDeficientPrefix);
}

TEST(RecursiveResiduals, SquaresSumToRss) {
    const auto rr = fixture_fit();
    const auto w = recursive_residuals(rr.dependent(), rr.design->matrix());
    EXPECT_NEAR(w.squaredNorm(), rr.rss, 1e-9 * rr.rss);
}

TEST(RecursiveResiduals, HalvesUncorrelatedOnStableFixture) {
    const auto rr = gaussian_fit(41, 200);
    const auto w = recursive_residuals(rr.dependent(), rr.design->matrix());
    const Eigen::Index h = w.size() / 2;
    const Eigen::ArrayXd a = w.head(h).array() - w.head(h).mean();
    const Eigen::ArrayXd b = w.segment(h, h).array() - w.segment(h, h).mean();
    const double corr = (a * b).sum() / std::sqrt(a.square().sum() * b.square().sum());
    EXPECT_LE(std::abs(corr), 0.1);
}

TEST(BreuschGodfrey, ZeroAutocorrelationGivesZero) {
    Eigen::VectorXd y(12);
    y << 1, 0, -1, 0, 1, 0, -1, 0, 1, 0, -1, 0;
    const auto rr = ols(y, DesignMatrix::constant(12));
    EXPECT_LE(breusch_godfrey(rr, 1).statistic, 1e-8);
}

TEST(BreuschGodfrey, Ar1ResidualsSeed23) {
    GaussianStream g(23);
    const Eigen::Index n = 200;
    const Eigen::VectorXd x = g.normals(n);
    const Eigen::VectorXd eps = g.normals(n);
    Eigen::VectorXd u(n);
    u[0] = eps[0];
    for (Eigen::Index t = 1; t < n; ++t) u[t] = 0.7 * u[t - 1] + eps[t];
    const auto ts = breusch_godfrey(line_fit((1.0 + 2.0 * x.array() + u.array()).matrix(), x), 2);
    expect_valid(ts);
    EXPECT_LT(*ts.p_value, 0.01);
}

TEST(BreuschGodfrey, RejectsNonPositiveLags) {
    EXPECT_THROW((void)breusch_godfrey(fixture_fit(), 0), Error);
}

TEST(RamseyReset, LinearDataSeed29) {
    const auto ts = ramsey_reset(gaussian_fit(29, 200), {2});
    expect_valid(ts);
    EXPECT_GT(*ts.p_value, 0.10);
}

TEST(RamseyReset, QuadraticDataSeed29) {
    GaussianStream g(29);
    const Eigen::VectorXd x = g.normals(200);
    const Eigen::VectorXd e = g.normals(200);
    const auto ts = ramsey_reset(line_fit((x.array().square() + 0.1 * e.array()).matrix(), x), {2});
    EXPECT_LT(*ts.p_value, 0.01);
}

TEST(RamseyReset, ConstantOnlyModel) {
    const auto rr = ols(fixtures::vec(fixtures::kY), DesignMatrix::constant(40));
    EXPECT_EQ(code_of([&] { (void)ramsey_reset(rr, {2}); }), ErrorCode::ConstantFitted);
}

TEST(RamseyReset, PerfectFit) {
    const Eigen::VectorXd x = fixtures::vec({1, 2, 3, 4, 5, 6, 7});
    const auto rr = line_fit((3.0 - 2.0 * x.array()).matrix(), x);
    EXPECT_EQ(code_of([&] { (void)ramsey_reset(rr, {2}); }), ErrorCode::PerfectFitDegenerate);
}

TEST(JarqueBera, AlternatingByHand) {
    const auto ts = jarque_bera(fixtures::vec({-1, 1, -1, 1, -1, 1}));
    EXPECT_NEAR(ts.statistic, 1.0, 1e-12);
}

TEST(JarqueBera, ZeroVariance) {
    EXPECT_EQ(code_of([] { (void)jarque_bera(Eigen::VectorXd::Constant(10, 2.0)); }), ErrorCode::ZeroVariance);
}

TEST(JarqueBera, NormalVersusExponentialSeed31) {
    GaussianStream g(31);
    const auto normal = jarque_bera(g.normals(10000));
    EXPECT_GT(*normal.p_value, 0.05);
    GaussianStream u(31);
    Eigen::VectorXd expo(10000);
    for (Eigen::Index i = 0; i < expo.size(); ++i) expo[i] = -std::log(u.next_uniform());
    EXPECT_LT(*jarque_bera(expo).p_value, 0.001);
}

TEST(BreuschPagan, ConstantSquaredResidualsGiveZero) {
    Eigen::VectorXd y(8);
    y << 1, -1, -1, 1, 1, -1, -1, 1;
    const auto rr = ols(y, DesignMatrix::constant(8).with_column("x", fixtures::vec({1, 2, 3, 4, 5, 6, 7, 8})));
    // x is orthogonal to y here, so the fit leaves e = y
    ASSERT_LT((rr.residuals - y).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(breusch_pagan(rr).statistic, 0.0, 1e-10);
}

TEST(BreuschPagan, VarianceProportionalToXSquaredSeed37) {
    GaussianStream g(37);
    const Eigen::VectorXd x = g.normals(300);
    const Eigen::VectorXd e = g.normals(300);
    const auto ts = breusch_pagan(line_fit((1.0 + x.array() + x.array() * e.array()).matrix(), x));
    EXPECT_LT(*ts.p_value, 0.01);
}

TEST(Stability, StableFixtureSeed41) {
    const auto rr = gaussian_fit(41, 200);
    const auto a = cusum(rr);
    const auto b = cusumsq(rr);
    expect_stability_consistent(a);
    expect_stability_consistent(b);
    EXPECT_TRUE(a.stable);
    EXPECT_TRUE(b.stable);
    EXPECT_EQ(a.path.size(), rr.n - rr.k);
    EXPECT_NEAR(b.path[b.path.size() - 1], 1.0, 1e-12);
}

TEST(Stability, SlopeDoublingBreakFlagged) {
    const auto d = generate({BreakModel{0.5, 1.0, 1.0, 1.0, 2.0, 1.0, 1.0}, 200, 43});
    const auto rr = line_fit(d.get("y").values(), d.get("x").values());
    const auto s = cusumsq(rr);
    expect_stability_consistent(s);
    EXPECT_FALSE(s.stable);
}

TEST(Stability, CusumBoundsAreStraightLines) {
    const auto rr = gaussian_fit(41, 120);
    const auto s = cusum(rr);
    const double nk = static_cast<double>(rr.n - rr.k);
    for (Eigen::Index i = 0; i < s.path.size(); ++i) {
        const double expected = 0.948 * (std::sqrt(nk) + 2.0 * static_cast<double>(i + 1) / std::sqrt(nk));
        EXPECT_NEAR(s.upper_bound[i], expected, 1e-12);
        EXPECT_NEAR(s.lower_bound[i], -expected, 1e-12);
    }
}

TEST(Battery, VerdictConsistentWithComponents) {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        const auto rep = run_diagnostics(gaussian_fit(seed, 120), {});
        bool pass = true;
        for (const auto* t : {&rep.serial_correlation, &rep.functional_form, &rep.normality, &rep.heteroscedasticity})
            if (*t) pass &= (*t)->decision_at.at(rep.alpha) == Decision::FailToReject;
        for (const auto* s : {&rep.cusum, &rep.cusumsq})
            if (*s) pass &= (*s)->stable;
        EXPECT_EQ(rep.pass, pass);
    }
}

TEST(Battery, DisabledTestsAreAbsent) {
    DiagnosticsConfig cfg;
    cfg.serial_correlation = cfg.functional_form = cfg.normality = cfg.heteroscedasticity = cfg.stability = false;
    const auto rep = run_diagnostics(fixture_fit(), cfg);
    EXPECT_TRUE(rep.empty());
    EXPECT_TRUE(rep.pass);
}
