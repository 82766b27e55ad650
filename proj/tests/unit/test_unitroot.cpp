#include "cointkit/critical_values.hpp"
#include "cointkit/error.hpp"
#include "cointkit/simgen.hpp"
#include "cointkit/unitroot.hpp"

#include "../support/oracle.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cointkit;

namespace {

Eigen::VectorXd ar1(double phi, Eigen::Index n, std::uint64_t seed) {
    GaussianStream g(seed);
    const Eigen::VectorXd e = g.normals(n);
    Eigen::VectorXd y(n);
    y[0] = e[0];
    for (Eigen::Index t = 1; t < n; ++t) y[t] = phi * y[t - 1] + e[t];
    return y;
}

void expect_cv(Deterministic spec, Eigen::Index nobs, const std::array<double, 3>& expected) {
    const auto cv = tau_critical_values(spec, nobs);
    EXPECT_NEAR(cv.at(Level::One), expected[0], 1e-9) << "nobs " << nobs;
    EXPECT_NEAR(cv.at(Level::Five), expected[1], 1e-9) << "nobs " << nobs;
    EXPECT_NEAR(cv.at(Level::Ten), expected[2], 1e-9) << "nobs " << nobs;
}

}  // namespace

TEST(MacKinnon, MatchesStatsmodelsSurfaces) {
    expect_cv(Deterministic::Constant, 25, {-3.7238633119999998, -2.98648896, -2.6328004});
    expect_cv(Deterministic::Constant, 100, {-3.497501033, -2.89090644, -2.5824349});
    expect_cv(Deterministic::Constant, 228, {-3.4593607492757554, -2.8743015807562924, -2.5735714042782396});
    expect_cv(Deterministic::Constant, 500, {-3.443496379464, -2.8673378563200003, -2.569858036});
    expect_cv(Deterministic::ConstantTrend, 25, {-4.3749647199999995, -3.6034675359999997, -3.23818632});
    expect_cv(Deterministic::ConstantTrend, 100, {-4.052277955, -3.4553429739999997, -3.1533208800000003});
    expect_cv(Deterministic::ConstantTrend, 228, {-3.9990347583703216, -3.4299237913352556, -3.138467743111241});
    expect_cv(Deterministic::ConstantTrend, 500, {-3.97699098524, -3.4193073069919997, -3.1322370790400003});
}

TEST(MacKinnon, OrderedAcrossLevels) {
    for (auto spec : {Deterministic::None, Deterministic::Constant, Deterministic::ConstantTrend})
        for (Eigen::Index n : {20, 50, 228, 1000}) {
            const auto cv = tau_critical_values(spec, n);
            EXPECT_LT(cv.at(Level::One), cv.at(Level::Five));
            EXPECT_LT(cv.at(Level::Five), cv.at(Level::Ten));
        }
}

TEST(Adf, MatchesStatsmodelsWithAutolag) {
    const auto y = fixtures::vec(fixtures::kWalk);
    struct Case {
        Deterministic spec;
        LagSelection rule;
        double stat;
        int lag;
        Eigen::Index nobs;
    };
    for (const auto& c : {Case{Deterministic::Constant, LagSelection::AIC, -1.9585428618172362, 3, 56},
                          Case{Deterministic::Constant, LagSelection::SBC, -2.0611221692482746, 1, 58},
                          Case{Deterministic::ConstantTrend, LagSelection::AIC, -1.9732510593875614, 3, 56},
                          Case{Deterministic::ConstantTrend, LagSelection::SBC, -2.0420159357025685, 1, 58}}) {
        const auto r = adf_test(y, c.spec, 4, c.rule);
        EXPECT_NEAR(r.statistic, c.stat, 1e-10);
        EXPECT_EQ(r.lag_or_bandwidth, c.lag);
        EXPECT_EQ(r.nobs, c.nobs);
    }
}

TEST(Adf, MatchesStatsmodelsAtFixedLag) {
    const auto y = fixtures::vec(fixtures::kWalk);
    EXPECT_NEAR(adf_test(y, Deterministic::Constant, 2, LagSelection::Fixed).statistic, -1.7054652079517398, 1e-10);
    EXPECT_NEAR(adf_test(y, Deterministic::ConstantTrend, 2, LagSelection::Fixed).statistic, -1.7023407716169368,
                1e-10);
}

TEST(Adf, StationaryAr1Seed42) {
    const auto y = ar1(0.5, 500, 42);
    const auto r = adf_test(y, Deterministic::Constant);
    EXPECT_LT(r.statistic, -2.87);
    EXPECT_EQ(r.verdict_at.at(Level::Five), Verdict::Stationary);

    // t-ratio of the chosen regression against the normal-equations oracle
    const int p = r.lag_or_bandwidth;
    std::vector<double> dy;
    std::vector<std::vector<double>> rows;
    for (Eigen::Index t = p + 1; t < y.size(); ++t) {
        dy.push_back(y[t] - y[t - 1]);
        std::vector<double> row{1.0, y[t - 1]};
        for (int j = 1; j <= p; ++j) row.push_back(y[t - j] - y[t - j - 1]);
        rows.push_back(row);
    }
    const auto o = oracle::fit(dy, rows, true);
    EXPECT_EQ(r.nobs, static_cast<Eigen::Index>(dy.size()));
    EXPECT_NEAR(r.statistic, o.beta[1] / o.se[1], 1e-9);
}

TEST(Adf, ConstantSeriesIsRankDeficient) {
    try {
        (void)adf_test(Eigen::VectorXd::Constant(50, 3.0), Deterministic::Constant, 2, LagSelection::Fixed);
        FAIL() << "expected RankDeficient";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
    }
}

TEST(Adf, DefaultMaxLag) {
    EXPECT_EQ(default_adf_max_lag(100), 12);
    EXPECT_EQ(default_adf_max_lag(228), static_cast<int>(std::floor(12.0 * std::pow(2.28, 0.25))));
}

TEST(Adf, LocationInvariantWithConstant) {
    const auto y = fixtures::vec(fixtures::kWalk);
    const Eigen::VectorXd shifted = (y.array() + 1234.5).matrix();
    for (auto spec : {Deterministic::Constant, Deterministic::ConstantTrend}) {
        EXPECT_NEAR(adf_test(y, spec, 3, LagSelection::Fixed).statistic,
                    adf_test(shifted, spec, 3, LagSelection::Fixed).statistic, 1e-8);
        EXPECT_NEAR(pp_test(y, spec, 3).statistic, pp_test(shifted, spec, 3).statistic, 1e-8);
    }
}

TEST(Pp, MatchesTextbookFormula) {
    const auto y = fixtures::vec(fixtures::kWalk);
    EXPECT_NEAR(pp_test(y, Deterministic::Constant, 0).statistic, -1.207857713511834, 1e-10);
    EXPECT_NEAR(pp_test(y, Deterministic::Constant, 3).statistic, -1.6030442672113354, 1e-10);
    EXPECT_NEAR(pp_test(y, Deterministic::ConstantTrend, 0).statistic, -1.2000506614466615, 1e-10);
    EXPECT_NEAR(pp_test(y, Deterministic::ConstantTrend, 3).statistic, -1.5954314466495432, 1e-10);
}

TEST(Pp, BandwidthZeroEqualsDickeyFullerT) {
    const auto y = ar1(0.0, 300, 3);
    const auto r = pp_test(y, Deterministic::Constant, 0);
    const auto df = adf_test(y, Deterministic::Constant, 0, LagSelection::Fixed);
    EXPECT_NEAR(r.statistic, df.statistic, 1e-10);
}

TEST(Pp, TooLargeBandwidth) {
    EXPECT_THROW((void)pp_test(fixtures::vec(fixtures::kWalk), Deterministic::Constant, 59), Error);
}

TEST(Verdicts, Monotone) {
    const auto cv = tau_critical_values(Deterministic::Constant, 200);
    for (auto level : kAllLevels) {
        bool seen_unit_root = false;
        for (double s = -6.0; s <= 1.0; s += 0.01) {
            const auto v = unit_root_verdicts(s, cv).at(level);
            if (v == Verdict::UnitRoot) seen_unit_root = true;
            if (seen_unit_root) EXPECT_EQ(v, Verdict::UnitRoot) << s;
        }
    }
}

TEST(Verdicts, ReportedStatisticsAt228) {
    const auto cv = tau_critical_values(Deterministic::Constant, 228);
    EXPECT_EQ(unit_root_verdicts(-4.113, cv).at(Level::Five), Verdict::Stationary);
    EXPECT_EQ(unit_root_verdicts(-3.933, cv).at(Level::Five), Verdict::Stationary);
    EXPECT_EQ(unit_root_verdicts(-4.113, cv).at(Level::One), Verdict::Stationary);
    const auto trend = tau_critical_values(Deterministic::ConstantTrend, 228);
    EXPECT_EQ(unit_root_verdicts(-1.397, trend).at(Level::Ten), Verdict::UnitRoot);
}

TEST(Classify, RandomWalkIsI1) {
    GaussianStream g(7);
    Eigen::VectorXd e = g.normals(500);
    for (Eigen::Index t = 1; t < e.size(); ++t) e[t] += e[t - 1];
    const auto io = classify_integration(fixtures::series("rw", e), {});
    EXPECT_EQ(io.level.verdict_at.at(Level::Five), Verdict::UnitRoot);
    EXPECT_EQ(io.order, OrderOfIntegration::I1);
}

TEST(Classify, StationaryAr03IsI0) {
    const auto io = classify_integration(fixtures::series("ar", ar1(0.3, 500, 7)), {});
    EXPECT_EQ(io.order, OrderOfIntegration::I0);
}

TEST(Classify, DoubleIntegratedIsHigher) {
    GaussianStream g(8);
    Eigen::VectorXd e = g.normals(400);
    for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index t = 1; t < e.size(); ++t) e[t] += e[t - 1];
    ClassifyConfig cfg;
    cfg.test = UnitRootTestKind::PP;
    EXPECT_EQ(classify_integration(fixtures::series("i2", e), cfg).order, OrderOfIntegration::Higher);
}

TEST(Parsing, Names) {
    EXPECT_EQ(parse_unit_root_test("pp"), UnitRootTestKind::PP);
    EXPECT_EQ(parse_lag_selection("sbc"), LagSelection::SBC);
    EXPECT_FALSE(parse_unit_root_test("kpss").has_value());
}
