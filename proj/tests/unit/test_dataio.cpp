#include "cointkit/dataio.hpp"
#include "cointkit/error.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>

using namespace cointkit;

namespace {

const char* kThreeRows = "date,op\n2000-01,25.0\n2000-02,26.0\n2000-03,27.5\n";

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no cointkit::Error thrown";
    return ErrorCode::ConfigError;
}

TimeSeries ts(const std::vector<double>& v) { return fixtures::series("s", fixtures::vec(v)); }

std::vector<double> values(const TimeSeries& s) { return {s.values().data(), s.values().data() + s.size()}; }

}  // namespace

TEST(Csv, ThreeRows) {
    const auto d = parse_csv(kThreeRows, {});
    ASSERT_EQ(d.series().size(), 1u);
    EXPECT_EQ(d.dependent(), "op");
    EXPECT_EQ(values(d.get("op")), (std::vector<double>{25.0, 26.0, 27.5}));
    EXPECT_EQ(d.index().front(), (Period{2000, 1}));
    EXPECT_EQ(d.index().back(), (Period{2000, 3}));
    ASSERT_TRUE(d.provenance().has_value());
    EXPECT_EQ(d.provenance()->rows_read, 3u);
    EXPECT_EQ(d.provenance()->rows_dropped, 0u);
}

TEST(Csv, OutOfOrderRows) {
    EXPECT_EQ(code_of([] { (void)parse_csv("date,op\n2000-02,26.0\n2000-01,25.0\n2000-03,27.5\n", {}); }),
              ErrorCode::NonMonotoneIndex);
}

TEST(Csv, DropRowPolicy) {
    CsvConfig cfg;
    cfg.missing = MissingPolicy::DropRow;
    const auto d = parse_csv("date,op,x\n2000-01,25.0,1\n2000-02,26.0,2\n2000-03,,3\n", cfg);
    EXPECT_EQ(d.length(), 2);
    EXPECT_EQ(d.provenance()->rows_dropped, 1u);
    EXPECT_EQ(values(d.get("x")), (std::vector<double>{1.0, 2.0}));
}

TEST(Csv, DropRowInsideTheSampleWouldOpenAGap) {
    CsvConfig cfg;
    cfg.missing = MissingPolicy::DropRow;
    EXPECT_EQ(code_of([&] { (void)parse_csv("date,op\n2000-01,25.0\n2000-02,\n2000-03,27.5\n", cfg); }),
              ErrorCode::MissingValuePolicyViolation);
}

TEST(Csv, RejectPolicyRefusesHoles) {
    EXPECT_EQ(code_of([] { (void)parse_csv("date,op\n2000-01,25.0\n2000-02,\n2000-03,27.5\n", {}); }),
              ErrorCode::MissingValuePolicyViolation);
}

TEST(Csv, InterpolatePolicy) {
    CsvConfig cfg;
    cfg.missing = MissingPolicy::LinearInterpolate;
    const auto d = parse_csv("date,op\n2000-01,25.0\n2000-02,\n2000-03,27.0\n", cfg);
    EXPECT_EQ(values(d.get("op")), (std::vector<double>{25.0, 26.0, 27.0}));
    EXPECT_EQ(d.provenance()->cells_interpolated, 1u);
}

TEST(Csv, BadNumberIsParseError) {
    try {
        (void)parse_csv("date,op\n2000-01,25.0\n2000-02,abc\n", {});
        FAIL() << "expected ParseError";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find("op"), std::string::npos);
    }
}

TEST(Csv, MissingFile) {
    EXPECT_EQ(code_of([] { (void)load_csv("/nonexistent/cointkit.csv", {}); }), ErrorCode::FileNotFound);
}

TEST(Csv, CalendarGapIsRejected) {
    EXPECT_EQ(code_of([] { (void)parse_csv("date,op\n2000-01,25.0\n2000-03,26.0\n", {}); }), ErrorCode::IndexGap);
}

TEST(Csv, QuarterlyDates) {
    CsvConfig cfg;
    cfg.date_format = DateFormat::YearQuarter;
    const auto d = parse_csv("date,op\n1999Q4,1\n2000Q1,2\n", cfg);
    EXPECT_EQ(d.frequency(), Frequency::Quarterly);
    EXPECT_EQ(d.index().back(), (Period{2000, 1}));
}

TEST(Csv, RoundTripIsBitExact) {
    const std::string text = "date,y,x\n2000-01,0.1,-3.3333333333333335\n2000-02,1e-300,2.718281828459045\n"
                             "2000-03,123456789.125,0.30000000000000004\n";
    CsvConfig cfg;
    const auto d = parse_csv(text, cfg);
    const auto again = parse_csv(to_csv(d, cfg), cfg);
    for (const auto& name : {"y", "x"})
        for (Eigen::Index t = 0; t < d.length(); ++t)
            EXPECT_EQ(d.get(name).values()[t], again.get(name).values()[t]);
    EXPECT_EQ(again.index(), d.index());
}

TEST(Csv, LoadFromDisk) {
    const auto path = std::filesystem::temp_directory_path() / "cointkit_dataio_test.csv";
    std::ofstream(path) << kThreeRows;
    const auto d = load_csv(path, {});
    EXPECT_EQ(d.length(), 3);
    std::filesystem::remove(path);
}

TEST(Log, DefinitionExamples) {
    const auto out = log_transform(ts({1.0, std::exp(1.0), std::exp(2.0)}));
    EXPECT_NEAR(out.values()[0], 0.0, 1e-15);
    EXPECT_NEAR(out.values()[1], 1.0, 1e-15);
    EXPECT_NEAR(out.values()[2], 2.0, 1e-15);
    EXPECT_EQ(out.name(), "LNs");
    EXPECT_NEAR(log_transform(ts({25.0})).values()[0], 3.2188758248682006, 1e-15);
}

TEST(Log, NonPositive) {
    EXPECT_EQ(code_of([] { (void)log_transform(ts({1.0, 0.0, 2.0})); }), ErrorCode::NonPositiveValue);
    EXPECT_EQ(code_of([] { (void)log_transform(ts({-1.0})); }), ErrorCode::NonPositiveValue);
}

TEST(Log, StrictlyMonotone) {
    const std::vector<double> v{0.5, 3.0, 1.0, 100.0, 2.5};
    const auto out = log_transform(ts(v));
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            EXPECT_EQ(v[i] < v[j], out.values()[static_cast<Eigen::Index>(i)] < out.values()[static_cast<Eigen::Index>(j)]);
}

TEST(Difference, Examples) {
    const auto s = ts({1, 3, 6, 10});
    EXPECT_EQ(values(difference(s, 1)), (std::vector<double>{2, 3, 4}));
    EXPECT_EQ(values(difference(s, 2)), (std::vector<double>{1, 1}));
    EXPECT_EQ(values(difference(ts({4, 4, 4}), 1)), (std::vector<double>{0, 0}));
    EXPECT_EQ(difference(s, 1).index().front(), (Period{2000, 2}));
}

TEST(Difference, TooShort) {
    EXPECT_EQ(code_of([] { (void)difference(ts({1, 2}), 2); }), ErrorCode::SeriesTooShort);
}

TEST(Difference, OrdersCompose) {
    const auto s = ts(fixtures::kWalk);
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
            const auto direct = difference(s, a + b);
            const auto nested = difference(difference(s, a), b);
            ASSERT_EQ(direct.size(), nested.size());
            EXPECT_LT((direct.values() - nested.values()).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_EQ(direct.index(), nested.index());
        }
}

TEST(Lag, Examples) {
    const auto s = ts({1, 2, 3, 4});
    const auto l1 = lag(s, 1);
    EXPECT_EQ(values(l1), (std::vector<double>{1, 2, 3}));
    EXPECT_EQ(l1.index().front(), (Period{2000, 2}));
    EXPECT_EQ(values(lag(s, 3)), (std::vector<double>{1}));
    EXPECT_EQ(code_of([&] { (void)lag(s, 4); }), ErrorCode::SeriesTooShort);
}

TEST(Lag, CommutesWithDifference) {
    const auto s = ts({1, 3, 6, 10});
    const auto a = difference(lag(s, 1), 1);
    const auto b = lag(difference(s, 1), 1);
    EXPECT_EQ(values(a), values(b));
    EXPECT_EQ(a.index(), b.index());
}

TEST(Dataset, AlignIntersects) {
    const auto y = ts({1, 2, 3, 4, 5}).renamed("y");
    const auto x = lag(ts({10, 20, 30, 40, 50}).renamed("x"), 2);
    const auto d = align({y, x}, "y");
    EXPECT_EQ(d.length(), 3);
    EXPECT_EQ(values(d.get("y")), (std::vector<double>{3, 4, 5}));
    EXPECT_EQ(d.regressors(), (std::vector<std::string>{"x"}));
}

TEST(Dataset, NeedsExactlyOneDependent) {
    const auto y = ts({1, 2, 3});
    EXPECT_THROW(Dataset({y.renamed("a"), y.renamed("b")}, {{"a", Role::Regressor}, {"b", Role::Regressor}}), Error);
    EXPECT_THROW(Dataset({y.renamed("a"), y.renamed("b")}, {{"a", Role::Dependent}, {"b", Role::Dependent}}), Error);
}

TEST(TimeSeries, RejectsNonFinite) {
    EXPECT_THROW(ts({1.0, std::nan(""), 2.0}), Error);
}
