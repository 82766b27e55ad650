#include "cointkit/config.hpp"
#include "cointkit/error.hpp"
#include "cointkit/pipeline.hpp"
#include "cointkit/report.hpp"
#include "cointkit/simgen.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

using namespace cointkit;

namespace {

const std::filesystem::path kSource = COINTKIT_SOURCE_DIR;

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no cointkit::Error thrown";
    return ErrorCode::ConfigError;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const char* kPairConfig = R"(
input:
  path: unused.csv
variables:
  - name: y
  - name: x
models:
  - name: M
    dependent: y
    regressors: [x]
    max_p: 2
    max_q: 2
    criterion: SBC
    case: III
)";

PipelineConfig seed13_config() { return load_pipeline_config(kSource / "configs" / "seed13.yaml"); }

bool has_warning(const AnalysisReport& r, std::string_view needle) {
    return std::any_of(r.warnings.begin(), r.warnings.end(),
                       [&](const std::string& w) { return w.find(needle) != std::string::npos; });
}

}  // namespace

TEST(Config, BundledConfigParses) {
    const auto cfg = seed13_config();
    EXPECT_EQ(cfg.input, kSource / "configs" / "seed13.csv");
    ASSERT_EQ(cfg.models.size(), 1u);
    EXPECT_EQ(cfg.models[0].bounds_case, BoundsCase::III);
    EXPECT_TRUE(cfg.models[0].case_explicit);
    EXPECT_EQ(cfg.diagnostics.bg_lags, 2);
    EXPECT_EQ(cfg.decision_alpha, Level::Five);
}

TEST(Config, UndefinedVariableFailsBeforeComputation) {
    const char* text = R"(
input: {path: data.csv}
variables: [{name: y}, {name: x}]
models:
  - {name: M, dependent: y, regressors: [z]}
)";
    EXPECT_EQ(code_of([&] { (void)parse_pipeline_config(text); }), ErrorCode::ConfigError);
}

TEST(Config, UnknownKeyIsRejected) {
    EXPECT_EQ(code_of([] { (void)parse_pipeline_config("input: {path: a.csv}\nmodles: []\n"); }),
              ErrorCode::ConfigError);
}

TEST(Config, AlphaOutsideConventionalLevels) {
    EXPECT_EQ(code_of([] { (void)parse_pipeline_config("input: {path: a.csv}\ntests: {alpha_levels: ['2%']}\n"); }),
              ErrorCode::ConfigError);
}

TEST(Config, JsonEncodingIsEquivalent) {
    const auto yaml = parse_pipeline_config(kPairConfig);
    const char* json = R"({"input": {"path": "unused.csv"}, "variables": [{"name": "y"}, {"name": "x"}],
        "models": [{"name": "M", "dependent": "y", "regressors": ["x"], "max_p": 2, "max_q": 2,
                    "criterion": "SBC", "case": "III"}]})";
    const auto js = parse_pipeline_config(json);
    EXPECT_EQ(js.input, yaml.input);
    EXPECT_EQ(js.models[0].max_p, yaml.models[0].max_p);
    EXPECT_EQ(js.models[0].criterion, yaml.models[0].criterion);
    EXPECT_EQ(js.models[0].regressors, yaml.models[0].regressors);
}

TEST(Config, TransformChain) {
    const auto cfg = parse_pipeline_config(R"(
input: {path: a.csv}
variables:
  - {name: LNOP, source: op, transforms: [log]}
  - {name: DOP, source: op, transforms: [log, difference]}
)");
    const auto raw = fixtures::pair(fixtures::vec({1.0, 2.0, 4.0}), fixtures::vec({1, 2, 3})).series();
    const Dataset d({raw[0].renamed("op")}, {{"op", Role::Dependent}});
    const auto vars = build_variables(d, cfg);
    ASSERT_EQ(vars.size(), 2u);
    EXPECT_NEAR(vars[0].values()[2], std::log(4.0), 1e-15);
    EXPECT_EQ(vars[1].size(), 2);
    EXPECT_NEAR(vars[1].values()[0], std::log(2.0), 1e-15);
}

TEST(Config, DgpConfig) {
    const auto dgp = parse_dgp_config("simulate:\n  kind: cointegrated_pair\n  T: 400\n  seed: 13\n  beta: 3\n");
    EXPECT_EQ(dgp.T, 400);
    EXPECT_EQ(dgp.seed, 13u);
    EXPECT_TRUE(generate(dgp).matrix() == generate({CointegratedPair{}, 400, 13}).matrix());
    EXPECT_THROW((void)parse_dgp_config("simulate:\n  kind: garch\n"), Error);
}

TEST(Pipeline, Seed13EndToEnd) {
    const auto r = run_pipeline(seed13_config());
    ASSERT_EQ(r.models.size(), 1u);
    const auto& m = r.models[0];
    EXPECT_EQ(m.bounds.decision, BoundsDecision::Cointegrated);
    ASSERT_TRUE(m.ecm.has_value());
    EXPECT_GT(m.ecm->ecm_coefficient, -0.75);
    EXPECT_LT(m.ecm->ecm_coefficient, -0.45);
    ASSERT_TRUE(m.long_run.has_value());
    EXPECT_NEAR(m.long_run->value("x"), 3.0, 0.05);
    for (const auto& row : r.unit_root_table) EXPECT_EQ(row.order, OrderOfIntegration::I1);
}

TEST(Pipeline, DoubleCumulatedDependentIsRefused) {
    GaussianStream g(19);
    Eigen::VectorXd y = g.normals(300);
    for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index t = 1; t < y.size(); ++t) y[t] += y[t - 1];
    Eigen::VectorXd x = g.normals(300);
    for (Eigen::Index t = 1; t < x.size(); ++t) x[t] += x[t - 1];
    const auto cfg = parse_pipeline_config(kPairConfig);
    EXPECT_EQ(code_of([&] { (void)run_pipeline(cfg, fixtures::pair(y, x)); }), ErrorCode::I2VariablePresent);
    // the unit-root table alone is still available
    const auto r = run_pipeline(cfg, fixtures::pair(y, x), PipelineStages::UnitRootOnly);
    EXPECT_EQ(r.unit_root_table.front().order, OrderOfIntegration::Higher);
    EXPECT_TRUE(r.models.empty());
}

TEST(Pipeline, StageNameWrapsErrors) {
    const auto cfg = parse_pipeline_config(kPairConfig);
    const Eigen::VectorXd flat = Eigen::VectorXd::Constant(60, 1.0);
    try {
        (void)run_pipeline(cfg, fixtures::pair(flat, fixtures::vec(fixtures::kWalk)));
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(std::string(e.what()).rfind("[unit_root: y]", 0), 0u) << e.what();
        EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
    }
}

TEST(Pipeline, GateWithholdsLongRunUnlessForced) {
    // independent walks: pick the first replication the bounds test calls not cointegrated
    auto cfg = parse_pipeline_config(kPairConfig);
    for (std::uint64_t r = 0; r < 20; ++r) {
        const auto d = generate({RandomWalk{}, 300, derive_seed(99, r)});
        const auto rep = run_pipeline(cfg, d);
        if (rep.models[0].bounds.decision != BoundsDecision::NotCointegrated) continue;
        EXPECT_FALSE(rep.models[0].long_run.has_value());
        EXPECT_FALSE(rep.models[0].ecm.has_value());
        EXPECT_FALSE(rep.warnings.empty());
        const auto js = nlohmann::json::parse(render_json(rep));
        EXPECT_TRUE(js["models"][0]["long_run_table"].is_null());

        cfg.force = true;
        const auto forced = run_pipeline(cfg, d);
        EXPECT_TRUE(forced.models[0].long_run.has_value());
        EXPECT_TRUE(forced.models[0].ecm.has_value());
        return;
    }
    FAIL() << "no not-cointegrated replication found";
}

TEST(Pipeline, ImplicitCaseIsFlagged) {
    auto cfg = parse_pipeline_config(R"(
input: {path: a.csv}
models:
  - {name: M, dependent: y, regressors: [x], max_p: 1, max_q: 1}
)");
    EXPECT_FALSE(cfg.models[0].case_explicit);
    const auto r = run_pipeline(cfg, generate({CointegratedPair{}, 200, 13}));
    EXPECT_TRUE(has_warning(r, "case"));
}

TEST(Report, DeterministicAndMatchesGolden) {
    const auto cfg = seed13_config();
    const auto a = render_json(run_pipeline(cfg));
    const auto b = render_json(run_pipeline(cfg));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, read_file(kSource / "tests" / "golden" / "seed13_report.json"));
    const auto js = nlohmann::ordered_json::parse(a);
    EXPECT_EQ(js["schema"], kReportSchema);
    EXPECT_EQ(js.begin().key(), "schema");
}

TEST(Report, TextRenderingIsDeterministic) {
    const auto r = run_pipeline(seed13_config());
    EXPECT_EQ(render_report(r, ReportFormat::Text), render_report(r, ReportFormat::Text));
    EXPECT_EQ(render_report(r, ReportFormat::Text), render_text_from_json(render_json(r)));
}

TEST(Report, StarsAgreeWithVerdicts) {
    const auto r = run_pipeline(seed13_config());
    const auto text = render_report(r, ReportFormat::Text);
    const auto js = nlohmann::json::parse(render_json(r));
    int checked = 0;
    for (const auto& row : js["unit_root_table"])
        for (const auto& cell : row["cells"]) {
            std::map<Level, bool> rejected;
            for (auto level : kAllLevels)
                rejected[level] = cell["verdict_at"][std::string(label_of(level))] == "stationary";
            std::ostringstream s;
            s << std::fixed << std::setprecision(3) << cell["statistic"].get<double>() << stars_for(rejected);
            // the rendered cell is followed by a space or a line end, never by another star
            const auto pos = text.find(s.str());
            ASSERT_NE(pos, std::string::npos) << s.str();
            const char next = text[pos + s.str().size()];
            EXPECT_TRUE(next == ' ' || next == '\n') << s.str();
            ++checked;
        }
    EXPECT_EQ(checked, 16);
}

TEST(Report, StarsForLevels) {
    EXPECT_EQ(stars_for({{Level::One, true}, {Level::Five, true}, {Level::Ten, true}}), "***");
    EXPECT_EQ(stars_for({{Level::One, false}, {Level::Five, true}, {Level::Ten, true}}), "**");
    EXPECT_EQ(stars_for({{Level::One, false}, {Level::Five, false}, {Level::Ten, true}}), "*");
    EXPECT_EQ(stars_for({{Level::One, false}, {Level::Five, false}, {Level::Ten, false}}), "");
}

TEST(Report, EmptyDiagnosticsOmitTableAndWarn) {
    auto cfg = seed13_config();
    cfg.diagnostics.serial_correlation = cfg.diagnostics.functional_form = cfg.diagnostics.normality =
        cfg.diagnostics.heteroscedasticity = cfg.diagnostics.stability = false;
    const auto r = run_pipeline(cfg);
    EXPECT_TRUE(has_warning(r, "diagnostic"));
    EXPECT_EQ(render_report(r, ReportFormat::Text).find("Diagnostic tests"), std::string::npos);
    EXPECT_NE(render_report(run_pipeline(seed13_config()), ReportFormat::Text).find("Diagnostic tests"),
              std::string::npos);
}

TEST(Report, RenderRejectsForeignJson) {
    EXPECT_EQ(code_of([] { (void)render_text_from_json(R"({"schema": "other/1"})"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { (void)render_text_from_json("not json"); }), ErrorCode::ParseError);
}

TEST(Report, FormatNames) {
    EXPECT_EQ(parse_report_format("json"), ReportFormat::Json);
    EXPECT_EQ(parse_report_format("text"), ReportFormat::Text);
    EXPECT_FALSE(parse_report_format("xml").has_value());
}
