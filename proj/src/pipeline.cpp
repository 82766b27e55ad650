#include "cointkit/pipeline.hpp"

#include "cointkit/error.hpp"

#include <algorithm>

namespace cointkit {

namespace {

template <typename F>
auto staged(const std::string& stage, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        throw e.in_stage(stage);
    }
}

constexpr std::array<UnitRootTestKind, 2> kTests{UnitRootTestKind::ADF, UnitRootTestKind::PP};
constexpr std::array<Deterministic, 2> kSpecs{Deterministic::Constant, Deterministic::ConstantTrend};

UnitRootRow unit_root_row(const TimeSeries& s, const PipelineConfig& cfg) {
    UnitRootRow row;
    row.variable = s.name();
    const TimeSeries diff = difference(s, 1);
    for (auto test : kTests) {
        for (auto spec : kSpecs) {
            ClassifyConfig cc{test, spec, cfg.unit_root.max_lag, cfg.unit_root.selection, cfg.unit_root.bandwidth,
                              cfg.decision_alpha};
            row.cells.emplace(std::make_pair(test, spec),
                              std::make_pair(run_unit_root_test(s, cc), run_unit_root_test(diff, cc)));
        }
    }
    const auto& [level, differenced] = row.cells.at({cfg.unit_root.classify_test, cfg.unit_root.classify_spec});
    if (level.verdict_at.at(cfg.decision_alpha) == Verdict::Stationary)
        row.order = OrderOfIntegration::I0;
    else if (differenced.verdict_at.at(cfg.decision_alpha) == Verdict::Stationary)
        row.order = OrderOfIntegration::I1;
    else
        row.order = OrderOfIntegration::Higher;
    return row;
}

const TimeSeries& find_variable(const std::vector<TimeSeries>& vars, const std::string& name) {
    for (const auto& v : vars)
        if (v.name() == name) return v;
    throw Error(ErrorCode::ConfigError, "undefined variable '" + name + "'");
}

ModelReport run_model(const ModelConfig& mc, const std::vector<TimeSeries>& vars, const PipelineConfig& cfg,
                      std::vector<std::string>& warnings) {
    std::vector<TimeSeries> members{find_variable(vars, mc.dependent)};
    for (const auto& r : mc.regressors) members.push_back(find_variable(vars, r));
    const auto data = std::make_shared<const Dataset>(staged("align", [&] { return align(members, mc.dependent); }));

    ModelReport out;
    out.name = mc.name;
    out.criterion = mc.criterion;
    out.reference_bounds = mc.reference_bounds;
    if (!mc.case_explicit)
        warnings.push_back(out.name + ": bounds case not configured; using Case III (unrestricted intercept)");

    out.selected = staged("lag_selection", [&] {
        return select_lags(*data, mc.max_p, mc.max_q, mc.criterion, Deterministic::Constant, mc.bounds_case);
    });
    auto model = staged("ardl", [&] { return estimate_ardl(*data, out.selected); });
    model.data = data;
    out.n_effective = model.n_effective;
    out.sample_first = model.sample_index.front();
    out.sample_last = model.sample_index.back();
    out.bounds = staged("bounds_test", [&] { return bounds_test(model, cfg.decision_alpha); });

    const auto decision = out.bounds.decision;
    const std::string at = std::string(label_of(cfg.decision_alpha));
    if (decision == BoundsDecision::Inconclusive)
        warnings.push_back(out.name + ": bounds test inconclusive at " + at +
                           "; long-run and ECM estimates are conditional on cointegration");
    if (decision == BoundsDecision::NotCointegrated && !cfg.force) {
        warnings.push_back(out.name + ": no cointegration at " + at + "; long-run and ECM tables withheld");
    } else {
        if (decision == BoundsDecision::NotCointegrated)
            warnings.push_back(out.name + ": no cointegration at " + at + "; long-run and ECM reported because force=true");
        out.long_run = staged("long_run", [&] { return long_run(model); });
        out.ecm = staged("ecm", [&] { return estimate_ecm(model); });
        if (out.ecm->non_negative_loading)
            warnings.push_back(out.name + ": ECM(-1) loading is non-negative; no error correction");
        if (out.ecm->ecm_p_value > alpha_of(cfg.decision_alpha) && decision == BoundsDecision::Cointegrated)
            warnings.push_back(out.name + ": bounds test finds cointegration but ECM(-1) is insignificant at " + at);
    }

    out.levels_fit = staged("ardl", [&] { return estimate_ardl_levels(*data, out.selected); });
    out.diagnostics = staged("diagnostics", [&] { return run_diagnostics(out.levels_fit, cfg.diagnostics); });
    if (out.diagnostics.empty())
        warnings.push_back(out.name + ": all diagnostics disabled; diagnostics table omitted");
    return out;
}

}  // namespace

std::vector<TimeSeries> build_variables(const Dataset& raw, const PipelineConfig& cfg) {
    if (cfg.variables.empty()) return raw.series();
    std::vector<TimeSeries> out;
    for (const auto& v : cfg.variables) {
        if (!raw.contains(v.source))
            throw Error(ErrorCode::ConfigError, "variable '" + v.name + "' refers to missing column '" + v.source + "'");
        TimeSeries s = raw.get(v.source);
        for (auto t : v.transforms) s = t == Transform::Log ? log_transform(s) : difference(s, 1);
        out.push_back(s.renamed(v.name));
    }
    return out;
}

AnalysisReport run_pipeline(const PipelineConfig& cfg, const Dataset& raw, PipelineStages stages) {
    cfg.validate(stages != PipelineStages::UnitRootOnly);
    const auto vars = staged("transform", [&] { return build_variables(raw, cfg); });
    for (const auto& m : cfg.models) {
        (void)find_variable(vars, m.dependent);
        for (const auto& r : m.regressors) (void)find_variable(vars, r);
    }

    AnalysisReport report;
    report.source = raw.provenance() ? std::filesystem::path(raw.provenance()->source).filename().string() : std::string("<memory>");
    report.date_format = cfg.csv.date_format;
    report.observations = static_cast<std::size_t>(raw.length());
    report.alpha_levels = cfg.alpha_levels;
    report.decision_alpha = cfg.decision_alpha;
    report.classify_test = cfg.unit_root.classify_test;
    report.classify_spec = cfg.unit_root.classify_spec;
    report.force = cfg.force;

    if (stages != PipelineStages::ModelsOnly) {
        for (const auto& v : vars)
            report.unit_root_table.push_back(staged("unit_root: " + v.name(), [&] { return unit_root_row(v, cfg); }));
        if (stages == PipelineStages::UnitRootOnly) return report;
        std::vector<std::string> higher;
        for (const auto& row : report.unit_root_table)
            if (row.order == OrderOfIntegration::Higher) higher.push_back(row.variable);
        if (!higher.empty()) {
            std::string names;
            for (const auto& h : higher) names += (names.empty() ? "" : ", ") + h;
            throw Error(ErrorCode::I2VariablePresent,
                        "[integration_screen] I(2) or higher: " + names + "; the bounds test requires I(0)/I(1) data");
        }
    }

    for (const auto& mc : cfg.models)
        report.models.push_back(staged("model '" + mc.name + "'", [&] { return run_model(mc, vars, cfg, report.warnings); }));
    return report;
}

AnalysisReport run_pipeline(const PipelineConfig& cfg, PipelineStages stages) {
    if (cfg.input.empty()) throw Error(ErrorCode::ConfigError, "input.path is not set");
    CsvConfig csv = cfg.csv;
    if (csv.value_columns.empty() && !cfg.variables.empty()) {
        for (const auto& v : cfg.variables)
            if (std::find(csv.value_columns.begin(), csv.value_columns.end(), v.source) == csv.value_columns.end())
                csv.value_columns.push_back(v.source);
    }
    const auto raw = staged("ingest", [&] { return load_csv(cfg.input, csv); });
    return run_pipeline(cfg, raw, stages);
}

}  // namespace cointkit
