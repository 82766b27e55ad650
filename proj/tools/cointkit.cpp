// cointkit command-line front end.

#include "cointkit/config.hpp"
#include "cointkit/error.hpp"
#include "cointkit/pipeline.hpp"
#include "cointkit/report.hpp"
#include "cointkit/simgen.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace cointkit;

struct Options {
    std::string config;
    std::string input;
    std::string output;
    std::string format = "text";
    std::optional<std::uint64_t> seed;
    bool force = false;
};

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::filesystem::path& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::FileNotFound, "cannot write " + path.string());
    out << text;
}

ReportFormat format_of(const Options& o) {
    const auto f = parse_report_format(o.format);
    if (!f) throw Error(ErrorCode::ConfigError, "--format must be json or text");
    return *f;
}

PipelineConfig pipeline_config(const Options& o) {
    PipelineConfig cfg;
    if (!o.config.empty()) cfg = load_pipeline_config(o.config);
    if (!o.input.empty()) cfg.input = o.input;
    if (o.force) cfg.force = true;
    return cfg;
}

void write_report(const AnalysisReport& r, const PipelineConfig& cfg, const Options& o) {
    if (!o.output.empty() || (!cfg.output.json && !cfg.output.text)) {
        emit(render_report(r, format_of(o)), o.output);
        return;
    }
    if (cfg.output.json) emit(render_report(r, ReportFormat::Json), *cfg.output.json);
    if (cfg.output.text) emit(render_report(r, ReportFormat::Text), *cfg.output.text);
}

int run_analysis(const Options& o, PipelineStages stages) {
    const auto cfg = pipeline_config(o);
    write_report(run_pipeline(cfg, stages), cfg, o);
    return 0;
}

int run_simulate(const Options& o) {
    if (o.config.empty()) throw Error(ErrorCode::ConfigError, "simulate needs --config");
    Dgp dgp = load_dgp_config(o.config);
    if (o.seed) dgp.seed = *o.seed;
    const Dataset d = generate(dgp);
    CsvConfig csv;
    csv.dependent = "y";
    emit(to_csv(d, csv), o.output);
    return 0;
}

int run_render(const Options& o) {
    if (o.input.empty()) throw Error(ErrorCode::ConfigError, "render needs --input REPORT.json");
    const std::string json = slurp(o.input);
    emit(format_of(o) == ReportFormat::Json ? json : render_text_from_json(json), o.output);
    return 0;
}

void add_common(CLI::App* sub, Options& o, bool with_force) {
    sub->add_option("--config", o.config, "Config file (YAML or JSON)");
    sub->add_option("--input", o.input, "Input path, overrides the config");
    sub->add_option("--output", o.output, "Output path (default: stdout)");
    sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    if (with_force) sub->add_flag("--force", o.force, "Report long-run and ECM tables without cointegration");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ARDL bounds-testing cointegration toolkit"};
    app.require_subcommand(1);
    Options o;

    auto* unitroot = app.add_subcommand("unitroot", "ADF and PP tests on every configured variable");
    add_common(unitroot, o, false);
    auto* ardl = app.add_subcommand("ardl", "Lag selection, bounds test, long-run and ECM without the unit-root screen");
    add_common(ardl, o, true);
    auto* pipeline = app.add_subcommand("pipeline", "Full analysis chain");
    add_common(pipeline, o, true);
    auto* simulate = app.add_subcommand("simulate", "Write a simulated dataset as CSV");
    simulate->add_option("--config", o.config, "DGP config file")->required();
    simulate->add_option("--output", o.output, "CSV path (default: stdout)");
    simulate->add_option("--seed", o.seed, "Seed, overrides the config");
    auto* render = app.add_subcommand("render", "Render a saved JSON report");
    render->add_option("--input", o.input, "JSON report")->required();
    render->add_option("--output", o.output, "Output path (default: stdout)");
    render->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*unitroot) return run_analysis(o, PipelineStages::UnitRootOnly);
        if (*ardl) return run_analysis(o, PipelineStages::ModelsOnly);
        if (*pipeline) return run_analysis(o, PipelineStages::All);
        if (*simulate) return run_simulate(o);
        if (*render) return run_render(o);
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return exit_code_of(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
