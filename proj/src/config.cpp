#include "cointkit/config.hpp"

#include "cointkit/error.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

namespace cointkit {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::ConfigError, where.empty() ? what : where + ": " + what);
}

void check_keys(const YAML::Node& node, const std::string& where, std::initializer_list<std::string_view> allowed) {
    if (!node.IsMap()) fail(where, "expected a mapping");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) fail(where, "unknown key '" + key + "'");
    }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& where) {
    if (!node.IsScalar()) fail(where, "expected a scalar");
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        fail(where, "cannot read '" + node.Scalar() + "'");
    }
}

template <typename T>
T value_or(const YAML::Node& parent, const char* key, const std::string& where, T fallback) {
    const auto node = parent[key];
    if (!node || node.IsNull()) return fallback;
    return scalar<T>(node, where + "." + key);
}

std::vector<std::string> string_list(const YAML::Node& node, const std::string& where) {
    std::vector<std::string> out;
    if (!node || node.IsNull()) return out;
    if (node.IsScalar()) return {node.as<std::string>()};
    if (!node.IsSequence()) fail(where, "expected a list");
    for (std::size_t i = 0; i < node.size(); ++i)
        out.push_back(scalar<std::string>(node[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

template <typename Parsed>
auto parsed_or_fail(Parsed p, const std::string& where, const std::string& text) {
    if (!p) fail(where, "invalid value '" + text + "'");
    return *p;
}

Level parse_level_node(const YAML::Node& node, const std::string& where) {
    const auto text = scalar<std::string>(node, where);
    return parsed_or_fail(parse_level(text), where, text + "' (allowed: 1%, 5%, 10%");
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

void read_input(const YAML::Node& node, const std::filesystem::path& base, PipelineConfig& cfg) {
    const std::string w = "input";
    check_keys(node, w, {"path", "date_column", "date_format", "columns", "dependent", "missing"});
    if (const auto p = node["path"]; p && !p.IsNull()) cfg.input = resolve(base, scalar<std::string>(p, w + ".path"));
    cfg.csv.date_column = value_or<std::string>(node, "date_column", w, cfg.csv.date_column);
    if (const auto f = node["date_format"]; f && !f.IsNull()) {
        const auto text = scalar<std::string>(f, w + ".date_format");
        cfg.csv.date_format = parsed_or_fail(parse_date_format(text), w + ".date_format", text);
    }
    cfg.csv.value_columns = string_list(node["columns"], w + ".columns");
    cfg.csv.dependent = value_or<std::string>(node, "dependent", w, "");
    if (const auto m = node["missing"]; m && !m.IsNull()) {
        const auto text = scalar<std::string>(m, w + ".missing");
        cfg.csv.missing = parsed_or_fail(parse_missing_policy(text), w + ".missing", text);
    }
}

void read_variables(const YAML::Node& node, PipelineConfig& cfg) {
    if (!node.IsSequence()) fail("variables", "expected a list");
    for (std::size_t i = 0; i < node.size(); ++i) {
        const std::string w = "variables[" + std::to_string(i) + "]";
        const auto& v = node[i];
        check_keys(v, w, {"name", "source", "transforms"});
        VariableConfig var;
        if (!v["name"]) fail(w, "missing 'name'");
        var.name = scalar<std::string>(v["name"], w + ".name");
        var.source = value_or<std::string>(v, "source", w, var.name);
        for (const auto& t : string_list(v["transforms"], w + ".transforms")) {
            if (t == "log")
                var.transforms.push_back(Transform::Log);
            else if (t == "difference" || t == "diff")
                var.transforms.push_back(Transform::Difference);
            else
                fail(w + ".transforms", "unknown transform '" + t + "' (allowed: log, difference)");
        }
        cfg.variables.push_back(std::move(var));
    }
}

void read_models(const YAML::Node& node, PipelineConfig& cfg) {
    if (!node.IsSequence()) fail("models", "expected a list");
    for (std::size_t i = 0; i < node.size(); ++i) {
        const std::string w = "models[" + std::to_string(i) + "]";
        const auto& n = node[i];
        check_keys(n, w,
                   {"name", "dependent", "regressors", "max_p", "max_q", "criterion", "case", "reference_bounds"});
        ModelConfig m;
        m.name = value_or<std::string>(n, "name", w, "Model " + std::to_string(i + 1));
        if (!n["dependent"]) fail(w, "missing 'dependent'");
        m.dependent = scalar<std::string>(n["dependent"], w + ".dependent");
        m.regressors = string_list(n["regressors"], w + ".regressors");
        m.max_p = value_or<int>(n, "max_p", w, m.max_p);
        m.max_q = value_or<int>(n, "max_q", w, m.max_q);
        if (const auto c = n["criterion"]; c && !c.IsNull()) {
            const auto text = scalar<std::string>(c, w + ".criterion");
            m.criterion = parsed_or_fail(parse_criterion(text), w + ".criterion", text);
        }
        if (const auto c = n["case"]; c && !c.IsNull()) {
            const auto text = scalar<std::string>(c, w + ".case");
            m.bounds_case = parsed_or_fail(parse_bounds_case(text), w + ".case", text);
            m.case_explicit = true;
        }
        if (const auto r = n["reference_bounds"]; r && !r.IsNull()) {
            const std::string rw = w + ".reference_bounds";
            check_keys(r, rw, {"lower", "upper", "note"});
            if (!r["lower"] || !r["upper"]) fail(rw, "needs 'lower' and 'upper'");
            m.reference_bounds = ReferenceBounds{scalar<double>(r["lower"], rw + ".lower"),
                                                 scalar<double>(r["upper"], rw + ".upper"),
                                                 value_or<std::string>(r, "note", rw, "")};
        }
        cfg.models.push_back(std::move(m));
    }
}

void read_tests(const YAML::Node& node, PipelineConfig& cfg) {
    const std::string w = "tests";
    check_keys(node, w, {"alpha_levels", "decision_alpha", "unit_root"});
    if (const auto a = node["alpha_levels"]; a && !a.IsNull()) {
        if (!a.IsSequence()) fail(w + ".alpha_levels", "expected a list");
        cfg.alpha_levels.clear();
        for (std::size_t i = 0; i < a.size(); ++i)
            cfg.alpha_levels.insert(parse_level_node(a[i], w + ".alpha_levels[" + std::to_string(i) + "]"));
    }
    if (const auto d = node["decision_alpha"]; d && !d.IsNull())
        cfg.decision_alpha = parse_level_node(d, w + ".decision_alpha");
    if (const auto u = node["unit_root"]; u && !u.IsNull()) {
        const std::string uw = w + ".unit_root";
        check_keys(u, uw, {"classify_test", "classify_spec", "max_lag", "selection", "bandwidth"});
        auto& ur = cfg.unit_root;
        if (const auto t = u["classify_test"]; t && !t.IsNull()) {
            const auto text = scalar<std::string>(t, uw + ".classify_test");
            ur.classify_test = parsed_or_fail(parse_unit_root_test(text), uw + ".classify_test", text);
        }
        if (const auto s = u["classify_spec"]; s && !s.IsNull()) {
            const auto text = scalar<std::string>(s, uw + ".classify_spec");
            const auto spec = parsed_or_fail(parse_deterministic(text), uw + ".classify_spec", text);
            if (spec == Deterministic::None) fail(uw + ".classify_spec", "must be constant or constant_and_trend");
            ur.classify_spec = spec;
        }
        if (const auto s = u["selection"]; s && !s.IsNull()) {
            const auto text = scalar<std::string>(s, uw + ".selection");
            ur.selection = parsed_or_fail(parse_lag_selection(text), uw + ".selection", text);
        }
        if (const auto l = u["max_lag"]; l && !l.IsNull()) ur.max_lag = scalar<int>(l, uw + ".max_lag");
        if (const auto b = u["bandwidth"]; b && !b.IsNull()) ur.bandwidth = scalar<int>(b, uw + ".bandwidth");
    }
}

void read_diagnostics(const YAML::Node& node, PipelineConfig& cfg) {
    const std::string w = "diagnostics";
    check_keys(node, w,
               {"serial_correlation", "functional_form", "normality", "heteroscedasticity", "stability", "bg_lags",
                "reset_powers"});
    auto& d = cfg.diagnostics;
    d.serial_correlation = value_or<bool>(node, "serial_correlation", w, d.serial_correlation);
    d.functional_form = value_or<bool>(node, "functional_form", w, d.functional_form);
    d.normality = value_or<bool>(node, "normality", w, d.normality);
    d.heteroscedasticity = value_or<bool>(node, "heteroscedasticity", w, d.heteroscedasticity);
    d.stability = value_or<bool>(node, "stability", w, d.stability);
    d.bg_lags = value_or<int>(node, "bg_lags", w, d.bg_lags);
    if (const auto p = node["reset_powers"]; p && !p.IsNull()) {
        if (!p.IsSequence()) fail(w + ".reset_powers", "expected a list");
        d.reset_powers.clear();
        for (std::size_t i = 0; i < p.size(); ++i)
            d.reset_powers.insert(scalar<int>(p[i], w + ".reset_powers[" + std::to_string(i) + "]"));
    }
}

void read_output(const YAML::Node& node, const std::filesystem::path& base, PipelineConfig& cfg) {
    const std::string w = "output";
    check_keys(node, w, {"json", "text"});
    if (const auto j = node["json"]; j && !j.IsNull()) cfg.output.json = resolve(base, scalar<std::string>(j, w + ".json"));
    if (const auto t = node["text"]; t && !t.IsNull()) cfg.output.text = resolve(base, scalar<std::string>(t, w + ".text"));
}

YAML::Node load_root(std::string_view text) {
    try {
        return YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        fail("", std::string("malformed config: ") + e.what());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string_view to_string(Transform t) noexcept { return t == Transform::Log ? "log" : "difference"; }

void PipelineConfig::validate(bool require_models) const {
    if (require_models && models.empty()) fail("models", "at least one model is required");
    if (alpha_levels.empty()) fail("tests.alpha_levels", "at least one level is required");
    if (!alpha_levels.count(decision_alpha)) fail("tests.decision_alpha", "must be one of tests.alpha_levels");
    std::set<std::string> declared;
    for (const auto& v : variables)
        if (!declared.insert(v.name).second) fail("variables", "duplicate variable '" + v.name + "'");
    for (const auto& m : models) {
        const std::string w = "model '" + m.name + "'";
        if (m.regressors.empty()) fail(w, "needs at least one regressor");
        if (m.max_p < 1) fail(w, "max_p must be >= 1");
        if (m.max_q < 0) fail(w, "max_q must be >= 0");
        std::set<std::string> seen{m.dependent};
        for (const auto& r : m.regressors)
            if (!seen.insert(r).second) fail(w, "variable '" + r + "' appears twice");
        if (!variables.empty()) {
            if (!declared.count(m.dependent)) fail(w, "undefined variable '" + m.dependent + "'");
            for (const auto& r : m.regressors)
                if (!declared.count(r)) fail(w, "undefined variable '" + r + "'");
        }
        if (m.reference_bounds && !(m.reference_bounds->lower <= m.reference_bounds->upper))
            fail(w, "reference bounds need lower <= upper");
    }
    if (diagnostics.bg_lags < 1) fail("diagnostics.bg_lags", "must be >= 1");
    if (diagnostics.reset_powers.empty()) fail("diagnostics.reset_powers", "must not be empty");
    for (int p : diagnostics.reset_powers)
        if (p < 2 || p > 4) fail("diagnostics.reset_powers", "powers must lie in {2, 3, 4}");
    if (unit_root.max_lag && *unit_root.max_lag < 0) fail("tests.unit_root.max_lag", "must be >= 0");
    if (unit_root.bandwidth && *unit_root.bandwidth < 0) fail("tests.unit_root.bandwidth", "must be >= 0");
}

PipelineConfig parse_pipeline_config(std::string_view text, const std::filesystem::path& base_dir) {
    const auto root = load_root(text);
    check_keys(root, "", {"input", "variables", "models", "tests", "diagnostics", "output", "force"});
    PipelineConfig cfg;
    if (const auto n = root["input"]; n && !n.IsNull()) read_input(n, base_dir, cfg);
    if (const auto n = root["variables"]; n && !n.IsNull()) read_variables(n, cfg);
    if (const auto n = root["models"]; n && !n.IsNull()) read_models(n, cfg);
    if (const auto n = root["tests"]; n && !n.IsNull()) read_tests(n, cfg);
    if (const auto n = root["diagnostics"]; n && !n.IsNull()) read_diagnostics(n, cfg);
    if (const auto n = root["output"]; n && !n.IsNull()) read_output(n, base_dir, cfg);
    cfg.force = value_or<bool>(root, "force", "", false);
    cfg.diagnostics.alpha = cfg.decision_alpha;
    cfg.validate(false);
    return cfg;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
    return parse_pipeline_config(read_file(path), path.parent_path());
}

Dgp parse_dgp_config(std::string_view text) {
    const auto root = load_root(text);
    check_keys(root, "", {"simulate"});
    const auto s = root["simulate"];
    if (!s) fail("", "missing 'simulate'");
    const std::string w = "simulate";
    check_keys(s, w,
               {"kind", "T", "seed", "drift", "phi", "c", "beta", "adjustment", "sigma_x", "sigma_y", "theta",
                "x_phi", "break_fraction", "pre_intercept", "pre_slope", "post_intercept", "post_slope", "x_mean",
                "x_sd"});
    if (!s["kind"]) fail(w, "missing 'kind'");
    const auto kind = scalar<std::string>(s["kind"], w + ".kind");
    Dgp dgp;
    dgp.T = value_or<long>(s, "T", w, 200);
    dgp.seed = value_or<std::uint64_t>(s, "seed", w, 0);
    auto number_list = [&](const char* key, std::vector<double> fallback) {
        const auto n = s[key];
        if (!n || n.IsNull()) return fallback;
        if (n.IsScalar()) return std::vector<double>{scalar<double>(n, w + "." + key)};
        std::vector<double> out;
        for (std::size_t i = 0; i < n.size(); ++i) out.push_back(scalar<double>(n[i], w + "." + key));
        return out;
    };
    if (kind == "random_walk") {
        dgp.kind = RandomWalk{value_or<double>(s, "drift", w, 0.0)};
    } else if (kind == "ar1") {
        dgp.kind = Ar1{value_or<double>(s, "phi", w, 0.5), value_or<double>(s, "c", w, 0.0)};
    } else if (kind == "cointegrated_pair") {
        CointegratedPair k;
        k.beta = value_or<double>(s, "beta", w, k.beta);
        k.adjustment = value_or<double>(s, "adjustment", w, k.adjustment);
        k.sigma_x = value_or<double>(s, "sigma_x", w, k.sigma_x);
        k.sigma_y = value_or<double>(s, "sigma_y", w, k.sigma_y);
        dgp.kind = k;
    } else if (kind == "ardl") {
        ArdlDgp k;
        k.phi = number_list("phi", k.phi);
        k.theta = number_list("theta", k.theta);
        k.c = value_or<double>(s, "c", w, k.c);
        k.x_phi = value_or<double>(s, "x_phi", w, k.x_phi);
        dgp.kind = k;
    } else if (kind == "break_model") {
        BreakModel k;
        k.break_fraction = value_or<double>(s, "break_fraction", w, k.break_fraction);
        k.pre_intercept = value_or<double>(s, "pre_intercept", w, k.pre_intercept);
        k.pre_slope = value_or<double>(s, "pre_slope", w, k.pre_slope);
        k.post_intercept = value_or<double>(s, "post_intercept", w, k.post_intercept);
        k.post_slope = value_or<double>(s, "post_slope", w, k.post_slope);
        k.x_mean = value_or<double>(s, "x_mean", w, k.x_mean);
        k.x_sd = value_or<double>(s, "x_sd", w, k.x_sd);
        dgp.kind = k;
    } else {
        fail(w + ".kind", "unknown kind '" + kind + "'");
    }
    try {
        dgp.validate();
    } catch (const Error& e) {
        fail(w, e.what());
    }
    return dgp;
}

Dgp load_dgp_config(const std::filesystem::path& path) { return parse_dgp_config(read_file(path)); }

}  // namespace cointkit
