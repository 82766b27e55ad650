#include "cointkit/report.hpp"

#include "cointkit/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cointkit {

using Json = nlohmann::ordered_json;

namespace {

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string level_key(Level l) { return std::string(label_of(l)); }

Json levels_json(const std::set<Level>& levels) {
    Json a = Json::array();
    for (auto l : kAllLevels)
        if (levels.count(l)) a.push_back(level_key(l));
    return a;
}

template <typename V, typename F>
Json level_map(const std::map<Level, V>& m, const std::set<Level>& levels, F&& to_json) {
    Json o = Json::object();
    for (auto l : kAllLevels)
        if (levels.count(l) && m.count(l)) o[level_key(l)] = to_json(m.at(l));
    return o;
}

std::map<Level, Decision> decisions_from_p(double p, const std::set<Level>& levels) {
    std::map<Level, Decision> out;
    for (auto l : levels) out[l] = std::isfinite(p) && p < alpha_of(l) ? Decision::Reject : Decision::FailToReject;
    return out;
}

Json decision_json(const std::map<Level, Decision>& m, const std::set<Level>& levels) {
    return level_map(m, levels, [](Decision d) { return std::string(to_string(d)); });
}

Json unit_root_cell(const UnitRootResult& r, std::string_view form, const std::set<Level>& levels) {
    Json c;
    c["test"] = to_string(r.test);
    c["spec"] = to_string(r.spec);
    c["form"] = form;
    c["statistic"] = num(r.statistic);
    c[r.test == UnitRootTestKind::ADF ? "lag" : "bandwidth"] = r.lag_or_bandwidth;
    c["lag_selection"] = to_string(r.selection);
    c["nobs"] = r.nobs;
    c["critical_values"] = level_map(r.critical_values, levels, [](double v) { return num(v); });
    c["verdict_at"] = level_map(r.verdict_at, levels, [](Verdict v) { return std::string(to_string(v)); });
    return c;
}

Json test_json(const TestStatistic& t, std::string_view key, const std::set<Level>& levels) {
    Json j;
    j["key"] = key;
    j["name"] = t.name;
    j["statistic"] = num(t.statistic);
    j["distribution"] = t.distribution.label();
    j["p_value"] = t.p_value ? num(*t.p_value) : Json(nullptr);
    j["decision_at"] = decision_json(t.decision_at, levels);
    return j;
}

Json stability_json(const StabilityResult& s, std::string_view key) {
    Json j;
    j["key"] = key;
    j["name"] = key == "cusum" ? "CUSUM" : "CUSUM of squares";
    j["level"] = level_key(s.level);
    j["stable"] = s.stable;
    const Eigen::ArrayXd margin =
        (s.upper_bound - s.path).array().min((s.path - s.lower_bound).array());
    j["min_margin"] = num(margin.size() ? margin.minCoeff() : 0.0);
    j["steps"] = s.path.size();
    return j;
}

Json model_json(const ModelReport& m, const AnalysisReport& r, DateFormat fmt) {
    const auto& levels = r.alpha_levels;
    Json j;
    j["name"] = m.name;
    j["specification"] = m.selected.label();
    Json orders;
    orders["p"] = m.selected.p;
    Json q = Json::object();
    for (const auto& x : m.selected.regressors) q[x] = m.selected.q.at(x);
    orders["q"] = q;
    j["orders"] = orders;
    j["dependent"] = m.selected.dependent;
    j["regressors"] = m.selected.regressors;
    j["criterion"] = to_string(m.criterion);
    j["n_effective"] = m.n_effective;
    j["sample"] = {{"first", format_period(m.sample_first, fmt)}, {"last", format_period(m.sample_last, fmt)}};

    Json b;
    b["case"] = to_string(m.bounds.bounds_case);
    b["k"] = m.bounds.k;
    b["f_statistic"] = num(m.bounds.f_statistic);
    b["distribution"] = m.bounds.wald.distribution.label();
    b["bounds"] = level_map(m.bounds.bounds, levels,
                            [](const Bounds& bd) { return Json{{"lower", num(bd.lower)}, {"upper", num(bd.upper)}}; });
    b["decision_at"] =
        level_map(m.bounds.decision_at, levels, [](BoundsDecision d) { return std::string(to_string(d)); });
    b["alpha"] = level_key(m.bounds.alpha);
    b["decision"] = to_string(m.bounds.decision);
    if (m.reference_bounds)
        b["reference_bounds"] = {{"lower", num(m.reference_bounds->lower)},
                                 {"upper", num(m.reference_bounds->upper)},
                                 {"note", m.reference_bounds->note}};
    else
        b["reference_bounds"] = nullptr;
    j["bounds_table"] = b;

    if (m.long_run) {
        const double dof = static_cast<double>(m.levels_fit.n - m.levels_fit.k);
        Json rows = Json::array();
        for (std::size_t i = 0; i < m.long_run->names.size(); ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            const double t = m.long_run->t_stats[ii];
            const double p = std::isfinite(t) ? f_sf(t * t, 1.0, dof) : std::nan("");
            rows.push_back({{"variable", m.long_run->names[i]},
                            {"coefficient", num(m.long_run->values[ii])},
                            {"std_error", num(m.long_run->std_errors[ii])},
                            {"t_stat", num(t)},
                            {"p_value", num(p)},
                            {"decision_at", decision_json(decisions_from_p(p, levels), levels)}});
        }
        j["long_run_table"] = rows;
    } else {
        j["long_run_table"] = nullptr;
    }

    if (m.ecm) {
        const auto& e = *m.ecm;
        Json s;
        Json rows = Json::array();
        for (const auto& t : e.short_run)
            rows.push_back({{"variable", t.name},
                            {"coefficient", num(t.coefficient)},
                            {"std_error", num(t.std_error)},
                            {"t_stat", num(t.t_stat)},
                            {"p_value", num(t.p_value)},
                            {"decision_at", decision_json(decisions_from_p(t.p_value, levels), levels)}});
        s["terms"] = rows;
        s["ecm"] = {{"coefficient", num(e.ecm_coefficient)},   {"std_error", num(e.ecm_std_error)},
                    {"t_stat", num(e.ecm_t_stat)},             {"p_value", num(e.ecm_p_value)},
                    {"adjustment_percent", num(e.adjustment_percent())},
                    {"one_step_loading", num(e.one_step_loading)}, {"identity_gap", num(e.identity_gap)},
                    {"non_negative_loading", e.non_negative_loading}};
        s["r_squared"] = num(e.fit.r_squared);
        s["adj_r_squared"] = num(e.fit.adj_r_squared);
        s["f_statistic"] = num(e.fit.f_statistic);
        s["f_p_value"] = num(e.fit.f_p_value);
        s["durbin_watson"] = num(e.fit.durbin_watson);
        s["aic"] = num(e.fit.aic);
        s["sbc"] = num(e.fit.sbc);
        s["n"] = e.fit.n;
        j["short_run_table"] = s;
    } else {
        j["short_run_table"] = nullptr;
    }

    const auto& d = m.diagnostics;
    if (d.empty()) {
        j["diagnostics_table"] = nullptr;
    } else {
        Json dj;
        dj["alpha"] = level_key(d.alpha);
        dj["pass"] = d.pass;
        Json tests = Json::array();
        if (d.serial_correlation) tests.push_back(test_json(*d.serial_correlation, "serial_correlation", levels));
        if (d.functional_form) tests.push_back(test_json(*d.functional_form, "functional_form", levels));
        if (d.normality) tests.push_back(test_json(*d.normality, "normality", levels));
        if (d.heteroscedasticity) tests.push_back(test_json(*d.heteroscedasticity, "heteroscedasticity", levels));
        dj["tests"] = tests;
        Json stab = Json::array();
        if (d.cusum) stab.push_back(stability_json(*d.cusum, "cusum"));
        if (d.cusumsq) stab.push_back(stability_json(*d.cusumsq, "cusumsq"));
        dj["stability"] = stab;
        j["diagnostics_table"] = dj;
    }
    return j;
}

Json report_json(const AnalysisReport& r) {
    Json j;
    j["schema"] = kReportSchema;
    j["source"] = r.source;
    j["observations"] = r.observations;
    j["alpha_levels"] = levels_json(r.alpha_levels);
    j["decision_alpha"] = level_key(r.decision_alpha);
    j["classification"] = {{"test", to_string(r.classify_test)}, {"spec", to_string(r.classify_spec)}};
    j["force"] = r.force;
    Json ur = Json::array();
    for (const auto& row : r.unit_root_table) {
        Json cells = Json::array();
        for (const auto& [key, pair] : row.cells) {
            cells.push_back(unit_root_cell(pair.first, "level", r.alpha_levels));
            cells.push_back(unit_root_cell(pair.second, "difference", r.alpha_levels));
        }
        ur.push_back({{"variable", row.variable}, {"order", to_string(row.order)}, {"cells", cells}});
    }
    j["unit_root_table"] = ur;
    Json models = Json::array();
    for (const auto& m : r.models) models.push_back(model_json(m, r, r.date_format));
    j["models"] = models;
    j["warnings"] = r.warnings;
    return j;
}

// ---------------------------------------------------------------------------
// text rendering
// ---------------------------------------------------------------------------

class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
    [[nodiscard]] bool empty() const { return rows_.empty(); }

    void print(std::ostringstream& out) const {
        std::vector<std::size_t> w(header_.size(), 0);
        auto widen = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
        };
        widen(header_);
        for (const auto& r : rows_) widen(r);
        std::size_t total = 0;
        for (auto x : w) total += x + 2;
        auto line = [&](const std::vector<std::string>& r) {
            std::string s;
            for (std::size_t i = 0; i < w.size(); ++i) {
                const std::string cell = i < r.size() ? r[i] : "";
                const std::string pad(w[i] - cell.size(), ' ');
                s += i == 0 ? cell + pad : pad + cell;
                if (i + 1 < w.size()) s += "  ";
            }
            while (!s.empty() && s.back() == ' ') s.pop_back();
            out << s << '\n';
        };
        line(header_);
        out << std::string(total > 2 ? total - 2 : total, '-') << '\n';
        for (const auto& r : rows_) line(r);
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string fixed(const Json& v, int digits = 4) {
    if (v.is_null()) return "n/a";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v.get<double>());
    std::string s(buf);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

std::vector<Level> report_levels(const Json& doc) {
    std::vector<Level> out;
    for (const auto& l : doc.at("alpha_levels")) out.push_back(*parse_level(l.get<std::string>()));
    return out;
}

std::string stars(const Json& decisions, std::string_view positive, const std::vector<Level>& levels) {
    std::map<Level, bool> hit;
    for (auto l : levels) {
        const auto key = level_key(l);
        if (decisions.contains(key)) hit[l] = decisions.at(key).get<std::string>() == positive;
    }
    return stars_for(hit);
}

std::string star_legend(const std::vector<Level>& levels) {
    std::string s = "Note:";
    const char* marks[] = {"***", "**", "*"};
    for (std::size_t i = 0; i < kAllLevels.size(); ++i)
        if (std::find(levels.begin(), levels.end(), kAllLevels[i]) != levels.end())
            s += std::string(" ") + marks[i] + " significant at " + level_key(kAllLevels[i]) + ";";
    s.back() = '.';
    return s;
}

void section(std::ostringstream& out, const std::string& title) {
    out << '\n' << title << '\n' << std::string(title.size(), '=') << '\n';
}

void render_unit_roots(std::ostringstream& out, const Json& doc, const std::vector<Level>& levels) {
    const auto& table = doc.at("unit_root_table");
    if (table.empty()) return;
    for (const char* test : {"ADF", "PP"}) {
        section(out, std::string("Unit root tests: ") + test);
        Table t({"Variable", "Level", "Level (trend)", "First diff.", "First diff. (trend)", "Order"});
        for (const auto& row : table) {
            std::map<std::string, std::string> cell;
            for (const auto& c : row.at("cells")) {
                if (c.at("test") != test) continue;
                const std::string key = c.at("form").get<std::string>() + "/" + c.at("spec").get<std::string>();
                cell[key] = fixed(c.at("statistic"), 3) + stars(c.at("verdict_at"), "stationary", levels);
            }
            t.row({row.at("variable").get<std::string>(), cell["level/constant"], cell["level/constant_and_trend"],
                   cell["difference/constant"], cell["difference/constant_and_trend"],
                   row.at("order").get<std::string>()});
        }
        t.print(out);
    }
    out << "Classification uses " << doc.at("classification").at("test").get<std::string>() << " with "
        << doc.at("classification").at("spec").get<std::string>() << " at " << doc.at("decision_alpha").get<std::string>()
        << ".\n";
}

void render_bounds(std::ostringstream& out, const Json& doc, const std::vector<Level>& levels) {
    section(out, "Bounds test for cointegration");
    std::vector<std::string> header{"Model", "Specification", "F", "Case", "k"};
    for (auto l : levels) {
        header.push_back("I(0) " + level_key(l));
        header.push_back("I(1) " + level_key(l));
    }
    header.push_back("Decision");
    Table t(header);
    for (const auto& m : doc.at("models")) {
        const auto& b = m.at("bounds_table");
        std::vector<std::string> r{m.at("name").get<std::string>(), m.at("specification").get<std::string>(),
                                   fixed(b.at("f_statistic")) + stars(b.at("decision_at"), "cointegrated", levels),
                                   b.at("case").get<std::string>(), std::to_string(b.at("k").get<int>())};
        for (auto l : levels) {
            const auto key = level_key(l);
            const bool has = b.at("bounds").contains(key);
            r.push_back(has ? fixed(b.at("bounds").at(key).at("lower"), 2) : "n/a");
            r.push_back(has ? fixed(b.at("bounds").at(key).at("upper"), 2) : "n/a");
        }
        r.push_back(b.at("decision").get<std::string>() + " (" + b.at("alpha").get<std::string>() + ")");
        t.row(r);
    }
    t.print(out);
    for (const auto& m : doc.at("models")) {
        const auto& rb = m.at("bounds_table").at("reference_bounds");
        if (rb.is_null()) continue;
        out << m.at("name").get<std::string>() << ": reference bounds " << fixed(rb.at("lower"), 2) << " - "
            << fixed(rb.at("upper"), 2);
        if (!rb.at("note").get<std::string>().empty()) out << " (" << rb.at("note").get<std::string>() << ")";
        out << '\n';
    }
}

void render_coefficients(std::ostringstream& out, const Json& rows, const std::vector<Level>& levels, bool with_p) {
    std::vector<std::string> header{"Variable", "Coefficient", "Std. Error", "t-Statistic"};
    if (with_p) header.push_back("Prob.");
    Table t(header);
    for (const auto& r : rows) {
        std::vector<std::string> cells{r.at("variable").get<std::string>(),
                                       fixed(r.at("coefficient")) + stars(r.at("decision_at"), "reject", levels),
                                       fixed(r.at("std_error")), fixed(r.at("t_stat"))};
        if (with_p) cells.push_back(fixed(r.at("p_value")));
        t.row(cells);
    }
    t.print(out);
}

void render_model(std::ostringstream& out, const Json& m, const std::vector<Level>& levels) {
    const std::string name = m.at("name").get<std::string>();
    const std::string dep = m.at("dependent").get<std::string>();
    const auto& lr = m.at("long_run_table");
    if (!lr.is_null()) {
        section(out, "Estimated long-run coefficients for " + name + " (" + m.at("specification").get<std::string>() +
                         ", dependent " + dep + ")");
        render_coefficients(out, lr, levels, true);
    }
    const auto& sr = m.at("short_run_table");
    if (!sr.is_null()) {
        section(out, "Estimated short-run coefficients for " + name + " (dependent D(" + dep + "))");
        render_coefficients(out, sr.at("terms"), levels, true);
        out << "R-squared " << fixed(sr.at("r_squared")) << "   Adjusted R-squared " << fixed(sr.at("adj_r_squared"))
            << "\nF-statistic " << fixed(sr.at("f_statistic")) << " (" << fixed(sr.at("f_p_value")) << ")"
            << "   Durbin-Watson " << fixed(sr.at("durbin_watson")) << "   n " << sr.at("n").get<long>() << '\n';
        const auto& e = sr.at("ecm");
        out << "ECM(-1) = " << fixed(e.at("coefficient")) << ": about " << fixed(e.at("adjustment_percent"), 1)
            << "% of a disequilibrium is corrected each period.\n";
    }
    const auto& d = m.at("diagnostics_table");
    if (!d.is_null()) {
        section(out, "Diagnostic tests for " + name);
        Table t({"Test", "Statistic", "Distribution", "Prob.", "Result at " + d.at("alpha").get<std::string>()});
        const auto alpha = d.at("alpha").get<std::string>();
        for (const auto& x : d.at("tests")) {
            const bool reject = x.at("decision_at").contains(alpha) && x.at("decision_at").at(alpha) == "reject";
            t.row({x.at("name").get<std::string>(), fixed(x.at("statistic"), 6), x.at("distribution").get<std::string>(),
                   fixed(x.at("p_value")), reject ? "reject" : "pass"});
        }
        for (const auto& x : d.at("stability"))
            t.row({x.at("name").get<std::string>(), "", "", "", x.at("stable").get<bool>() ? "stable" : "unstable"});
        t.print(out);
        out << "Overall: " << (d.at("pass").get<bool>() ? "pass" : "fail") << '\n';
    }
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view text) {
    if (text == "json") return ReportFormat::Json;
    if (text == "text") return ReportFormat::Text;
    return std::nullopt;
}

std::string render_json(const AnalysisReport& r) { return report_json(r).dump(2) + "\n"; }

std::string render_text_from_json(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("report is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("schema") || doc.at("schema") != kReportSchema)
        throw Error(ErrorCode::ParseError, std::string("report schema is not ") + kReportSchema);
    try {
        const auto levels = report_levels(doc);
        std::ostringstream out;
        out << "cointkit report (" << doc.at("schema").get<std::string>() << ")\n"
            << "Source: " << doc.at("source").get<std::string>() << ", " << doc.at("observations").get<long>()
            << " observations\n";
        render_unit_roots(out, doc, levels);
        if (!doc.at("models").empty()) render_bounds(out, doc, levels);
        for (const auto& m : doc.at("models")) render_model(out, m, levels);
        out << '\n' << star_legend(levels) << '\n';
        const auto& w = doc.at("warnings");
        if (!w.empty()) {
            section(out, "Warnings");
            for (const auto& x : w) out << "- " << x.get<std::string>() << '\n';
        }
        return out.str();
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("report is missing fields: ") + e.what());
    }
}

std::string render_report(const AnalysisReport& r, ReportFormat fmt) {
    const std::string json = render_json(r);
    return fmt == ReportFormat::Json ? json : render_text_from_json(json);
}

}  // namespace cointkit
