#include "cointkit/ardl.hpp"

#include "cointkit/error.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>

namespace cointkit {

namespace {

std::string lagged(const std::string& name, int lag) {
    return lag == 0 ? name : name + "(-" + std::to_string(lag) + ")";
}

std::string diffed(const std::string& name, int lag) { return "D(" + lagged(name, lag) + ")"; }

/// values[t - lag] for t = start .. start + n - 1
Eigen::VectorXd shifted(const Eigen::VectorXd& v, Eigen::Index start, Eigen::Index n, int lag) {
    return v.segment(start - lag, n);
}

Eigen::VectorXd shifted_diff(const Eigen::VectorXd& v, Eigen::Index start, Eigen::Index n, int lag) {
    return v.segment(start - lag, n) - v.segment(start - lag - 1, n);
}

class ColumnList {
public:
    explicit ColumnList(Eigen::Index n) : n_(n) {}
    void add(std::string name, Eigen::VectorXd column) {
        names_.push_back(std::move(name));
        cols_.push_back(std::move(column));
    }
    [[nodiscard]] DesignMatrix build() const {
        Eigen::MatrixXd m(n_, static_cast<Eigen::Index>(cols_.size()));
        for (std::size_t j = 0; j < cols_.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = cols_[j];
        return DesignMatrix(names_, std::move(m));
    }

private:
    Eigen::Index n_;
    std::vector<std::string> names_;
    std::vector<Eigen::VectorXd> cols_;
};

void add_deterministics(ColumnList& cols, Deterministic det, Eigen::Index n) {
    if (det == Deterministic::None) return;
    cols.add("const", Eigen::VectorXd::Ones(n));
    if (det == Deterministic::ConstantTrend)
        cols.add("trend", Eigen::VectorXd::LinSpaced(n, 1.0, static_cast<double>(n)));
}

void check_fits(const Dataset& d, const ArdlSpec& spec, Eigen::Index start) {
    spec.validate();
    if (!d.contains(spec.dependent))
        throw Error(ErrorCode::InvalidParameters, "dataset has no series '" + spec.dependent + "'");
    for (const auto& x : spec.regressors)
        if (!d.contains(x)) throw Error(ErrorCode::InvalidParameters, "dataset has no series '" + x + "'");
    if (start >= d.length())
        throw Error(ErrorCode::SampleTooShort, spec.label() + " leaves no observations out of " +
                                                   std::to_string(d.length()));
}

struct EcmDesign {
    Eigen::VectorXd dy;
    DesignMatrix design;
    std::string dependent_level;
    std::map<std::string, std::string> regressor_levels;
};

EcmDesign ecm_design(const Dataset& d, const ArdlSpec& spec, Eigen::Index start) {
    check_fits(d, spec, start);
    const Eigen::Index n = d.length() - start;
    const Eigen::VectorXd& y = d.get(spec.dependent).values();
    ColumnList cols(n);
    add_deterministics(cols, spec.det, n);
    for (int i = 1; i < spec.p; ++i) cols.add(diffed(spec.dependent, i), shifted_diff(y, start, n, i));
    for (const auto& x : spec.regressors) {
        const Eigen::VectorXd& xv = d.get(x).values();
        for (int i = 0; i < spec.q.at(x); ++i) cols.add(diffed(x, i), shifted_diff(xv, start, n, i));
    }
    EcmDesign out{shifted_diff(y, start, n, 0), DesignMatrix({}, Eigen::MatrixXd(n, 0)), lagged(spec.dependent, 1), {}};
    cols.add(out.dependent_level, shifted(y, start, n, 1));
    for (const auto& x : spec.regressors) {
        const int level_lag = spec.q.at(x) == 0 ? 0 : 1;
        out.regressor_levels[x] = lagged(x, level_lag);
        cols.add(out.regressor_levels[x], shifted(d.get(x).values(), start, n, level_lag));
    }
    out.design = cols.build();
    return out;
}

ArdlModel fit_ecm(const Dataset& d, const ArdlSpec& spec, Eigen::Index start) {
    auto design = ecm_design(d, spec, start);
    ArdlModel m;
    m.spec = spec;
    m.levels_fit = ols(design.dy, design.design);
    m.n_effective = m.levels_fit.n;
    m.sample_start = start;
    m.sample_index.assign(d.index().begin() + start, d.index().end());
    m.dependent_level_term = design.dependent_level;
    m.regressor_level_terms = design.regressor_levels;
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// ArdlSpec
// ---------------------------------------------------------------------------

void ArdlSpec::validate() const {
    if (p < 1) throw Error(ErrorCode::InvalidParameters, "ARDL dependent lag order p must be >= 1");
    if (det == Deterministic::None)
        throw Error(ErrorCode::InvalidParameters, "ARDL bounds models require a constant");
    std::set<std::string> seen;
    for (const auto& x : regressors) {
        if (x == dependent) throw Error(ErrorCode::InvalidParameters, "dependent '" + x + "' listed as a regressor");
        if (!seen.insert(x).second) throw Error(ErrorCode::InvalidParameters, "regressor '" + x + "' listed twice");
        auto it = q.find(x);
        if (it == q.end()) throw Error(ErrorCode::InvalidParameters, "no lag order for regressor '" + x + "'");
        if (it->second < 0) throw Error(ErrorCode::InvalidParameters, "negative lag order for '" + x + "'");
    }
}

int ArdlSpec::max_order() const {
    int m = p;
    for (const auto& [name, order] : q) m = std::max(m, order);
    return m;
}

std::string ArdlSpec::label() const {
    std::string out = "ARDL(" + std::to_string(p);
    for (const auto& x : regressors) {
        auto it = q.find(x);
        out += ", " + (it == q.end() ? std::string("?") : std::to_string(it->second));
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// Selection and estimation
// ---------------------------------------------------------------------------

ArdlSpec select_lags(const Dataset& d, int max_p, int max_q, Criterion criterion, Deterministic det,
                     BoundsCase bounds_case) {
    if (max_p < 1 || max_q < 0)
        throw Error(ErrorCode::InvalidParameters, "select_lags needs max_p >= 1 and max_q >= 0");
    ArdlSpec base;
    base.dependent = d.dependent();
    base.regressors = d.regressors();
    base.det = det;
    base.bounds_case = bounds_case;
    const Eigen::Index start = std::max(max_p, max_q) + 1;

    const std::size_t kx = base.regressors.size();
    std::vector<int> qs(kx, 0);
    ArdlSpec best;
    auto best_key = std::make_tuple(std::numeric_limits<double>::infinity(), 0, 0);
    bool have_best = false;
    for (int p = 1; p <= max_p; ++p) {
        std::fill(qs.begin(), qs.end(), 0);
        while (true) {
            ArdlSpec cand = base;
            cand.p = p;
            int total = p;
            for (std::size_t j = 0; j < kx; ++j) {
                cand.q[cand.regressors[j]] = qs[j];
                total += qs[j];
            }
            auto design = ecm_design(d, cand, start);
            if (design.dy.size() <= design.design.cols())
                throw Error(ErrorCode::SampleTooShort, "not enough observations for " + cand.label());
            const auto rr = ols(design.dy, design.design);
            const auto key = std::make_tuple(criterion == Criterion::AIC ? rr.aic : rr.sbc, total, p);
            if (!have_best || key < best_key) {
                best_key = key;
                best = cand;
                have_best = true;
            }
            std::size_t j = 0;
            while (j < kx && qs[j] == max_q) qs[j++] = 0;
            if (j == kx) break;
            ++qs[j];
        }
    }
    return best;
}

ArdlModel estimate_ardl(const Dataset& d, const ArdlSpec& spec) {
    spec.validate();
    auto m = fit_ecm(d, spec, spec.max_order() + 1);
    m.data = std::make_shared<const Dataset>(d);
    return m;
}

RegressionResult estimate_ardl_levels(const Dataset& d, const ArdlSpec& spec) {
    const Eigen::Index start = spec.max_order() + 1;
    check_fits(d, spec, start);
    const Eigen::Index n = d.length() - start;
    const Eigen::VectorXd& y = d.get(spec.dependent).values();
    ColumnList cols(n);
    add_deterministics(cols, spec.det, n);
    for (int i = 1; i <= spec.p; ++i) cols.add(lagged(spec.dependent, i), shifted(y, start, n, i));
    for (const auto& x : spec.regressors) {
        const Eigen::VectorXd& xv = d.get(x).values();
        for (int i = 0; i <= spec.q.at(x); ++i) cols.add(lagged(x, i), shifted(xv, start, n, i));
    }
    return ols(shifted(y, start, n, 0), cols.build());
}

// ---------------------------------------------------------------------------
// Bounds test
// ---------------------------------------------------------------------------

std::string_view to_string(BoundsDecision d) noexcept {
    switch (d) {
        case BoundsDecision::Cointegrated: return "cointegrated";
        case BoundsDecision::NotCointegrated: return "not_cointegrated";
        case BoundsDecision::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

BoundsDecision bounds_decision(double f_statistic, const Bounds& bounds) noexcept {
    if (f_statistic > bounds.upper) return BoundsDecision::Cointegrated;
    if (f_statistic < bounds.lower) return BoundsDecision::NotCointegrated;
    return BoundsDecision::Inconclusive;
}

BoundsTestResult bounds_test(const ArdlModel& m, Level alpha) {
    if (m.spec.det != Deterministic::Constant)
        throw Error(ErrorCode::UnsupportedCase, "bounds test is tabulated for cases II and III (no trend) only");
    std::set<std::string> restricted{m.dependent_level_term};
    for (const auto& [x, term] : m.regressor_level_terms) restricted.insert(term);
    if (m.spec.bounds_case == BoundsCase::II) restricted.insert("const");

    BoundsTestResult r;
    r.wald = wald_f_test(m.levels_fit, restricted, WaldContext::BoundsTest);
    r.wald.name = "Bounds F";
    r.f_statistic = r.wald.statistic;
    r.bounds_case = m.spec.bounds_case;
    r.k = static_cast<int>(m.spec.regressors.size());
    r.bounds = bounds_critical_values(r.bounds_case, r.k);
    for (const auto& [level, b] : r.bounds) r.decision_at[level] = bounds_decision(r.f_statistic, b);
    r.alpha = alpha;
    r.decision = r.decision_at.at(alpha);
    return r;
}

// ---------------------------------------------------------------------------
// Long run and ECM
// ---------------------------------------------------------------------------

namespace {

double lookup(const LongRunCoefficients& lr, const Eigen::VectorXd& v, std::string_view name) {
    for (std::size_t j = 0; j < lr.names.size(); ++j)
        if (lr.names[j] == name) return v[static_cast<Eigen::Index>(j)];
    throw Error(ErrorCode::UnknownCoefficient, "no long-run coefficient '" + std::string(name) + "'");
}

}  // namespace

double LongRunCoefficients::value(std::string_view name) const { return lookup(*this, values, name); }
double LongRunCoefficients::std_error(std::string_view name) const { return lookup(*this, std_errors, name); }
double LongRunCoefficients::t_stat(std::string_view name) const { return lookup(*this, t_stats, name); }

LongRunCoefficients long_run(const ArdlModel& m) {
    const auto& rr = m.levels_fit;
    const Eigen::Index i1 = rr.index_of(m.dependent_level_term);
    const double l1 = rr.coefficients[i1];
    if (std::abs(l1) < 1e-10)
        throw Error(ErrorCode::DegenerateAdjustment, "coefficient on " + m.dependent_level_term +
                                                         " is zero; the long run is undefined");

    std::vector<std::pair<std::string, Eigen::Index>> terms;
    for (const auto& x : m.spec.regressors) terms.emplace_back(x, rr.index_of(m.regressor_level_terms.at(x)));
    terms.emplace_back("C", rr.index_of("const"));
    if (m.spec.det == Deterministic::ConstantTrend) terms.emplace_back("TREND", rr.index_of("trend"));

    LongRunCoefficients lr;
    const auto n = static_cast<Eigen::Index>(terms.size());
    lr.values.resize(n);
    lr.std_errors.resize(n);
    lr.t_stats.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto& [name, idx] = terms[static_cast<std::size_t>(j)];
        const double lj = rr.coefficients[idx];
        const double value = -lj / l1;
        // gradient of -l_j / l_1 with respect to (l_j, l_1)
        const double g_j = -1.0 / l1;
        const double g_1 = lj / (l1 * l1);
        const double var = g_j * g_j * rr.cov_matrix(idx, idx) + g_1 * g_1 * rr.cov_matrix(i1, i1) +
                           2.0 * g_j * g_1 * rr.cov_matrix(idx, i1);
        lr.names.push_back(name);
        lr.values[j] = value;
        lr.std_errors[j] = std::sqrt(std::max(var, 0.0));
        lr.t_stats[j] = lr.std_errors[j] > 0.0 ? value / lr.std_errors[j] : std::numeric_limits<double>::quiet_NaN();
    }
    return lr;
}

EcmResult estimate_ecm(const ArdlModel& m) {
    if (!m.data) throw Error(ErrorCode::InvalidParameters, "model carries no data");
    const Dataset& d = *m.data;
    const auto& spec = m.spec;
    EcmResult out;
    out.long_run = long_run(m);

    const Eigen::Index start = m.sample_start;
    const Eigen::Index n = d.length() - start;
    const Eigen::VectorXd& y = d.get(spec.dependent).values();

    // equilibrium error at t-1, with the deterministic part aligned to the row
    Eigen::VectorXd ec = shifted(y, start, n, 1);
    for (const auto& x : spec.regressors) ec -= out.long_run.value(x) * shifted(d.get(x).values(), start, n, 1);
    ec.array() -= out.long_run.value("C");
    if (spec.det == Deterministic::ConstantTrend)
        ec -= out.long_run.value("TREND") * Eigen::VectorXd::LinSpaced(n, 1.0, static_cast<double>(n));

    ColumnList cols(n);
    if (spec.bounds_case == BoundsCase::III) cols.add("const", Eigen::VectorXd::Ones(n));
    for (int i = 1; i < spec.p; ++i) cols.add(diffed(spec.dependent, i), shifted_diff(y, start, n, i));
    for (const auto& x : spec.regressors) {
        const Eigen::VectorXd& xv = d.get(x).values();
        const int terms = std::max(spec.q.at(x), 1);
        for (int i = 0; i < terms; ++i) cols.add(diffed(x, i), shifted_diff(xv, start, n, i));
    }
    cols.add(kEcmTerm, ec);

    out.fit = ols(shifted_diff(y, start, n, 0), cols.build());
    const double dof = static_cast<double>(out.fit.n - out.fit.k);
    for (std::size_t j = 0; j < out.fit.names.size(); ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        ShortRunTerm term{out.fit.names[j], out.fit.coefficients[jj], out.fit.std_errors[jj], out.fit.t_stats[jj], 1.0};
        // two-sided t p-value via t^2 ~ F(1, dof)
        term.p_value = std::isfinite(term.t_stat) ? f_sf(term.t_stat * term.t_stat, 1.0, dof) : 0.0;
        if (term.name == kEcmTerm) {
            out.ecm_coefficient = term.coefficient;
            out.ecm_std_error = term.std_error;
            out.ecm_t_stat = term.t_stat;
            out.ecm_p_value = term.p_value;
        }
        out.short_run.push_back(std::move(term));
    }
    out.one_step_loading = m.lambda1();
    out.identity_gap = std::abs(out.ecm_coefficient - out.one_step_loading);
    out.non_negative_loading = out.ecm_coefficient >= 0.0;
    return out;
}

}  // namespace cointkit
