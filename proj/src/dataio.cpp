#include "cointkit/dataio.hpp"

#include "cointkit/error.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cointkit {

int periods_per_year(Frequency f) noexcept {
    switch (f) {
        case Frequency::Monthly: return 12;
        case Frequency::Quarterly: return 4;
        case Frequency::Annual: return 1;
    }
    return 12;
}

Period Period::next(Frequency f) const noexcept {
    const int ppy = periods_per_year(f);
    if (sub >= ppy) return {year + 1, 1};
    return {year, sub + 1};
}

// ---------------------------------------------------------------------------
// Date formats
// ---------------------------------------------------------------------------

std::optional<DateFormat> parse_date_format(std::string_view text) {
    if (text == "YYYY-MM") return DateFormat::YearMonth;
    if (text == "YYYY/MM") return DateFormat::YearSlashMonth;
    if (text == "MM/YYYY") return DateFormat::MonthSlashYear;
    if (text == "YYYY-Qq" || text == "YYYY-QN" || text == "YYYY-Q") return DateFormat::YearQuarter;
    if (text == "YYYY") return DateFormat::Year;
    return std::nullopt;
}

std::string_view to_string(DateFormat f) noexcept {
    switch (f) {
        case DateFormat::YearMonth: return "YYYY-MM";
        case DateFormat::YearSlashMonth: return "YYYY/MM";
        case DateFormat::MonthSlashYear: return "MM/YYYY";
        case DateFormat::YearQuarter: return "YYYY-Qq";
        case DateFormat::Year: return "YYYY";
    }
    return "YYYY-MM";
}

Frequency frequency_of(DateFormat f) noexcept {
    switch (f) {
        case DateFormat::YearQuarter: return Frequency::Quarterly;
        case DateFormat::Year: return Frequency::Annual;
        default: return Frequency::Monthly;
    }
}

namespace {

std::optional<int> parse_int(std::string_view s) {
    if (s.empty()) return std::nullopt;
    int value = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\"");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            fields.push_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(trim(current));
    return fields;
}

bool is_missing_token(std::string_view s) {
    return s.empty() || s == "NA" || s == "NaN" || s == "nan" || s == "." || s == "null" ||
           s == "NULL";
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

std::optional<Period> parse_period(std::string_view text, DateFormat f) {
    auto month_ok = [](int m) { return m >= 1 && m <= 12; };
    switch (f) {
        case DateFormat::YearMonth:
        case DateFormat::YearSlashMonth: {
            const char sep = f == DateFormat::YearMonth ? '-' : '/';
            const auto pos = text.find(sep);
            if (pos == std::string_view::npos) return std::nullopt;
            auto y = parse_int(text.substr(0, pos));
            auto m = parse_int(text.substr(pos + 1));
            if (!y || !m || !month_ok(*m)) return std::nullopt;
            return Period{*y, *m};
        }
        case DateFormat::MonthSlashYear: {
            const auto pos = text.find('/');
            if (pos == std::string_view::npos) return std::nullopt;
            auto m = parse_int(text.substr(0, pos));
            auto y = parse_int(text.substr(pos + 1));
            if (!y || !m || !month_ok(*m)) return std::nullopt;
            return Period{*y, *m};
        }
        case DateFormat::YearQuarter: {
            const auto pos = text.find_first_of("Qq");
            if (pos == std::string_view::npos) return std::nullopt;
            auto year_part = text.substr(0, pos);
            if (!year_part.empty() && (year_part.back() == '-' || year_part.back() == ' '))
                year_part.remove_suffix(1);
            auto y = parse_int(year_part);
            auto q = parse_int(text.substr(pos + 1));
            if (!y || !q || *q < 1 || *q > 4) return std::nullopt;
            return Period{*y, *q};
        }
        case DateFormat::Year: {
            auto y = parse_int(text);
            if (!y) return std::nullopt;
            return Period{*y, 1};
        }
    }
    return std::nullopt;
}

std::string format_period(const Period& p, DateFormat f) {
    char buf[32];
    switch (f) {
        case DateFormat::YearMonth: std::snprintf(buf, sizeof buf, "%04d-%02d", p.year, p.sub); break;
        case DateFormat::YearSlashMonth: std::snprintf(buf, sizeof buf, "%04d/%02d", p.year, p.sub); break;
        case DateFormat::MonthSlashYear: std::snprintf(buf, sizeof buf, "%02d/%04d", p.sub, p.year); break;
        case DateFormat::YearQuarter: std::snprintf(buf, sizeof buf, "%04d-Q%d", p.year, p.sub); break;
        case DateFormat::Year: std::snprintf(buf, sizeof buf, "%04d", p.year); break;
    }
    return buf;
}

// ---------------------------------------------------------------------------
// TimeSeries / Dataset
// ---------------------------------------------------------------------------

TimeSeries::TimeSeries(std::string name, Frequency frequency, std::vector<Period> index,
                       Eigen::VectorXd values)
    : name_(std::move(name)), frequency_(frequency), index_(std::move(index)),
      values_(std::move(values)) {
    if (static_cast<Eigen::Index>(index_.size()) != values_.size())
        throw Error(ErrorCode::DimensionMismatch,
                    "series '" + name_ + "': index and values differ in length");
    for (std::size_t i = 1; i < index_.size(); ++i) {
        const long prev = index_[i - 1].ordinal(frequency_);
        const long cur = index_[i].ordinal(frequency_);
        if (cur <= prev)
            throw Error(ErrorCode::NonMonotoneIndex,
                        "series '" + name_ + "': index not strictly increasing at position " +
                            std::to_string(i));
        if (cur != prev + 1)
            throw Error(ErrorCode::IndexGap,
                        "series '" + name_ + "': gap in index at position " + std::to_string(i));
    }
    for (Eigen::Index i = 0; i < values_.size(); ++i)
        if (!std::isfinite(values_[i]))
            throw Error(ErrorCode::ParseError,
                        "series '" + name_ + "': non-finite value at position " + std::to_string(i));
}

TimeSeries TimeSeries::renamed(std::string name) const {
    return TimeSeries(std::move(name), frequency_, index_, values_);
}

TimeSeries TimeSeries::slice(const Period& first, const Period& last) const {
    std::vector<Period> idx;
    std::vector<double> vals;
    for (std::size_t i = 0; i < index_.size(); ++i) {
        if (index_[i] >= first && index_[i] <= last) {
            idx.push_back(index_[i]);
            vals.push_back(values_[static_cast<Eigen::Index>(i)]);
        }
    }
    return TimeSeries(name_, frequency_, std::move(idx),
                      Eigen::Map<const Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size())));
}

Dataset::Dataset(std::vector<TimeSeries> series, std::map<std::string, Role> roles,
                 std::optional<Provenance> provenance)
    : series_(std::move(series)), roles_(std::move(roles)), provenance_(std::move(provenance)) {
    if (series_.empty()) throw Error(ErrorCode::InvalidParameters, "dataset has no series");
    std::set<std::string> names;
    for (const auto& s : series_) {
        if (!names.insert(s.name()).second)
            throw Error(ErrorCode::InvalidParameters, "duplicate series name '" + s.name() + "'");
        if (s.index() != series_.front().index() || s.frequency() != series_.front().frequency())
            throw Error(ErrorCode::DimensionMismatch,
                        "series '" + s.name() + "' does not share the dataset index");
    }
    int dependents = 0;
    for (const auto& [name, role] : roles_) {
        if (!names.count(name))
            throw Error(ErrorCode::InvalidParameters, "role assigned to unknown series '" + name + "'");
        if (role == Role::Dependent) ++dependents;
    }
    for (const auto& s : series_)
        if (!roles_.count(s.name())) roles_[s.name()] = Role::Regressor;
    if (dependents != 1)
        throw Error(ErrorCode::InvalidParameters, "dataset needs exactly one dependent series");
}

const TimeSeries& Dataset::get(std::string_view name) const {
    for (const auto& s : series_)
        if (s.name() == name) return s;
    throw Error(ErrorCode::InvalidParameters, "no series named '" + std::string(name) + "'");
}

bool Dataset::contains(std::string_view name) const noexcept {
    return std::any_of(series_.begin(), series_.end(),
                       [&](const TimeSeries& s) { return s.name() == name; });
}

const std::string& Dataset::dependent() const {
    for (const auto& [name, role] : roles_)
        if (role == Role::Dependent) return name;
    throw Error(ErrorCode::InvalidParameters, "dataset has no dependent series");
}

std::vector<std::string> Dataset::regressors() const {
    std::vector<std::string> out;
    for (const auto& s : series_)
        if (roles_.at(s.name()) == Role::Regressor) out.push_back(s.name());
    return out;
}

Eigen::MatrixXd Dataset::matrix() const {
    Eigen::MatrixXd m(length(), static_cast<Eigen::Index>(series_.size()));
    for (std::size_t j = 0; j < series_.size(); ++j)
        m.col(static_cast<Eigen::Index>(j)) = series_[j].values();
    return m;
}

Dataset align(const std::vector<TimeSeries>& series, const std::string& dependent) {
    if (series.empty()) throw Error(ErrorCode::InvalidParameters, "nothing to align");
    Period first = series.front().index().front();
    Period last = series.front().index().back();
    for (const auto& s : series) {
        if (s.size() == 0) throw Error(ErrorCode::SeriesTooShort, "series '" + s.name() + "' is empty");
        if (s.frequency() != series.front().frequency())
            throw Error(ErrorCode::DimensionMismatch, "cannot align series of different frequency");
        first = std::max(first, s.index().front());
        last = std::min(last, s.index().back());
    }
    if (last < first) throw Error(ErrorCode::SampleTooShort, "series have no common sample");
    std::vector<TimeSeries> sliced;
    std::map<std::string, Role> roles;
    for (const auto& s : series) {
        sliced.push_back(s.slice(first, last));
        roles[s.name()] = s.name() == dependent ? Role::Dependent : Role::Regressor;
    }
    return Dataset(std::move(sliced), std::move(roles));
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

std::optional<MissingPolicy> parse_missing_policy(std::string_view text) {
    if (text == "reject") return MissingPolicy::Reject;
    if (text == "drop-row" || text == "drop_row") return MissingPolicy::DropRow;
    if (text == "linear-interpolate" || text == "linear_interpolate" || text == "interpolate")
        return MissingPolicy::LinearInterpolate;
    return std::nullopt;
}

std::string_view to_string(MissingPolicy p) noexcept {
    switch (p) {
        case MissingPolicy::Reject: return "reject";
        case MissingPolicy::DropRow: return "drop-row";
        case MissingPolicy::LinearInterpolate: return "linear-interpolate";
    }
    return "reject";
}

Dataset load_csv(const std::filesystem::path& path, const CsvConfig& cfg) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), cfg, path.string());
}

Dataset parse_csv(std::string_view text, const CsvConfig& cfg, std::string source) {
    std::vector<std::string> lines;
    {
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            std::string line(text.substr(start, end - start));
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!trim(line).empty()) lines.push_back(std::move(line));
            start = end + 1;
        }
    }
    if (lines.empty()) throw Error(ErrorCode::ParseError, "row 1: missing header row");

    const auto header = split_fields(lines.front());
    const auto date_it = std::find(header.begin(), header.end(), cfg.date_column);
    if (date_it == header.end())
        throw Error(ErrorCode::ParseError, "row 1, column '" + cfg.date_column + "': date column not found");
    const auto date_col = static_cast<std::size_t>(date_it - header.begin());

    std::vector<std::string> names = cfg.value_columns;
    if (names.empty())
        for (std::size_t j = 0; j < header.size(); ++j)
            if (j != date_col) names.push_back(header[j]);
    if (names.empty()) throw Error(ErrorCode::ParseError, "row 1: no value columns");
    std::vector<std::size_t> cols;
    for (const auto& n : names) {
        auto it = std::find(header.begin(), header.end(), n);
        if (it == header.end())
            throw Error(ErrorCode::ParseError, "row 1, column '" + n + "': column not found");
        cols.push_back(static_cast<std::size_t>(it - header.begin()));
    }

    const Frequency freq = frequency_of(cfg.date_format);
    const std::size_t nrows = lines.size() - 1;
    std::vector<Period> index;
    std::vector<std::vector<std::optional<double>>> cells(names.size(),
                                                          std::vector<std::optional<double>>(nrows));
    for (std::size_t r = 0; r < nrows; ++r) {
        const auto fields = split_fields(lines[r + 1]);
        const std::string row_tag = "row " + std::to_string(r + 2);
        if (fields.size() != header.size())
            throw Error(ErrorCode::ParseError, row_tag + ": expected " + std::to_string(header.size()) +
                                                   " fields, found " + std::to_string(fields.size()));
        auto period = parse_period(fields[date_col], cfg.date_format);
        if (!period)
            throw Error(ErrorCode::ParseError, row_tag + ", column '" + cfg.date_column +
                                                   "': cannot parse '" + fields[date_col] + "' as " +
                                                   std::string(to_string(cfg.date_format)));
        if (!index.empty() && period->ordinal(freq) <= index.back().ordinal(freq))
            throw Error(ErrorCode::NonMonotoneIndex, row_tag + ": date '" + fields[date_col] +
                                                         "' does not follow the previous row");
        if (!index.empty() && period->ordinal(freq) != index.back().ordinal(freq) + 1)
            throw Error(ErrorCode::IndexGap, row_tag + ": missing period before '" + fields[date_col] + "'");
        index.push_back(*period);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const std::string& cell = fields[cols[j]];
            if (is_missing_token(cell)) continue;
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value))
                throw Error(ErrorCode::ParseError,
                            row_tag + ", column '" + names[j] + "': cannot parse '" + cell + "'");
            cells[j][r] = value;
        }
    }

    Provenance prov;
    prov.source = std::move(source);
    prov.rows_read = nrows;
    prov.policy = cfg.missing;

    std::vector<bool> keep(nrows, true);
    for (std::size_t r = 0; r < nrows; ++r) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cells[j][r]) continue;
            const std::string where = "row " + std::to_string(r + 2) + ", column '" + names[j] + "'";
            switch (cfg.missing) {
                case MissingPolicy::Reject:
                    throw Error(ErrorCode::MissingValuePolicyViolation, where + ": missing value");
                case MissingPolicy::DropRow:
                    keep[r] = false;
                    break;
                case MissingPolicy::LinearInterpolate: {
                    std::size_t lo = r, hi = r;
                    while (lo > 0 && !cells[j][lo]) --lo;
                    while (hi + 1 < nrows && !cells[j][hi]) ++hi;
                    if (!cells[j][lo] || !cells[j][hi])
                        throw Error(ErrorCode::MissingValuePolicyViolation,
                                    where + ": cannot interpolate a leading or trailing hole");
                    const double w = static_cast<double>(r - lo) / static_cast<double>(hi - lo);
                    cells[j][r] = (1.0 - w) * *cells[j][lo] + w * *cells[j][hi];
                    ++prov.cells_interpolated;
                    break;
                }
            }
        }
    }

    std::size_t first_kept = nrows, last_kept = 0;
    for (std::size_t r = 0; r < nrows; ++r)
        if (keep[r]) {
            first_kept = std::min(first_kept, r);
            last_kept = r;
        }
    if (first_kept == nrows) throw Error(ErrorCode::MissingValuePolicyViolation, "every row was dropped");
    for (std::size_t r = first_kept; r <= last_kept; ++r)
        if (!keep[r])
            throw Error(ErrorCode::MissingValuePolicyViolation,
                        "row " + std::to_string(r + 2) + ": drop-row would open a gap inside the index");
    prov.rows_dropped = nrows - (last_kept - first_kept + 1);

    std::vector<Period> kept_index(index.begin() + static_cast<long>(first_kept),
                                   index.begin() + static_cast<long>(last_kept) + 1);
    std::vector<TimeSeries> series;
    std::map<std::string, Role> roles;
    const std::string dependent = cfg.dependent.empty() ? names.front() : cfg.dependent;
    if (std::find(names.begin(), names.end(), dependent) == names.end())
        throw Error(ErrorCode::ConfigError, "dependent column '" + dependent + "' is not a value column");
    for (std::size_t j = 0; j < cols.size(); ++j) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(kept_index.size()));
        for (std::size_t r = first_kept; r <= last_kept; ++r)
            v[static_cast<Eigen::Index>(r - first_kept)] = *cells[j][r];
        series.emplace_back(names[j], freq, kept_index, std::move(v));
        roles[names[j]] = names[j] == dependent ? Role::Dependent : Role::Regressor;
    }
    return Dataset(std::move(series), std::move(roles), std::move(prov));
}

std::string to_csv(const Dataset& data, const CsvConfig& cfg) {
    std::string out = cfg.date_column;
    for (const auto& s : data.series()) out += "," + s.name();
    out += "\n";
    for (Eigen::Index i = 0; i < data.length(); ++i) {
        out += format_period(data.index()[static_cast<std::size_t>(i)], cfg.date_format);
        for (const auto& s : data.series()) out += "," + format_double(s.values()[i]);
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

TimeSeries log_transform(const TimeSeries& s) {
    Eigen::VectorXd out(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (!(s.values()[i] > 0.0))
            throw Error(ErrorCode::NonPositiveValue,
                        "series '" + s.name() + "' has a non-positive value at position " + std::to_string(i));
        out[i] = std::log(s.values()[i]);
    }
    return TimeSeries("LN" + s.name(), s.frequency(), s.index(), std::move(out));
}

TimeSeries difference(const TimeSeries& s, int order) {
    if (order < 1) throw Error(ErrorCode::InvalidParameters, "difference order must be positive");
    if (s.size() <= order)
        throw Error(ErrorCode::SeriesTooShort, "series '" + s.name() + "' too short to difference " +
                                                   std::to_string(order) + " times");
    Eigen::VectorXd v = s.values();
    for (int d = 0; d < order; ++d) {
        const Eigen::Index m = v.size() - 1;
        v = (v.tail(m) - v.head(m)).eval();
    }
    std::vector<Period> idx(s.index().begin() + order, s.index().end());
    return TimeSeries(s.name(), s.frequency(), std::move(idx), std::move(v));
}

TimeSeries lag(const TimeSeries& s, int k) {
    if (k < 1) throw Error(ErrorCode::InvalidParameters, "lag must be positive");
    if (s.size() <= k)
        throw Error(ErrorCode::SeriesTooShort, "series '" + s.name() + "' too short to lag by " + std::to_string(k));
    const Eigen::Index m = s.size() - k;
    std::vector<Period> idx(s.index().begin() + k, s.index().end());
    return TimeSeries(s.name(), s.frequency(), std::move(idx), s.values().head(m));
}

}  // namespace cointkit
