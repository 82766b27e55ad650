#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cointkit {

enum class Frequency { Monthly, Quarterly, Annual };

[[nodiscard]] int periods_per_year(Frequency f) noexcept;

/// A period stamp stored as (year, sub-period) so gap detection is integer
/// arithmetic. sub is 1..12 (monthly), 1..4 (quarterly) or 1 (annual).
struct Period {
    int year = 0;
    int sub = 1;

    [[nodiscard]] long ordinal(Frequency f) const noexcept {
        return static_cast<long>(year) * periods_per_year(f) + (sub - 1);
    }
    [[nodiscard]] Period next(Frequency f) const noexcept;

    friend bool operator==(const Period&, const Period&) = default;
    friend auto operator<=>(const Period&, const Period&) = default;
};

/// Supported textual date layouts. Each implies a frequency.
enum class DateFormat { YearMonth, YearSlashMonth, MonthSlashYear, YearQuarter, Year };

[[nodiscard]] std::optional<DateFormat> parse_date_format(std::string_view text);
[[nodiscard]] std::string_view to_string(DateFormat f) noexcept;
[[nodiscard]] Frequency frequency_of(DateFormat f) noexcept;
[[nodiscard]] std::optional<Period> parse_period(std::string_view text, DateFormat f);
[[nodiscard]] std::string format_period(const Period& p, DateFormat f);

/// Named, gap-free, finite observation vector on a regular calendar index.
class TimeSeries {
public:
    /// Validates: equal lengths, strictly increasing gap-free index, finite values.
    TimeSeries(std::string name, Frequency frequency, std::vector<Period> index,
               Eigen::VectorXd values);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] Frequency frequency() const noexcept { return frequency_; }
    [[nodiscard]] const std::vector<Period>& index() const noexcept { return index_; }
    [[nodiscard]] const Eigen::VectorXd& values() const noexcept { return values_; }
    [[nodiscard]] Eigen::Index size() const noexcept { return values_.size(); }

    [[nodiscard]] TimeSeries renamed(std::string name) const;
    /// Observations whose stamps lie in [first, last].
    [[nodiscard]] TimeSeries slice(const Period& first, const Period& last) const;

private:
    std::string name_;
    Frequency frequency_;
    std::vector<Period> index_;
    Eigen::VectorXd values_;
};

enum class Role { Dependent, Regressor };
enum class MissingPolicy { Reject, DropRow, LinearInterpolate };

[[nodiscard]] std::optional<MissingPolicy> parse_missing_policy(std::string_view text);
[[nodiscard]] std::string_view to_string(MissingPolicy p) noexcept;

struct Provenance {
    std::string source;
    std::size_t rows_read = 0;
    std::size_t rows_dropped = 0;
    std::size_t cells_interpolated = 0;
    MissingPolicy policy = MissingPolicy::Reject;
};

/// Series sharing one index, with exactly one dependent series.
class Dataset {
public:
    Dataset(std::vector<TimeSeries> series, std::map<std::string, Role> roles,
            std::optional<Provenance> provenance = std::nullopt);

    [[nodiscard]] const std::vector<TimeSeries>& series() const noexcept { return series_; }
    [[nodiscard]] const TimeSeries& get(std::string_view name) const;
    [[nodiscard]] bool contains(std::string_view name) const noexcept;
    [[nodiscard]] const std::map<std::string, Role>& roles() const noexcept { return roles_; }
    [[nodiscard]] const std::string& dependent() const;
    [[nodiscard]] std::vector<std::string> regressors() const;
    [[nodiscard]] const std::vector<Period>& index() const noexcept { return series_.front().index(); }
    [[nodiscard]] Frequency frequency() const noexcept { return series_.front().frequency(); }
    [[nodiscard]] Eigen::Index length() const noexcept { return series_.front().size(); }
    [[nodiscard]] const std::optional<Provenance>& provenance() const noexcept { return provenance_; }

    /// Columns in series order; rows follow the shared index.
    [[nodiscard]] Eigen::MatrixXd matrix() const;

private:
    std::vector<TimeSeries> series_;
    std::map<std::string, Role> roles_;
    std::optional<Provenance> provenance_;
};

/// Restricts every series to the intersection of their indices and wraps them
/// as a Dataset. The dependent series is named explicitly.
[[nodiscard]] Dataset align(const std::vector<TimeSeries>& series, const std::string& dependent);

struct CsvConfig {
    std::string date_column = "date";
    DateFormat date_format = DateFormat::YearMonth;
    /// Empty: every non-date column.
    std::vector<std::string> value_columns;
    /// Empty: first value column.
    std::string dependent;
    MissingPolicy missing = MissingPolicy::Reject;
};

[[nodiscard]] Dataset load_csv(const std::filesystem::path& path, const CsvConfig& cfg);
[[nodiscard]] Dataset parse_csv(std::string_view text, const CsvConfig& cfg,
                                std::string source = "<memory>");
/// Shortest round-trip decimal representation for every value.
[[nodiscard]] std::string to_csv(const Dataset& data, const CsvConfig& cfg);

[[nodiscard]] TimeSeries log_transform(const TimeSeries& s);
[[nodiscard]] TimeSeries difference(const TimeSeries& s, int order = 1);
[[nodiscard]] TimeSeries lag(const TimeSeries& s, int k);

}  // namespace cointkit
