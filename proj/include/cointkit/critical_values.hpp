#pragma once

#include "cointkit/types.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <tuple>

namespace cointkit {

struct TauSurface {
    double tau_inf = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;

    [[nodiscard]] double at(double nobs) const noexcept {
        return tau_inf + b1 / nobs + b2 / (nobs * nobs) + b3 / (nobs * nobs * nobs);
    }
};

struct Bounds {
    double lower = 0.0;  ///< I(0) bound
    double upper = 0.0;  ///< I(1) bound
};

/// The three plain-text critical-value tables shipped under data/.
/// Format: '#' comments, then whitespace-separated rows (see data/README.md).
struct CriticalValueTables {
    std::map<std::pair<Deterministic, Level>, TauSurface> tau;
    std::map<std::tuple<BoundsCase, int, Level>, Bounds> bounds;
    /// (m, level) -> c0, m ascending.
    std::map<std::pair<long, Level>, double> cusumsq;

    [[nodiscard]] static CriticalValueTables parse(std::string_view tau_text, std::string_view bounds_text,
                                                   std::string_view cusumsq_text);
    [[nodiscard]] static CriticalValueTables from_directory(const std::filesystem::path& dir);
    [[nodiscard]] static CriticalValueTables embedded();
};

/// Environment variable naming a directory that overrides the compiled-in tables.
inline constexpr const char* kDataDirEnv = "COINTKIT_DATA_DIR";

/// Tables used by the library: loaded once from $COINTKIT_DATA_DIR when set,
/// otherwise the copies embedded at build time.
[[nodiscard]] const CriticalValueTables& critical_value_tables();

/// Response-surface tau critical values at the given regression sample size.
[[nodiscard]] std::map<Level, double> tau_critical_values(Deterministic spec, Eigen::Index nobs);

/// Lower/upper bounds for k long-run forcing regressors. Throws UnsupportedCase
/// when (case, k) is not tabulated.
[[nodiscard]] std::map<Level, Bounds> bounds_critical_values(BoundsCase bounds_case, int k);

/// Half-width of the CUSUM-of-squares band for m recursive residuals. Linear
/// interpolation in m; sqrt(m_max/m) scaling beyond the table.
[[nodiscard]] double cusumsq_c0(Eigen::Index m, Level level);

/// Brown-Durbin-Evans CUSUM line coefficient a (0.850, 0.948, 1.143).
[[nodiscard]] double cusum_line_coefficient(Level level) noexcept;

}  // namespace cointkit
