#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace cointkit {

/// Conventional significance levels used across every test in the library.
enum class Level { One, Five, Ten };

inline constexpr std::array<Level, 3> kAllLevels{Level::One, Level::Five, Level::Ten};

[[nodiscard]] constexpr double alpha_of(Level level) noexcept {
    switch (level) {
        case Level::One: return 0.01;
        case Level::Five: return 0.05;
        case Level::Ten: return 0.10;
    }
    return 0.05;
}

[[nodiscard]] constexpr std::string_view label_of(Level level) noexcept {
    switch (level) {
        case Level::One: return "1%";
        case Level::Five: return "5%";
        case Level::Ten: return "10%";
    }
    return "5%";
}

/// Parses "1%", "0.01", "5%", "0.05", "10%", "0.1", "0.10".
[[nodiscard]] std::optional<Level> parse_level(std::string_view text);

enum class Decision { Reject, FailToReject };

[[nodiscard]] constexpr std::string_view to_string(Decision d) noexcept {
    return d == Decision::Reject ? "reject" : "fail-to-reject";
}

/// Deterministic terms of a unit-root or ARDL regression.
enum class Deterministic { None, Constant, ConstantTrend };

[[nodiscard]] std::string_view to_string(Deterministic d) noexcept;
[[nodiscard]] std::optional<Deterministic> parse_deterministic(std::string_view text);

/// Bounds-test deterministic cases: II restricts the intercept into the
/// long-run relation, III leaves it unrestricted.
enum class BoundsCase { II, III };

[[nodiscard]] constexpr std::string_view to_string(BoundsCase c) noexcept {
    return c == BoundsCase::II ? "II" : "III";
}
[[nodiscard]] std::optional<BoundsCase> parse_bounds_case(std::string_view text);

enum class Criterion { AIC, SBC };

[[nodiscard]] constexpr std::string_view to_string(Criterion c) noexcept {
    return c == Criterion::AIC ? "AIC" : "SBC";
}
[[nodiscard]] std::optional<Criterion> parse_criterion(std::string_view text);

/// Star marks for the strongest rejection level: *** 1%, ** 5%, * 10%.
[[nodiscard]] std::string stars_for(const std::map<Level, bool>& rejected_at);

}  // namespace cointkit
