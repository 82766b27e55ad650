#include "cointkit/types.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace cointkit {

namespace {

std::string lowered(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::optional<Level> parse_level(std::string_view text) {
    const std::string t = lowered(text);
    if (t == "1%" || t == "0.01") return Level::One;
    if (t == "5%" || t == "0.05") return Level::Five;
    if (t == "10%" || t == "0.1" || t == "0.10") return Level::Ten;
    return std::nullopt;
}

std::string_view to_string(Deterministic d) noexcept {
    switch (d) {
        case Deterministic::None: return "none";
        case Deterministic::Constant: return "constant";
        case Deterministic::ConstantTrend: return "constant_and_trend";
    }
    return "constant";
}

std::optional<Deterministic> parse_deterministic(std::string_view text) {
    const std::string t = lowered(text);
    if (t == "none" || t == "n" || t == "nc") return Deterministic::None;
    if (t == "constant" || t == "c") return Deterministic::Constant;
    if (t == "constant_and_trend" || t == "ct" || t == "trend") return Deterministic::ConstantTrend;
    return std::nullopt;
}

std::optional<Criterion> parse_criterion(std::string_view text) {
    const std::string t = lowered(text);
    if (t == "aic") return Criterion::AIC;
    if (t == "sbc" || t == "bic" || t == "sic") return Criterion::SBC;
    return std::nullopt;
}

std::optional<BoundsCase> parse_bounds_case(std::string_view text) {
    const std::string t = lowered(text);
    if (t == "ii" || t == "2") return BoundsCase::II;
    if (t == "iii" || t == "3") return BoundsCase::III;
    return std::nullopt;
}

std::string stars_for(const std::map<Level, bool>& rejected_at) {
    auto at = [&](Level l) {
        auto it = rejected_at.find(l);
        return it != rejected_at.end() && it->second;
    };
    if (at(Level::One)) return "***";
    if (at(Level::Five)) return "**";
    if (at(Level::Ten)) return "*";
    return "";
}

}  // namespace cointkit
