#include "cointkit/critical_values.hpp"

#include "cointkit/error.hpp"
#include "embedded_tables.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace cointkit {

namespace {

std::vector<std::vector<std::string>> rows_of(std::string_view text, std::string_view table,
                                              std::size_t columns) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<std::string> row;
        for (std::string f; fields >> f;) row.push_back(f);
        if (row.empty()) continue;
        if (row.size() != columns)
            throw Error(ErrorCode::ParseError, std::string(table) + " line " + std::to_string(line_no) +
                                                   ": expected " + std::to_string(columns) + " fields");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorCode::ParseError, std::string(table) + ": table is empty");
    return rows;
}

double number(const std::string& s, std::string_view table) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v))
        throw Error(ErrorCode::ParseError, std::string(table) + ": bad number '" + s + "'");
    return v;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open critical-value table '" + p.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

CriticalValueTables CriticalValueTables::parse(std::string_view tau_text, std::string_view bounds_text,
                                               std::string_view cusumsq_text) {
    CriticalValueTables t;
    for (const auto& r : rows_of(tau_text, "mackinnon_tau", 6)) {
        auto spec = parse_deterministic(r[0]);
        auto level = parse_level(r[1]);
        if (!spec || !level) throw Error(ErrorCode::ParseError, "mackinnon_tau: bad key " + r[0] + " " + r[1]);
        t.tau[{*spec, *level}] = {number(r[2], "mackinnon_tau"), number(r[3], "mackinnon_tau"),
                                  number(r[4], "mackinnon_tau"), number(r[5], "mackinnon_tau")};
    }
    for (const auto& r : rows_of(bounds_text, "pss_bounds", 5)) {
        auto bc = parse_bounds_case(r[0]);
        if (!bc) throw Error(ErrorCode::ParseError, "pss_bounds: bad case " + r[0]);
        auto level = parse_level(r[2]);
        if (!level) continue;  // 2.5% rows
        const int k = static_cast<int>(number(r[1], "pss_bounds"));
        t.bounds[{*bc, k, *level}] = {number(r[3], "pss_bounds"), number(r[4], "pss_bounds")};
    }
    for (const auto& r : rows_of(cusumsq_text, "cusumsq_c0", 3)) {
        auto level = parse_level(r[1]);
        if (!level) throw Error(ErrorCode::ParseError, "cusumsq_c0: bad level " + r[1]);
        t.cusumsq[{static_cast<long>(number(r[0], "cusumsq_c0")), *level}] = number(r[2], "cusumsq_c0");
    }
    return t;
}

CriticalValueTables CriticalValueTables::from_directory(const std::filesystem::path& dir) {
    return parse(read_file(dir / "mackinnon_tau.txt"), read_file(dir / "pss_bounds.txt"),
                 read_file(dir / "cusumsq_c0.txt"));
}

CriticalValueTables CriticalValueTables::embedded() {
    return parse(detail::kEmbeddedMackinnonTau, detail::kEmbeddedPssBounds, detail::kEmbeddedCusumsq);
}

const CriticalValueTables& critical_value_tables() {
    static const CriticalValueTables tables = [] {
        if (const char* dir = std::getenv(kDataDirEnv); dir != nullptr && *dir != '\0')
            return CriticalValueTables::from_directory(dir);
        return CriticalValueTables::embedded();
    }();
    return tables;
}

std::map<Level, double> tau_critical_values(Deterministic spec, Eigen::Index nobs) {
    const auto& t = critical_value_tables();
    std::map<Level, double> out;
    for (Level l : kAllLevels) {
        auto it = t.tau.find({spec, l});
        if (it == t.tau.end())
            throw Error(ErrorCode::UnsupportedCase, "no tau surface for " + std::string(to_string(spec)));
        out[l] = it->second.at(static_cast<double>(nobs));
    }
    return out;
}

std::map<Level, Bounds> bounds_critical_values(BoundsCase bounds_case, int k) {
    const auto& t = critical_value_tables();
    std::map<Level, Bounds> out;
    for (Level l : kAllLevels) {
        auto it = t.bounds.find({bounds_case, k, l});
        if (it == t.bounds.end())
            throw Error(ErrorCode::UnsupportedCase, "no bounds tabulated for case " +
                                                        std::string(to_string(bounds_case)) + ", k=" +
                                                        std::to_string(k));
        out[l] = it->second;
    }
    return out;
}

double cusumsq_c0(Eigen::Index m, Level level) {
    const auto& table = critical_value_tables().cusumsq;
    std::vector<std::pair<long, double>> pts;
    for (const auto& [key, c0] : table)
        if (key.second == level) pts.emplace_back(key.first, c0);
    if (pts.empty()) throw Error(ErrorCode::UnsupportedCase, "no CUSUMSQ values for this level");
    const double dm = static_cast<double>(m);
    if (m <= pts.front().first) return pts.front().second;
    if (m >= pts.back().first)
        return pts.back().second * std::sqrt(static_cast<double>(pts.back().first) / dm);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (m <= pts[i].first) {
            const double m0 = static_cast<double>(pts[i - 1].first);
            const double m1 = static_cast<double>(pts[i].first);
            const double w = (dm - m0) / (m1 - m0);
            return (1.0 - w) * pts[i - 1].second + w * pts[i].second;
        }
    }
    return pts.back().second;
}

double cusum_line_coefficient(Level level) noexcept {
    switch (level) {
        case Level::One: return 1.143;
        case Level::Five: return 0.948;
        case Level::Ten: return 0.850;
    }
    return 0.948;
}

}  // namespace cointkit
