#pragma once

#include "cointkit/pipeline.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace cointkit {

inline constexpr const char* kReportSchema = "cointkit.report/1";

enum class ReportFormat { Json, Text };

[[nodiscard]] std::optional<ReportFormat> parse_report_format(std::string_view text);

/// Schema-versioned JSON with fixed key order. Non-finite numbers become null.
[[nodiscard]] std::string render_json(const AnalysisReport& r);

/// Aligned plain-text tables rendered from a JSON report document.
/// Throws ParseError when the document is not a cointkit report.
[[nodiscard]] std::string render_text_from_json(std::string_view json);

[[nodiscard]] std::string render_report(const AnalysisReport& r, ReportFormat fmt);

}  // namespace cointkit
