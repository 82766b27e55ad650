#include "cointkit/error.hpp"

namespace cointkit {

ErrorCategory category_of(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::FileNotFound:
        case ErrorCode::ParseError:
        case ErrorCode::NonMonotoneIndex:
        case ErrorCode::IndexGap:
        case ErrorCode::MissingValuePolicyViolation:
        case ErrorCode::NonPositiveValue:
        case ErrorCode::SeriesTooShort:
        case ErrorCode::SampleTooShort:
            return ErrorCategory::Data;
        case ErrorCode::InvalidParameters:
        case ErrorCode::ConfigError:
            return ErrorCategory::Config;
        case ErrorCode::I2VariablePresent:
            return ErrorCategory::Precondition;
        default:
            return ErrorCategory::Numerical;
    }
}

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::FileNotFound: return "FileNotFound";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NonMonotoneIndex: return "NonMonotoneIndex";
        case ErrorCode::IndexGap: return "IndexGap";
        case ErrorCode::MissingValuePolicyViolation: return "MissingValuePolicyViolation";
        case ErrorCode::NonPositiveValue: return "NonPositiveValue";
        case ErrorCode::SeriesTooShort: return "SeriesTooShort";
        case ErrorCode::SampleTooShort: return "SampleTooShort";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::RankDeficientPrefix: return "RankDeficientPrefix";
        case ErrorCode::UnknownCoefficient: return "UnknownCoefficient";
        case ErrorCode::DegenerateRestriction: return "DegenerateRestriction";
        case ErrorCode::PerfectFitDegenerate: return "PerfectFitDegenerate";
        case ErrorCode::BandwidthTooLarge: return "BandwidthTooLarge";
        case ErrorCode::AllZeroResiduals: return "AllZeroResiduals";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::ConstantFitted: return "ConstantFitted";
        case ErrorCode::DegenerateAdjustment: return "DegenerateAdjustment";
        case ErrorCode::UnsupportedCase: return "UnsupportedCase";
        case ErrorCode::InvalidParameters: return "InvalidParameters";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::I2VariablePresent: return "I2VariablePresent";
    }
    return "Unknown";
}

int exit_code_of(ErrorCategory category) noexcept {
    switch (category) {
        case ErrorCategory::Config: return 2;
        case ErrorCategory::Data: return 3;
        case ErrorCategory::Numerical: return 4;
        case ErrorCategory::Precondition: return 5;
    }
    return 1;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

Error Error::in_stage(std::string_view stage) const {
    Error wrapped(code_, "");
    static_cast<std::runtime_error&>(wrapped) =
        std::runtime_error("[" + std::string(stage) + "] " + what());
    return wrapped;
}

}  // namespace cointkit
