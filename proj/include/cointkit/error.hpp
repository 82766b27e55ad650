#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cointkit {

/// Failure modes raised by the library. Each maps onto one ErrorCategory.
enum class ErrorCode {
    // input data
    FileNotFound,
    ParseError,
    NonMonotoneIndex,
    IndexGap,
    MissingValuePolicyViolation,
    NonPositiveValue,
    SeriesTooShort,
    SampleTooShort,
    // numerical / degeneracy
    DimensionMismatch,
    RankDeficient,
    RankDeficientPrefix,
    UnknownCoefficient,
    DegenerateRestriction,
    PerfectFitDegenerate,
    BandwidthTooLarge,
    AllZeroResiduals,
    ZeroVariance,
    ConstantFitted,
    DegenerateAdjustment,
    UnsupportedCase,
    // configuration
    InvalidParameters,
    ConfigError,
    // pipeline precondition
    I2VariablePresent,
};

enum class ErrorCategory { Config, Data, Numerical, Precondition };

[[nodiscard]] ErrorCategory category_of(ErrorCode code) noexcept;
[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Process exit code used by the CLI for an error category
/// (2 config, 3 data, 4 numerical, 5 precondition).
[[nodiscard]] int exit_code_of(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] ErrorCategory category() const noexcept { return category_of(code_); }

    /// Same error with "[stage] " prepended to the message.
    [[nodiscard]] Error in_stage(std::string_view stage) const;

private:
    ErrorCode code_;
};

}  // namespace cointkit
