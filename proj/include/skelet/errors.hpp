#pragma once

#include <stdexcept>
#include <string>

namespace skelet {

enum class ErrorCode {
    // input validation
    NotSimplicial,
    GapOrOverlap,
    NotStarShaped,
    OriginMissing,
    DegenerateHeights,
    PointOutsideSupport,
    SimplexContainsOrigin,
    NotAFace,
    PointOutsideCone,
    NotFullDimensional,
    CertificateMismatch,
    SignConditionViolated,
    SupportMismatch,
    MissingHyperplane,
    DimensionTooHigh,
    ParseError,
    // assumption violations (quotient model preconditions)
    AssumptionViolation,
    // resource caps
    RankCapExceeded,
    DimensionCapExceeded,
    CellularizationDidNotStabilize,
    // internal invariant breaches
    NotAComplex,
    NonCellularIdentification,
    InternalInvariant,
};

const char* error_code_name(ErrorCode c);

// exit-code class per the CLI contract: 2 validation, 3 assumption, 4 cap, 5 internal
int error_exit_code(ErrorCode c);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

// internal consistency checks that should be impossible to trip from user input
inline void require_internal(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::InternalInvariant, what);
}

}  // namespace skelet
