#pragma once

#include <stdexcept>
#include <string>

namespace tlsrand {

enum class ErrorCode {
    InvalidArgument,
    ConvergenceFailure,
    NotPositiveDefinite,
    NonGeneric,
    DegenerateV22,
    NonGenericTruncation,
    RankCollapse,
    BasisExhausted,
    SizeOverflow,
    ZeroSolution,
    ZeroResidual,
    FormulaMismatch,
    HypothesisViolated,
    UnknownProblem,
    BadSize,
    ParseError,
    IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace tlsrand
