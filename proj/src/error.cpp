#include "grw/error.hpp"

namespace grw {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::GenerationFailure: return "generation-failure";
    case ErrorCode::NotEulerian: return "not-eulerian";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::NoMove: return "no-move";
    case ErrorCode::NeverEscapes: return "never-escapes";
    case ErrorCode::StateSpaceExceeded: return "state-space-exceeded";
    case ErrorCode::Validation: return "validation-error";
    case ErrorCode::CouplingViolation: return "coupling-violation";
  }
  return "unknown-error";
}

}  // namespace grw
