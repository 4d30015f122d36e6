#include "ordervc/error.hpp"

namespace ordervc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kCyclicInput: return "CyclicInput";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kNotAMember: return "NotAMember";
    case ErrorCode::kTooSmall: return "TooSmall";
    case ErrorCode::kNotShattered: return "NotShattered";
    case ErrorCode::kNoContradictionEdge: return "NoContradictionEdge";
    case ErrorCode::kStrategyFailure: return "StrategyFailure";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace ordervc
