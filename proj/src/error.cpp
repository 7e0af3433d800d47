#include "bfree/error.hpp"

namespace bfree {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySpec: return "EmptySpec";
    case ErrorCode::RepeatedOrUnordered: return "RepeatedOrUnordered";
    case ErrorCode::ContainsOne: return "ContainsOne";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::GeneratorMismatch: return "GeneratorMismatch";
    case ErrorCode::ModuliNotCoprime: return "ModuliNotCoprime";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NotFoundInTruncation: return "NotFoundInTruncation";
    case ErrorCode::LengthTooLarge: return "LengthTooLarge";
    case ErrorCode::WindowTooShort: return "WindowTooShort";
    case ErrorCode::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorCode::DegenerateCase: return "DegenerateCase";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::TruncationInadequate: return "TruncationInadequate";
    case ErrorCode::OddTranslation: return "OddTranslation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace bfree
