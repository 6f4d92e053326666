#include "dshock/error.hpp"

namespace dshock {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::kInvalidInput: return "InvalidInput";
    case Errc::kNotHyperbolic: return "NotHyperbolic";
    case Errc::kDegenerateJump: return "DegenerateJump";
    case Errc::kDomainError: return "DomainError";
    case Errc::kNoBracket: return "NoBracket";
    case Errc::kNoIntersection: return "NoIntersection";
    case Errc::kOrderingViolation: return "OrderingViolation";
    case Errc::kRegimeError: return "RegimeError";
    case Errc::kPrecondition: return "PreconditionViolation";
    case Errc::kQuadrature: return "QuadratureError";
    case Errc::kInstability: return "Instability";
    case Errc::kParse: return "ParseError";
  }
  return "Unknown";
}

}  // namespace dshock
