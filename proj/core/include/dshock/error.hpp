#ifndef DSHOCK_ERROR_HPP_
#define DSHOCK_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace dshock {

enum class Errc {
  kInvalidInput,
  kNotHyperbolic,
  kDegenerateJump,
  kDomainError,
  kNoBracket,
  kNoIntersection,
  kOrderingViolation,
  kRegimeError,
  kPrecondition,
  kQuadrature,
  kInstability,
  kParse,
};

std::string_view to_string(Errc code);

// Every failure raised by the library carries one of the codes above so that
// callers (and the CLI exit status) can tell e.g. a degenerate jump from a
// failed bracket search without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dshock

#endif  // DSHOCK_ERROR_HPP_
