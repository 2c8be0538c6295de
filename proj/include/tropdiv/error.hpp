#pragma once

#include <stdexcept>
#include <string>

namespace tropdiv {

/// Base for every error raised by the library. `kind()` names the failure
/// class so the CLI and tests can match on it without RTTI gymnastics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define TROPDIV_ERROR(Name)                                                   \
  class Name : public Error {                                                 \
   public:                                                                    \
    explicit Name(const std::string& what) : Error(#Name, what) {}            \
  };

TROPDIV_ERROR(DisconnectedGraph)
TROPDIV_ERROR(GraphMismatch)
TROPDIV_ERROR(EpsTooLarge)
TROPDIV_ERROR(NotEffectiveAwayFromQ)
TROPDIV_ERROR(InternalError)
TROPDIV_ERROR(NotASpanningTree)
TROPDIV_ERROR(LatticeMismatch)
TROPDIV_ERROR(UnsupportedSupport)
TROPDIV_ERROR(DisconnectedCover)
TROPDIV_ERROR(DegreeNonZero)
TROPDIV_ERROR(NotPrym)
TROPDIV_ERROR(NotAntiSymmetric)
TROPDIV_ERROR(WrongDegree)
TROPDIV_ERROR(GenericityFailure)
TROPDIV_ERROR(ParseError)
TROPDIV_ERROR(InvariantViolation)

#undef TROPDIV_ERROR

}  // namespace tropdiv
