#pragma once

#include <stdexcept>
#include <string>

namespace hankel {

// Every failure raised by the library derives from Error; the concrete
// type names the contract that was broken.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define HANKEL_DEFINE_ERROR(Name)                                              \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string &what) : Error(#Name ": " + what) {}      \
  };

HANKEL_DEFINE_ERROR(SelfAdjointnessViolation)
HANKEL_DEFINE_ERROR(DuplicateLocation)
HANKEL_DEFINE_ERROR(NonPositiveBeta0)
HANKEL_DEFINE_ERROR(EvaluationAtJump)
HANKEL_DEFINE_ERROR(QuadratureNonConvergence)
HANKEL_DEFINE_ERROR(AlphaOutOfRange)
HANKEL_DEFINE_ERROR(InvalidPreset)
HANKEL_DEFINE_ERROR(DuplicateFrequency)
HANKEL_DEFINE_ERROR(InsufficientCoefficients)
HANKEL_DEFINE_ERROR(NonConvergence)
HANKEL_DEFINE_ERROR(SingularShift)
HANKEL_DEFINE_ERROR(ConfigParseError)
HANKEL_DEFINE_ERROR(ValidationError)

#undef HANKEL_DEFINE_ERROR

} // namespace hankel
