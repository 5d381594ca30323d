#ifndef ORLICZ_ERRORS_HPP
#define ORLICZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace orlicz {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : Error { using Error::Error; };
struct ExprParseError : ConfigError { using ConfigError::ConfigError; };

struct NotAdmissible : Error { using Error::Error; };
struct NonPositiveDerivative : Error { using Error::Error; };
struct ConjugateBracketFailure : Error { using Error::Error; };

struct ComponentGapTooLarge : Error { using Error::Error; };
struct KernelLowerBoundViolated : Error { using Error::Error; };
struct NonFiniteIntegrand : Error { using Error::Error; };
struct MollifierTooWide : Error { using Error::Error; };

struct BracketExpansionFailure : Error { using Error::Error; };
struct DegenerateSample : Error { using Error::Error; };

struct LineSearchStalled : Error { using Error::Error; };
struct ZeroDenominator : Error { using Error::Error; };

struct LadderTooShort : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace orlicz

#endif
