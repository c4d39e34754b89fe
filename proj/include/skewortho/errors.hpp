#pragma once

#include <stdexcept>
#include <string>

namespace skewortho {

// Each failure class maps to one error kind named in the module contracts.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParameterDomainError : Error { using Error::Error; };
struct OrderRangeError : Error { using Error::Error; };
struct ConfigurationError : Error { using Error::Error; };
struct EvaluationError : Error { using Error::Error; };
struct IntegrationError : Error { using Error::Error; };
struct BoundaryError : Error { using Error::Error; };
struct DegeneratePointError : Error { using Error::Error; };
struct SingularDenominatorError : Error { using Error::Error; };
struct ValidityWindowError : Error { using Error::Error; };
struct TuningError : Error { using Error::Error; };
struct ConventionError : Error { using Error::Error; };

}  // namespace skewortho
