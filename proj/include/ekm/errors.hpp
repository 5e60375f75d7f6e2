#ifndef EKM_ERRORS_HPP
#define EKM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ekm {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Contract violations raised by polynomial algebra.
struct DivisionNotExact : Error { using Error::Error; };
struct ZeroGcd          : Error { using Error::Error; };
struct ZeroPolynomial   : Error { using Error::Error; };

// Raised when an internal cross-check fails; always indicates a bug.
struct SingularSystem   : Error { using Error::Error; };
struct InternalMismatch : Error { using Error::Error; };
struct DeflationFailed  : Error { using Error::Error; };
struct TheoremViolated  : Error { using Error::Error; };

// Domain errors on user-facing operations.
struct PoleAtQuery        : Error { using Error::Error; };
struct OutOfRange         : Error { using Error::Error; };
struct ConstraintViolated : Error { using Error::Error; };
struct NoIntersectionFound: Error { using Error::Error; };
struct NonpositiveU       : Error { using Error::Error; };
struct NotBoundedBelow    : Error { using Error::Error; };
struct ParseError         : Error { using Error::Error; };

} // namespace ekm

#endif
