#pragma once

#include <stdexcept>
#include <string>

namespace superopt {

/// Base class for all library errors. Every failure mode documented on an
/// operation has its own type so callers can dispatch on it.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// ring
struct DegenerateInput : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };
struct Asymmetric : Error { using Error::Error; };
struct BoundaryRoot : Error { using Error::Error; };
struct NearZeroOnCircle : Error { using Error::Error; };
struct DenominatorNearCircle : Error { using Error::Error; };

// matfun
struct GridTooSmall : Error { using Error::Error; };

// hankel_ops
struct ZeroOperator : Error { using Error::Error; };
struct Unstable : Error { using Error::Error; };
struct NearSingularSymbol : Error { using Error::Error; };

// thematic
struct UnsupportedCompletion : Error { using Error::Error; };
struct ReductionFailed : Error { using Error::Error; };

// interpolant
struct NormNotBelowOne : Error { using Error::Error; };
struct BracketFailed : Error { using Error::Error; };
struct UnexpectedIndex : Error { using Error::Error; };

class NormTooLarge : public Error {
public:
    NormTooLarge(const std::string& what, double measured)
        : Error(what), measured_norm(measured) {}
    double measured_norm;
};

struct WrongTailLength : Error { using Error::Error; };

// wh_index
struct NotUnitary : Error { using Error::Error; };

// cli / file format
struct ParseError : Error { using Error::Error; };
struct DiskZeroDenominator : ParseError { using ParseError::ParseError; };

} // namespace superopt
