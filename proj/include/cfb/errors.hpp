#ifndef CFB_ERRORS_HPP
#define CFB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cfb {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// confocal
struct DegenerateCaustic : Error { using Error::Error; };
struct AudinViolation : Error { using Error::Error; };
struct DegeneratePoint : Error { using Error::Error; };

// series
struct NonPositiveConstantTerm : Error { using Error::Error; };
struct InsufficientOrder : Error { using Error::Error; };

// cayley
struct PeriodTooSmall : Error { using Error::Error; };
struct TypeMismatch : Error { using Error::Error; };

// extremal
struct NoSolution : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };
struct ComplexRoot : Error { using Error::Error; };

// billiard
struct OffBoundary : Error { using Error::Error; };
struct TangentLine : Error { using Error::Error; };
struct DegenerateLine : Error { using Error::Error; };
struct NoTangentDirection : Error { using Error::Error; };
struct AmbiguousEvent : Error { using Error::Error; };

// freqmap
struct SingularSystem : Error { using Error::Error; };

// cli
struct UsageError : Error { using Error::Error; };

} // namespace cfb

#endif
