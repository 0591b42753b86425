#pragma once

#include <stdexcept>
#include <string>

namespace parashift {

// Base for all library errors. name() is the stable identifier printed by the
// CLI on stderr; what() carries the human-readable detail.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual const char* name() const noexcept { return "Error"; }
};

#define PARASHIFT_DEFINE_ERROR(ErrorType)                                  \
    class ErrorType : public Error {                                       \
    public:                                                                \
        explicit ErrorType(const std::string& msg) : Error(msg) {}         \
        const char* name() const noexcept override { return #ErrorType; }  \
    }

PARASHIFT_DEFINE_ERROR(ValidationError);
PARASHIFT_DEFINE_ERROR(DomainError);
PARASHIFT_DEFINE_ERROR(UndefinedMoment);
PARASHIFT_DEFINE_ERROR(QuadratureFailure);
PARASHIFT_DEFINE_ERROR(NumericalBreakdown);
PARASHIFT_DEFINE_ERROR(Overflow);
PARASHIFT_DEFINE_ERROR(InsufficientOrbit);
PARASHIFT_DEFINE_ERROR(NotFiniteShift);
PARASHIFT_DEFINE_ERROR(ParseError);

#undef PARASHIFT_DEFINE_ERROR

}  // namespace parashift
