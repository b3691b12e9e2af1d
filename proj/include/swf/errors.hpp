#pragma once

#include <stdexcept>
#include <string>

namespace swf {

// Base of every library error. exit_code() is the CLI status the error maps to.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual int exit_code() const = 0;
    virtual const char* kind() const = 0;
};

#define SWF_DEFINE_ERROR(Name, code, label)                              \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& what) : Error(what) {}          \
        int exit_code() const override { return code; }                  \
        const char* kind() const override { return label; }              \
    };

// malformed input
SWF_DEFINE_ERROR(ParseError, 2, "parse error")
SWF_DEFINE_ERROR(ConstraintError, 2, "constraint error")
SWF_DEFINE_ERROR(IndexConstraintError, 2, "index-constraint error")
SWF_DEFINE_ERROR(NonCycleError, 2, "non-cycle error")
SWF_DEFINE_ERROR(DegenerateModelError, 2, "degenerate-model error")

// inputs that parse but fail a checked identity
SWF_DEFINE_ERROR(AdmissibilityError, 1, "admissibility error")
SWF_DEFINE_ERROR(SquareNonzeroError, 1, "square-nonzero error")
SWF_DEFINE_ERROR(NonExactnessError, 1, "non-exactness error")
SWF_DEFINE_ERROR(ExactnessFailureError, 1, "exactness-failure error")

// computations that cannot complete
SWF_DEFINE_ERROR(NonTerminationError, 3, "non-termination error")
SWF_DEFINE_ERROR(UncertifiedRangeError, 3, "uncertified-range error")
SWF_DEFINE_ERROR(NoTailError, 3, "no-tail error")
SWF_DEFINE_ERROR(EndpointOnWallError, 3, "endpoint-on-wall error")
SWF_DEFINE_ERROR(ResolutionError, 3, "resolution error")
SWF_DEFINE_ERROR(GenerationFailure, 3, "generation failure")

#undef SWF_DEFINE_ERROR

}  // namespace swf
