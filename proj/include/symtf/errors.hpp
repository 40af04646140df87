#pragma once

#include <stdexcept>
#include <string>

namespace symtf {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define SYMTF_DEFINE_ERROR(NAME)                                        \
    struct NAME : Error {                                               \
        explicit NAME(const std::string& msg) : Error(#NAME ": " + msg) {} \
    }

SYMTF_DEFINE_ERROR(BadShape);
SYMTF_DEFINE_ERROR(NotSymmetric);
SYMTF_DEFINE_ERROR(NotSymplectic);
SYMTF_DEFINE_ERROR(SingularL);
SYMTF_DEFINE_ERROR(SingularM);
SYMTF_DEFINE_ERROR(SingularC12);
SYMTF_DEFINE_ERROR(NotFree);
SYMTF_DEFINE_ERROR(NoStrategy);
SYMTF_DEFINE_ERROR(GridNotSelfDual);
SYMTF_DEFINE_ERROR(GridMismatch);
SYMTF_DEFINE_ERROR(UnknownDescriptor);
SYMTF_DEFINE_ERROR(ZeroWindow);
SYMTF_DEFINE_ERROR(DegeneratePair);
SYMTF_DEFINE_ERROR(ValidationError);
SYMTF_DEFINE_ERROR(NumericalError);

#undef SYMTF_DEFINE_ERROR

} // namespace symtf
