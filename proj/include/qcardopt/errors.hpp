#pragma once

#include <stdexcept>
#include <string>

namespace qcardopt {

// Common base so callers can catch everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define QCARDOPT_DEFINE_ERROR(NAME)                          \
    struct NAME : Error {                                    \
        explicit NAME(const std::string& msg) : Error(msg) {} \
    }

QCARDOPT_DEFINE_ERROR(IndexOutOfRange);
QCARDOPT_DEFINE_ERROR(ControlTargetOverlap);
QCARDOPT_DEFINE_ERROR(InvalidIndices);
QCARDOPT_DEFINE_ERROR(CardinalityOutOfRange);
QCARDOPT_DEFINE_ERROR(RangeViolation);
QCARDOPT_DEFINE_ERROR(OverflowError);
QCARDOPT_DEFINE_ERROR(DimensionMismatch);
QCARDOPT_DEFINE_ERROR(TooLarge);
QCARDOPT_DEFINE_ERROR(InvalidCounts);
QCARDOPT_DEFINE_ERROR(InvalidTolerance);
QCARDOPT_DEFINE_ERROR(UnsupportedDegree);
QCARDOPT_DEFINE_ERROR(NotSquare);
QCARDOPT_DEFINE_ERROR(SingularSystem);
QCARDOPT_DEFINE_ERROR(ValidationError);
QCARDOPT_DEFINE_ERROR(ParseError);
QCARDOPT_DEFINE_ERROR(FileNotFound);

#undef QCARDOPT_DEFINE_ERROR

}  // namespace qcardopt
