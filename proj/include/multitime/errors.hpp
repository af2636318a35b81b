#pragma once

#include <stdexcept>
#include <string>

namespace multitime {

// Every error raised by the library derives from Error. The CLI maps the
// three families below onto its exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: files, literals, argument shapes.
class InputError : public Error {
public:
    using Error::Error;
};

// Boundary families disagree where their hyperplanes meet.
class IncompatibleBoundary : public Error {
public:
    using Error::Error;
};

// Anything that goes wrong while computing.
class NumericError : public Error {
public:
    using Error::Error;
};

#define MULTITIME_DEFINE_ERROR(Name, Base) \
    class Name : public Base {             \
    public:                                \
        using Base::Base;                  \
    }

MULTITIME_DEFINE_ERROR(ParseError, InputError);
MULTITIME_DEFINE_ERROR(DimensionMismatch, InputError);
MULTITIME_DEFINE_ERROR(NegativeIndex, InputError);
MULTITIME_DEFINE_ERROR(OutOfWindow, InputError);
MULTITIME_DEFINE_ERROR(OutOfRange, InputError);
MULTITIME_DEFINE_ERROR(ZeroVector, InputError);
MULTITIME_DEFINE_ERROR(InsufficientLayers, InputError);

MULTITIME_DEFINE_ERROR(NonFiniteValue, NumericError);
MULTITIME_DEFINE_ERROR(NotASolution, NumericError);
MULTITIME_DEFINE_ERROR(NotDiagonalConstant, NumericError);
MULTITIME_DEFINE_ERROR(NotIdempotentPower, NumericError);
MULTITIME_DEFINE_ERROR(UnsupportedMatrix, NumericError);
MULTITIME_DEFINE_ERROR(NotDiagonalizable, NumericError);
MULTITIME_DEFINE_ERROR(NegativePower, NumericError);
MULTITIME_DEFINE_ERROR(InvertibilityError, NumericError);
MULTITIME_DEFINE_ERROR(DegenerateCell, NumericError);

#undef MULTITIME_DEFINE_ERROR

}  // namespace multitime
