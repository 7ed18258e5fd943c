#pragma once

#include <stdexcept>
#include <string>

namespace opent {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands have incompatible dimensions.
struct DimensionMismatch : Error {
    using Error::Error;
};

// A scalar (typically an eigenvalue) fell outside a function's domain.
struct DomainViolation : Error {
    double value = 0.0;
    double domain_lo = 0.0;
    double domain_hi = 0.0;

    explicit DomainViolation(const std::string& msg) : Error(msg) {}
    DomainViolation(const std::string& msg, double v, double lo, double hi)
        : Error(msg), value(v), domain_lo(lo), domain_hi(hi) {}
};

// A sampling interval is unusable (nonpositive lo, hi < lo, or too ill-conditioned).
struct InvalidSpectrum : Error {
    using Error::Error;
};

// A matrix required to be strictly positive has a nonpositive eigenvalue.
struct NotStrictlyPositive : Error {
    double min_eigenvalue = 0.0;

    explicit NotStrictlyPositive(const std::string& msg) : Error(msg) {}
    NotStrictlyPositive(const std::string& msg, double lambda_min)
        : Error(msg), min_eigenvalue(lambda_min) {}
};

// A numeric parameter is outside its admissible range.
struct ParameterOutOfRange : Error {
    using Error::Error;
};

// A bracketing scan found no sign change.
struct NoSignChange : Error {
    using Error::Error;
};

// A bracketing scan found more than one sign change.
struct MultipleSignChanges : Error {
    using Error::Error;
};

// T1'T1 + T2'T2 <= I failed beyond tolerance.
struct ContractionViolation : Error {
    double margin = 0.0;

    explicit ContractionViolation(const std::string& msg) : Error(msg) {}
    ContractionViolation(const std::string& msg, double m) : Error(msg), margin(m) {}
};

// h(t) <= 0 was encountered where a strictly positive h is required.
struct NonpositiveH : Error {
    double value = 0.0;

    explicit NonpositiveH(const std::string& msg) : Error(msg) {}
    NonpositiveH(const std::string& msg, double v) : Error(msg), value(v) {}
};

// A probe configuration does not fit inside the claimed function domain.
struct DomainMismatch : Error {
    using Error::Error;
};

// Malformed textual input (function spec, entropy spec, matrix JSON, claim id).
struct ParseError : Error {
    using Error::Error;
};

}  // namespace opent
