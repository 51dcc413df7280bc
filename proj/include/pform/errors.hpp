#ifndef PFORM_ERRORS_HPP
#define PFORM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pform {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad generator/scenario parameters (e.g. torus(2,2)).
class InvalidParameterError : public Error {
public:
    using Error::Error;
};

// Degree index outside the complex's 0..n range.
class DegreeError : public Error {
public:
    using Error::Error;
};

// Nonpositive dual volume or singular mass matrix.
class MetricError : public Error {
public:
    using Error::Error;
};

// Operator shapes do not match during bundle assembly.
class AssemblyError : public Error {
public:
    using Error::Error;
};

// Eigensolver failure or other numerical breakdown.
class NumericalError : public Error {
public:
    using Error::Error;
};

// Phase-space data lives in the wrong spectral sector.
class SectorError : public Error {
public:
    using Error::Error;
};

// A chain that was required to be a cycle has nonzero boundary.
class CycleError : public Error {
public:
    using Error::Error;
};

// Vectors from incompatible scenarios / mismatched dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Malformed scenario or mesh file.
class ParseError : public Error {
public:
    using Error::Error;
};

// Scalar function not defined at a required eigenvalue.
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace pform

#endif
