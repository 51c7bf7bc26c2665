#pragma once

#include <stdexcept>
#include <string>

namespace emforms {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live on different charts.
class ChartMismatch : public Error {
public:
    using Error::Error;
};

/// Operand grades are incompatible with the requested operation.
class GradeError : public Error {
public:
    using Error::Error;
};

/// An event lies outside the region where a field is defined
/// (r <= 0, at or beyond the light cylinder, sqrt of a negative, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class DegenerateMetric : public Error {
public:
    using Error::Error;
};

/// Vector fields, interfaces or decompositions that violate a precondition
/// (non-transverse inputs, null interface normals, samples off Phi = 0).
class GeometryError : public Error {
public:
    using Error::Error;
};

class MatchingError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace emforms
