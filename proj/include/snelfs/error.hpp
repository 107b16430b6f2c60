#pragma once

#include <stdexcept>
#include <string>

namespace snelfs {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Incompatible matrix/vector dimensions.
class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& msg) : Error(msg) {}
};

/// Invalid user-supplied parameter (bad generator arguments, k > m, ...).
class ParamError : public Error {
public:
    explicit ParamError(const std::string& msg) : Error(msg) {}
};

/// Malformed input data: CSV parse failures, schema mismatches, label problems.
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

/// Internal numerical failure (non-finite values where finite ones are required).
class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

} // namespace snelfs
