#pragma once

#include <stdexcept>
#include <string>

namespace yamabe {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Dimension constraints violated (m < 2, n < 1, d < 3, ...).
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Operation applied to a Euclidean grid variant that does not support it.
class UnsupportedGridError : public Error {
  public:
    using Error::Error;
};

/// A polarization would have to place a nonzero value outside the grid.
class ReflectionOutOfDomainError : public Error {
  public:
    using Error::Error;
};

/// Shooting sweep found no sign change to bracket the ground state.
class BracketFailureError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

/// Field file violates the schema (bad header, negative value, wrong cell count).
class FormatError : public Error {
  public:
    using Error::Error;
};

} // namespace yamabe
