#pragma once

#include <stdexcept>
#include <string>

namespace stirling {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed tree, family or cell text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid input (cycle, disconnected graph, overlapping parts).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the range where a formula or operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (cell count, SNF size) was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace stirling
