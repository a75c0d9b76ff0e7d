#pragma once

#include <stdexcept>
#include <string>

namespace anchorsr {

/// Caller passed arguments that violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data is missing, unreadable or too small to do the requested work.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A serialized file has the wrong magic, version or layout.
class FormatError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace anchorsr
