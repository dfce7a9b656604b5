#pragma once

#include <stdexcept>
#include <string>

namespace poslab {

// Config-class errors map to CLI exit code 2, numeric-class to 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class UnsupportedType : public ConfigError {
 public:
  explicit UnsupportedType(const std::string& tag) : ConfigError("unsupported root system type: " + tag) {}
};

class InvalidArgument : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class NotReduced : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class SyntaxError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class MinusSignRejected : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class UnknownVariable : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class ZeroMinor : public NumericError {
 public:
  using NumericError::NumericError;
};

class NotInCell : public NumericError {
 public:
  using NumericError::NumericError;
};

class NoConvergence : public NumericError {
 public:
  using NumericError::NumericError;
};

class NumericOverflow : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace poslab
