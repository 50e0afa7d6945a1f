#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace supkit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
      : Error("parse error at " + std::to_string(pos) + ": " + msg), position(pos) {}
  std::size_t position;
};

struct UnknownSymbol : ParseError {
  using ParseError::ParseError;
};

struct ArityError : ParseError {
  using ParseError::ParseError;
};

struct SignatureError : Error {
  using Error::Error;
};

struct CaptureError : Error {
  using Error::Error;
};

struct NotBasic : Error {
  using Error::Error;
};

struct NotRestricted : Error {
  using Error::Error;
};

struct OracleRequired : Error {
  using Error::Error;
};

struct ResourceLimit : Error {
  using Error::Error;
};

struct EvalError : Error {
  using Error::Error;
};

struct ConstructionError : Error {
  using Error::Error;
};

}  // namespace supkit
