#pragma once

#include <stdexcept>
#include <string>

namespace snc {

// Base of every error the engine raises. The C API maps each subclass onto a
// status code, so keep this hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ring/module mismatch, ill-defined morphism, malformed matrix shapes.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// A capped-precision computation was asked for digits it no longer has, or a
// gluing could not be verified before the precision cap was reached.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class NoStabilization : public Error {
 public:
  using Error::Error;
};

class ChainError : public Error {
 public:
  using Error::Error;
};

class CocycleInvalid : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace snc
