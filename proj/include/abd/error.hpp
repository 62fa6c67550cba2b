#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace abd {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed instance text. line() is 1-based, 0 when unknown (JSON input).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a semantic constraint (M and H overlap,
// hypothesis outside H, non-Horn reduct handed to a Horn routine, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class BackdoorError : public Error {
 public:
  using Error::Error;
};

// A configured size bound (oracle |V|, backdoor |B|, closure size) was hit.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  enum class Kind { NotFound, Crashed, MalformedOutput, BadModel };
  SolverError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace abd
