#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace propint {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial text; offset is the byte position of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// A mathematical precondition failed (improper intersection, ideal not
/// zero-dimensional, component resolution impossible, ...).
class MathError : public Error {
 public:
  using Error::Error;
};

/// The reduction-step budget ran out.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Invalid job file or argument shape.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace propint
