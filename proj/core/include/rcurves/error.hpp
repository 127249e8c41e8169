#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rcurves {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied malformed or out-of-contract input.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A byte stream could not be decoded. `offset` is a byte offset or a
/// 1-based row number, depending on the format.
class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : InvalidInput(what + " (at " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A decoded model is internally inconsistent.
class ValidationError : public InvalidInput {
 public:
  ValidationError(const std::string& what, std::size_t layer)
      : InvalidInput("layer " + std::to_string(layer) + ": " + what), layer_(layer) {}
  std::size_t layer() const noexcept { return layer_; }

 private:
  std::size_t layer_;
};

/// The input lies on a singular configuration (e.g. a point on the decision boundary).
class DegenerateInput : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Requested combination (norm, dimension) is not provided.
class Unsupported : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A curve was queried beyond the range over which it is meaningful.
class HorizonError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

}  // namespace rcurves
