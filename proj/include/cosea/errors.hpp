#pragma once

#include <stdexcept>
#include <string>

namespace cosea {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Tensor dimension mismatch; message names the offending shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration value (even kernel size, bad split ratio, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A sequence with no valid tokens where at least one is required.
class EmptySequenceError : public Error {
 public:
  using Error::Error;
};

// Zero-norm vector fed to a similarity that requires a direction.
class DegenerateVectorError : public Error {
 public:
  using Error::Error;
};

// Non-finite value produced by an operation or a diverging training run.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Malformed input text; message carries the line number.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Bad magic or unsupported version in a binary file.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Truncated or damaged binary payload; message carries the byte offset.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

// Evaluation-protocol requirement cannot be met (e.g. too few candidates).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Index was built from a different checkpoint than the one in use.
class StalenessError : public Error {
 public:
  using Error::Error;
};

}  // namespace cosea
