#pragma once

#include <stdexcept>
#include <string>

namespace netgames {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside the domain accepted by an operation.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Input data (points, files, vectors) is malformed or degenerate.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A randomized generator exhausted its retry budget.
class GenerationFailure : public Error {
 public:
  using Error::Error;
};

/// Players could not be placed on the arena.
class InitializationError : public Error {
 public:
  using Error::Error;
};

/// An operation was called in a state its contract forbids.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A value fell outside the range covered by a histogram.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A similarity index is undefined for the given pair (e.g. both vectors zero).
class UndefinedSimilarity : public Error {
 public:
  using Error::Error;
};

}  // namespace netgames
