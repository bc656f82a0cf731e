#pragma once

#include <stdexcept>
#include <string>

namespace swarmcongest {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file or record.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A domain type invariant does not hold (duplicate ids, bad heights, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// An operation was called with arguments outside its contract.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Launch-zone layout cannot be realized (outside polygon, unsafe pair).
class LayoutError : public Error {
 public:
  using Error::Error;
};

}  // namespace swarmcongest
