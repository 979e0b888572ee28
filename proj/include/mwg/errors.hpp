#pragma once

#include <stdexcept>
#include <string>

namespace mwg {

// Every library failure derives from Error; the CLI maps the concrete
// subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad files, unknown vertices, violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

// A configured enumeration or arena budget was exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A runtime check of a proven property failed. Either the implementation
// is wrong or the property is; both need a human.
class Falsification : public Error {
 public:
  using Error::Error;
};

// A strategy table was queried on a state it does not cover.
class UndefinedState : public Error {
 public:
  using Error::Error;
};

// A strategy memory received an observation that no edge explains.
class InconsistentObservation : public Error {
 public:
  using Error::Error;
};

}  // namespace mwg
