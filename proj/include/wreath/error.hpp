#ifndef WREATH_ERROR_HPP
#define WREATH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wreath {

// Base of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed spec, violated precondition, unknown name.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Desk-scale overflow (ball cap, BFS state cap, horizon exhausted).
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// An internal consistency check of a construction failed.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// Numerical method did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace wreath

#endif  // WREATH_ERROR_HPP
