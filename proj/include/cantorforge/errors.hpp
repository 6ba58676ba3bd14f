#pragma once

#include <stdexcept>
#include <string>

namespace cantorforge {

/// Base of every error raised by the library. The CLI maps subclasses onto
/// its exit-code contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SpecSyntaxError : public Error {
 public:
  using Error::Error;
};

/// A well-formed entry whose value is illegal (finite genus below 2).
class SpecValueError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// A replacement step was applied to a component of the wrong stage parity.
class StageParityError : public Error {
 public:
  using Error::Error;
};

/// An inductive hypothesis failed on constructed output. Always a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Node budget or index range exhausted.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class PolicyError : public Error {
 public:
  using Error::Error;
};

/// The requested depth has not yet revealed an end's tail behaviour.
class DepthTooShallowError : public Error {
 public:
  using Error::Error;
};

}  // namespace cantorforge
