#pragma once

#include <stdexcept>
#include <string>

namespace tentsolve {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Element with zero (or negative) measure, or an affine map that cannot be inverted.
class SingularGeometry : public Error {
 public:
  using Error::Error;
};

/// The tent mass operator is not invertible; raised when a front violates causality.
class SingularMass : public Error {
 public:
  using Error::Error;
};

class PitchingStuck : public Error {
 public:
  PitchingStuck(const std::string& what, int vertex) : Error(what), vertex_(vertex) {}
  int vertex() const { return vertex_; }

 private:
  int vertex_;
};

/// A tent task failed while a slab was being processed.
class TentFailure : public Error {
 public:
  TentFailure(const std::string& what, int tent) : Error(what), tent_(tent) {}
  int tent() const { return tent_; }

 private:
  int tent_;
};

}  // namespace tentsolve
