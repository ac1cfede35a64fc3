#pragma once

#include <stdexcept>
#include <string>

namespace nolabel {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Unknown mode/spin label, missing mode, or states living on different bases.
class BasisError : public Error {
  public:
    using Error::Error;
};

/// A parameter outside its domain (chi outside [0,1], |r|^2+|t|^2 != 1, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A two-particle state with vanishing norm, e.g. two fermions in one state.
class ZeroNormError : public Error {
  public:
    using Error::Error;
};

/// A projection that leaves no weight: the particle is never found there.
class ZeroWeightError : public Error {
  public:
    using Error::Error;
};

/// Closed-form expression evaluated at a vanishing denominator.
class DegenerateError : public Error {
  public:
    using Error::Error;
};

/// Matrix that fails the density-matrix checks (Hermiticity, trace, sign).
class NumericalError : public Error {
  public:
    using Error::Error;
};

} // namespace nolabel
