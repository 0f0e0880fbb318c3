#pragma once

#include <stdexcept>
#include <string>

namespace yamabe {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value left the mathematical domain of an operation (nonpositive
/// conformal factor, zero boundary volume, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inputs violate a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The minimizer ran below the divergence floor; Y_II = -inf is suspected.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// A search (threshold, bracket) found nothing in its probe range.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace yamabe
