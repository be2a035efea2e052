#pragma once

#include <stdexcept>
#include <string>

namespace nilspec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument to a constructor (n = 0, bad modulus, malformed table).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A table failed a ring axiom. what() carries the violating witness.
class AxiomError : public Error {
 public:
  using Error::Error;
};

/// A configured size, ideal-count or search budget was exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// A mathematical invariant that must hold did not. Always carries a witness.
class InvariantFault : public Error {
 public:
  using Error::Error;
};

/// Malformed ring-spec document.
class SpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace nilspec
