#pragma once

#include <stdexcept>
#include <string>

namespace vw {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDiagram : public Error {
 public:
  using Error::Error;
};

class TokenMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A configured cap (slice size, entry size, time budget) was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Raised when an internal identity that must hold by construction fails
/// (closure of a subcomplex, chain-map squares, rewrite termination).
class InvariantFailure : public Error {
 public:
  using Error::Error;
};

class ClosureViolation : public InvariantFailure {
 public:
  using InvariantFailure::InvariantFailure;
};

class NotAChainMap : public InvariantFailure {
 public:
  using InvariantFailure::InvariantFailure;
};

class NonTermination : public InvariantFailure {
 public:
  using InvariantFailure::InvariantFailure;
};

/// Bad arguments to an algebraic operation (arity, degree, variant).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

class FieldRequired : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class NonHomogeneous : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class OddDegree : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class ArityMismatch : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class TopAsterisksOnD : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class VariantMismatch : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

}  // namespace vw
