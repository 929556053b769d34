#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace infnom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A term does not conform to the binding arity of its signature.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// A free atom outside the declared support surfaced while unfolding.
class SupportViolation : public Error {
 public:
  using Error::Error;
};

/// Concretion at an atom that is in the support of the abstraction.
class NotFresh : public Error {
 public:
  using Error::Error;
};

class NotRational : public Error {
 public:
  using Error::Error;
};

class IncompatibleChain : public Error {
 public:
  using Error::Error;
};

class UnboundedSupport : public Error {
 public:
  using Error::Error;
};

/// The operator normalisation inside a top step ran out of fuel.
class FuelNeeded : public Error {
 public:
  using Error::Error;
};

/// An undecided tree node blocks a bisimulation verdict.
class Inconclusive : public Error {
 public:
  using Error::Error;
};

class RepresentativeClash : public Error {
 public:
  using Error::Error;
};

}  // namespace infnom
