#pragma once

#include <stdexcept>
#include <string>

namespace qpainleve {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the domain of an operation (poles, bad shapes, singular
/// actions, indices outside the validated lattice). The CLI maps it to exit 2.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An argument sits within the lattice guard of a pole.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A Weyl generator was applied where one of its denominators vanishes.
class SingularActionError : public DomainError {
 public:
  SingularActionError(std::string generator, std::string polynomial)
      : DomainError("singular action of " + generator + ": " + polynomial + " vanishes"),
        generator_(std::move(generator)),
        polynomial_(std::move(polynomial)) {}

  const std::string& generator() const noexcept { return generator_; }
  const std::string& polynomial() const noexcept { return polynomial_; }

 private:
  std::string generator_;
  std::string polynomial_;
};

/// A tau-function ratio has a vanishing denominator.
class DegenerateError : public DomainError {
 public:
  using DomainError::DomainError;
};

class IndexDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

class PropagationStall : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A series or product did not meet its stopping rule within max_index.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double last_term)
      : Error(what + ": no convergence within max_index (last term magnitude " +
              std::to_string(last_term) + ")"),
        last_term_(last_term) {}

  double last_term_magnitude() const noexcept { return last_term_; }

 private:
  double last_term_;
};

}  // namespace qpainleve
