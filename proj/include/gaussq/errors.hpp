#pragma once

#include <stdexcept>
#include <string>

namespace gaussq {

/// Argument outside the domain of an operation (negative energy, gain below
/// one, transmissivity outside [0, 1], non-finite input).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A closed form evaluated exactly at one of its poles.
class SingularPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Matrix that is not a physical covariance matrix: asymmetric, wrong shape,
/// or violating the uncertainty relation.
class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical route declined to run because its discretisation cannot meet
/// the accuracy target. Carries a human readable hint.
class Refusal : public std::runtime_error {
 public:
  Refusal(const std::string& what, std::string hint)
      : std::runtime_error(what), hint_(std::move(hint)) {}
  const std::string& hint() const noexcept { return hint_; }

 private:
  std::string hint_;
};

/// Fock cutoff too small (or too large to afford) for the requested
/// computation.
class CutoffRefusal : public Refusal {
 public:
  CutoffRefusal(const std::string& what, int required_cutoff)
      : Refusal(what, "required cutoff N >= " + std::to_string(required_cutoff)),
        required_cutoff_(required_cutoff) {}
  int required_cutoff() const noexcept { return required_cutoff_; }

 private:
  int required_cutoff_;
};

/// Quadrature grid unable to capture the mass of its weight function.
class QuadratureRefusal : public Refusal {
 public:
  QuadratureRefusal(const std::string& what, double required_radius)
      : Refusal(what, "required radius >= " + std::to_string(required_radius)),
        required_radius_(required_radius) {}
  double required_radius() const noexcept { return required_radius_; }

 private:
  double required_radius_;
};

}  // namespace gaussq
