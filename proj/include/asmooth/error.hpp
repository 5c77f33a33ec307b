#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace asmooth {

// Base of every exception thrown by the library. The C API maps each
// subclass onto a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Out-of-range index, malformed option or wrong shape passed by the caller.
class UsageError : public Error {
 public:
  using Error::Error;
};

// An observation with zero predictive probability under the current belief.
class ImpossibleEvidence : public Error {
 public:
  ImpossibleEvidence(std::size_t observation, int stage)
      : Error("impossible evidence: observation " + std::to_string(observation) +
              " has zero probability at stage " + std::to_string(stage)),
        observation_(observation),
        stage_(stage) {}

  std::size_t observation() const { return observation_; }
  int stage() const { return stage_; }

 private:
  std::size_t observation_;
  int stage_;
};

// Entropy gradients diverge on the simplex boundary.
class BoundaryError : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// Exact enumeration refused because it would exceed the term budget.
class SizeGuardError : public Error {
 public:
  SizeGuardError(double terms, double limit)
      : Error("exact enumeration needs " + std::to_string(static_cast<std::uint64_t>(terms)) +
              " joint terms, limit is " + std::to_string(static_cast<std::uint64_t>(limit))),
        terms_(terms) {}
  double terms() const { return terms_; }

 private:
  double terms_;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace asmooth
