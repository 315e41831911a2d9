#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace hopfwave {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// expression language

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected, const std::string& text)
      : Error("syntax error at position " + std::to_string(position) + ": expected " + expected +
              " in \"" + text + "\""),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(std::size_t position, const std::string& name)
      : Error("unknown identifier '" + name + "' at position " + std::to_string(position)),
        position_(position),
        name_(name) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::size_t position_;
  std::string name_;
};

/// Division by zero, sqrt of a negative number or a non-finite result.
class DomainError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// problem definition

class InvalidProblem : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Hopf point certification

class NoConvergence : public Error {
 public:
  explicit NoConvergence(const std::string& what, double last_good_eps = 0.0)
      : Error(what), last_good_eps_(last_good_eps) {}
  double last_good_eps() const noexcept { return last_good_eps_; }

 private:
  double last_good_eps_;
};

class ResidualAboveTolerance : public Error {
 public:
  ResidualAboveTolerance(const std::string& what, double tau, double residual)
      : Error(what), tau_(tau), residual_(residual) {}
  double tau() const noexcept { return tau_; }
  double residual() const noexcept { return residual_; }

 private:
  double tau_;
  double residual_;
};

class AdjointInconsistent : public Error {
 public:
  using Error::Error;
};

class SigmaZero : public Error {
 public:
  using Error::Error;
};

class RhoZero : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// direction

class NotSeparable : public Error {
 public:
  using Error::Error;
};

class QuadraticTermPresent : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// periodic orbits

class JacobianSingular : public Error {
 public:
  JacobianSingular(const std::string& what, double rcond) : Error(what), rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

// ---------------------------------------------------------------------------
// time-domain simulation

class CFLViolation : public Error {
 public:
  using Error::Error;
};

class NegativeDelayUnsupported : public Error {
 public:
  using Error::Error;
};

class NoOscillationDetected : public Error {
 public:
  NoOscillationDetected(const std::string& what, double final_amplitude)
      : Error(what), final_amplitude_(final_amplitude) {}
  double final_amplitude() const noexcept { return final_amplitude_; }

 private:
  double final_amplitude_;
};

}  // namespace hopfwave
