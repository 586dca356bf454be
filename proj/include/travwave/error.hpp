#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace travwave {

/// Base class for every error raised by the library. The C API maps each
/// subclass onto one status code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Newton iteration stopped without reaching the residual tolerance.
class NoConvergence : public Error {
public:
  NoConvergence(const std::string& what, double last_residual, std::vector<double> last_iterate, int iterations)
    : Error(what), last_residual_(last_residual), last_iterate_(std::move(last_iterate)), iterations_(iterations) {}

  double last_residual() const noexcept { return last_residual_; }
  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
  int iterations() const noexcept { return iterations_; }

private:
  double last_residual_;
  std::vector<double> last_iterate_;
  int iterations_;
};

/// The extended Jacobian is numerically singular (fold, bifurcation or end of branch).
class SingularJacobian : public Error {
public:
  SingularJacobian(const std::string& what, double rcond) : Error(what), rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

private:
  double rcond_;
};

class BranchTerminated : public Error {
public:
  using Error::Error;
};

/// The linearised operator has more than one mode in its kernel.
class ResonantMode : public Error {
public:
  ResonantMode(const std::string& what, std::size_t mode) : Error(what), mode_(mode) {}
  std::size_t mode() const noexcept { return mode_; }

private:
  std::size_t mode_;
};

class InsufficientData : public Error {
public:
  using Error::Error;
};

class DegenerateSpacing : public Error {
public:
  using Error::Error;
};

class NoExactSolution : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace travwave
