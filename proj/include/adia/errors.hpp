#pragma once

#include <stdexcept>
#include <string>

namespace adia {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The instantaneous ground level is (numerically) degenerate with the first
/// excited level, so the eigenbasis expansion around E_0 is not defined.
class DegenerateGroundGap : public Error {
 public:
  using Error::Error;
};

/// Two levels inside a degenerate block couple through dH/ds; the coupling
/// M_nk = -<n|dH|k>/(E_n - E_k) would be singular.
class DegenerateCoupling : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// sum_n |b_n^(1)|^2 vanishes: the first-order trade-off is undefined and the
/// boundary-cancelation path has to be used.
class VanishingLeadingOrder : public Error {
 public:
  using Error::Error;
};

class BoundaryConditionViolated : public Error {
 public:
  using Error::Error;
};

class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

class StepSizeUnderflow : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class UnsupportedSchedule : public Error {
 public:
  using Error::Error;
};

class ODEDivergence : public Error {
 public:
  using Error::Error;
};

class InvalidFamily : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration. field() names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace adia
