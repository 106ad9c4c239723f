#pragma once

#include <stdexcept>
#include <string>

namespace hhgq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration value is missing, malformed or out of range. `field()`
/// names the offending key (dotted path for config files).
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// The time grid cannot resolve the requested frequency content.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Fock-basis truncation discards more probability than allowed.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& message, int suggested_n_max)
      : Error(message), suggested_n_max_(suggested_n_max) {}
  int suggested_n_max() const noexcept { return suggested_n_max_; }

 private:
  int suggested_n_max_;
};

/// The discrete phase sum is too coarse for exact cancellation.
class AliasingError : public Error {
 public:
  AliasingError(const std::string& message, int min_n_phi)
      : Error(message), min_n_phi_(min_n_phi) {}
  int min_n_phi() const noexcept { return min_n_phi_; }

 private:
  int min_n_phi_;
};

class UnsupportedEnvelope : public Error {
 public:
  using Error::Error;
};

/// Numerical integration produced a non-finite or non-converged value.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

class ScanError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hhgq
