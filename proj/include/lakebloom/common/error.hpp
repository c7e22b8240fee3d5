#pragma once

#include <stdexcept>
#include <string>

namespace lakebloom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, settings, config keys or scenario specs. Maps to CLI exit 1.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key_(key) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Malformed input file. Carries the 1-based line number (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), file_(file), line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// Argument outside the domain of an empirical formula or classification.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested time outside the data a computation depends on.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// Runtime failure of the model or integrator. Maps to CLI exit 2.
class ModelError : public Error {
 public:
  using Error::Error;
};

class NonFiniteDerivativeError : public ModelError {
 public:
  explicit NonFiniteDerivativeError(const std::string& component)
      : ModelError("non-finite derivative in component '" + component + "'"),
        component_(component) {}

  const std::string& component() const noexcept { return component_; }

 private:
  std::string component_;
};

class DivergenceError : public ModelError {
 public:
  DivergenceError(double time, const std::string& what)
      : ModelError("diverged at t=" + std::to_string(time) + ": " + what), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// A state component went negative beyond the clamp tolerance.
class StiffnessError : public ModelError {
 public:
  StiffnessError(double time, const std::string& component)
      : ModelError("component '" + component + "' went negative at t=" + std::to_string(time) +
                   "; the system is locally stiff, reduce dt"),
        time_(time),
        component_(component) {}

  double time() const noexcept { return time_; }
  const std::string& component() const noexcept { return component_; }

 private:
  double time_;
  std::string component_;
};

}  // namespace lakebloom
