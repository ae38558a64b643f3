#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adhestring {

/// A parameter lies outside the domain of a formula (negative radicand,
/// non-positive regularization width, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid run configuration. `line` is 0 when the error is not tied to a
/// line of a config file.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Non-finite values appeared during time stepping.
class BlowupError : public std::runtime_error {
 public:
  explicit BlowupError(std::size_t step)
      : std::runtime_error("numerical blowup at step " + std::to_string(step)), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Picard iteration ran out of iterations before meeting its tolerance.
class IterationLimitError : public std::runtime_error {
 public:
  IterationLimitError(std::size_t iterations, double last_change)
      : std::runtime_error("Picard iteration did not converge after " +
                           std::to_string(iterations) + " iterations (last change " +
                           std::to_string(last_change) + ")"),
        last_change_(last_change) {}
  double last_change() const noexcept { return last_change_; }

 private:
  double last_change_;
};

/// A diagnostic cannot be evaluated at the available resolution.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace adhestring
