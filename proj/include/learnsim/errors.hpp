#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace learnsim {

/// Thrown when inputs break a model, schedule or config invariant.
/// Carries every diagnostic found, not just the first.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(std::vector<std::string> diagnostics);
  explicit ValidationError(const std::string& diagnostic)
      : ValidationError(std::vector<std::string>{diagnostic}) {}

  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

private:
  std::vector<std::string> diagnostics_;
};

/// File system failures (missing config, unwritable output).
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace learnsim
