#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

/// Invalid or inconsistent user configuration (CLI exit code 1).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: NaN in a field, non-bracketable calibration target,
/// diverged solve (CLI exit code 2).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem/output failure (CLI exit code 3).
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace biphoton
