#ifndef ASPECTFORGE_ERRORS_HPP
#define ASPECTFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aspectforge {

/// Invalid configuration or unusable input paths. CLI exit code 1.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent data encountered while processing. CLI exit code 2.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Live Wikipedia fetch failed after retries. Distinct from "page absent".
struct WikiFetchError : DataError {
  explicit WikiFetchError(const std::string& msg) : DataError(msg) {}
};

}  // namespace aspectforge

#endif  // ASPECTFORGE_ERRORS_HPP
