#ifndef SNTG_ERRORS_HPP
#define SNTG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sntg {

// Thrown for invalid configuration files, unknown keys, bad CLI arguments.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown for missing or malformed data files.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when training produces non-finite values.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sntg

#endif
