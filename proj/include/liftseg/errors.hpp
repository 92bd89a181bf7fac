#pragma once

#include <stdexcept>
#include <string>

namespace liftseg {

/// Configuration could not be parsed or failed validation.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Reading or writing files failed.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// The iteration produced non-finite values or an estimate broke down.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace liftseg
