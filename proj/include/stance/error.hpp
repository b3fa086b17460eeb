#pragma once

#include <stdexcept>
#include <string>

namespace stance {

// Bad input data: malformed files, unknown labels, missing annotations.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration: missing resources, invalid parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stance
