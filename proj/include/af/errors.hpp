#pragma once

#include <stdexcept>
#include <string>

namespace af {

/// Invalid configuration, problem setup or unsupported option. Exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or inadmissible state met during a computation. Exit code 3.
class NumericsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File system failure while reading or writing. Exit code 4.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace af
