#pragma once

#include <stdexcept>
#include <string>

namespace roughcone {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatch, out-of-space points, bad ranges.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Raised when an exact constant is requested for a cone/norm pair that has
/// no catalogued value.
class NoExactConstant : public Error {
 public:
  using Error::Error;
};

/// Configuration problems. `path` names the offending field (e.g.
/// "space.alpha") when one is known.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace roughcone
