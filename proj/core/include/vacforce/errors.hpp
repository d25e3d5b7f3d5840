#pragma once

#include <stdexcept>
#include <string>

namespace vacforce {

// Invalid or inconsistent scenario/configuration input. The CLI maps this
// to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A quadrature failed to reach its tolerance within the evaluation budget
// in a context that returns a bare number. Operations returning a result
// struct report the same condition through their converged flag instead.
// The CLI maps this to exit code 2.
class NonConvergedError : public std::runtime_error {
 public:
  explicit NonConvergedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vacforce
