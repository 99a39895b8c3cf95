#pragma once

#include <stdexcept>
#include <string>

namespace heislap {

// Invalid input: bad polygon, bad config field, violated precondition.
// The CLI maps this to exit code 1.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative solver failed to reach its tolerance. Exit code 2.
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace heislap
