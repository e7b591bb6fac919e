#pragma once

#include <stdexcept>
#include <string>

namespace mixv {

/// Raised when an enumeration guard or another numeric feasibility limit is
/// exceeded. The CLI maps this to exit code 3, as opposed to plain input
/// errors (std::invalid_argument, exit code 2).
class guard_error : public std::runtime_error {
 public:
  explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mixv
