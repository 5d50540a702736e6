#pragma once

#include <stdexcept>
#include <string>

namespace motkit {

// Violated operation precondition: the request is refused, nothing is broken.
// The CLI maps this to exit code 2.
class precondition_error : public std::runtime_error {
public:
  explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal consistency failure (a bug, not a bad request). CLI exit code 1.
class hard_error : public std::logic_error {
public:
  explicit hard_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace motkit
