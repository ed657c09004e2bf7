#pragma once

#include <stdexcept>
#include <string>

namespace covmap {

// Bad user-facing input: wrong arity, out-of-domain parameters, unsupported group.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace covmap
