#pragma once

#include <stdexcept>
#include <string>

namespace joseph {

/// A computation would exceed a configured size ceiling.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace joseph
