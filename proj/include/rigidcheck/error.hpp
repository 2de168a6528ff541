#pragma once

#include <stdexcept>
#include <string>

namespace rigidcheck {

/// Malformed user input (files, expressions, flags). Carries an optional
/// character offset for parse errors.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, long position = -1)
      : std::runtime_error(position >= 0 ? what + " at position " + std::to_string(position) : what),
        position_(position) {}

  long position() const { return position_; }

 private:
  long position_;
};

}  // namespace rigidcheck
