#pragma once

#include <stdexcept>
#include <string>

namespace qctl {

// Malformed files or arguments.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured size cap was hit. `flag` names the knob that raises it.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::string flag, long double estimate = 0)
      : std::runtime_error(what + " (raise with " + flag + ")"),
        flag_(std::move(flag)),
        estimate_(estimate) {}
  const std::string& flag() const { return flag_; }
  long double estimate() const { return estimate_; }

 private:
  std::string flag_;
  long double estimate_;
};

}  // namespace qctl
