#pragma once

#include <stdexcept>
#include <string>

namespace slowads {

// Domain error; the CLI maps these to exit code 1 with a one-line diagnostic.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

}  // namespace slowads
