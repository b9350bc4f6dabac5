// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace nl {

// Error categories shared with the C API status codes.
enum class ErrorCode {
  invalid_argument = 1,
  domain = 2,
  quadrature = 3,
  divergent = 4,
  resolution = 5,
  construction = 6,
  config = 7,
  io = 8,
  internal = 9,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace nl
