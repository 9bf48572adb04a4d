#pragma once

#include <stdexcept>
#include <string>

namespace antinorm {

enum class ErrorCode {
  Parse,
  Domain,
  Precondition,
  InvalidArgument,
  Unsupported,
  NotFound,
  WitnessNotFound,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace antinorm
