#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vilenkin {

enum class ErrorCode {
  generator_too_small,
  generator_too_large,
  zero_depth,
  product_overflow,
  depth_exceeded,
  index_out_of_range,
  base_mismatch,
  invalid_argument,
  parse_error,
  validation_failed,
  io_failure,
};

std::string_view to_string(ErrorCode code);

/// All failures in the library are reported through this exception; code()
/// distinguishes the failure class so callers can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace vilenkin
