#include "vilenkin/error.hpp"

namespace vilenkin {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::generator_too_small: return "generator_too_small";
    case ErrorCode::generator_too_large: return "generator_too_large";
    case ErrorCode::zero_depth: return "zero_depth";
    case ErrorCode::product_overflow: return "product_overflow";
    case ErrorCode::depth_exceeded: return "depth_exceeded";
    case ErrorCode::index_out_of_range: return "index_out_of_range";
    case ErrorCode::base_mismatch: return "base_mismatch";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::validation_failed: return "validation_failed";
    case ErrorCode::io_failure: return "io_failure";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace vilenkin
