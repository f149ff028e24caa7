#pragma once

#include <stdexcept>
#include <string>

namespace fgd {

enum class ErrorCode {
  invalid_hurst,
  invalid_grid,
  invalid_params,
  negative_eigenvalue,
  oracle_too_large,
  factorization_failed,
  grid_mismatch,
  overflow,
  nonpositive_state,
  not_a_divisor,
  path_too_short,
  index_out_of_range,
  invalid_h,
  zero_variation,
  degenerate_schedule,
  too_few_samples,
  invalid_spec,
  io_error,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_hurst: return "INVALID_HURST";
    case ErrorCode::invalid_grid: return "INVALID_GRID";
    case ErrorCode::invalid_params: return "INVALID_PARAMS";
    case ErrorCode::negative_eigenvalue: return "NEGATIVE_EIGENVALUE";
    case ErrorCode::oracle_too_large: return "ORACLE_TOO_LARGE";
    case ErrorCode::factorization_failed: return "FACTORIZATION_FAILED";
    case ErrorCode::grid_mismatch: return "GRID_MISMATCH";
    case ErrorCode::overflow: return "OVERFLOW";
    case ErrorCode::nonpositive_state: return "NONPOSITIVE_STATE";
    case ErrorCode::not_a_divisor: return "NOT_A_DIVISOR";
    case ErrorCode::path_too_short: return "PATH_TOO_SHORT";
    case ErrorCode::index_out_of_range: return "INDEX_OUT_OF_RANGE";
    case ErrorCode::invalid_h: return "INVALID_H";
    case ErrorCode::zero_variation: return "ZERO_VARIATION";
    case ErrorCode::degenerate_schedule: return "DEGENERATE_SCHEDULE";
    case ErrorCode::too_few_samples: return "TOO_FEW_SAMPLES";
    case ErrorCode::invalid_spec: return "INVALID_SPEC";
    case ErrorCode::io_error: return "IO_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace fgd
