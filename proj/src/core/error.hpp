#pragma once

#include <stdexcept>
#include <string>

namespace msq {

// Error categories. Kept in sync with msq_status in the public C header;
// the C API maps Error::code onto the corresponding status value.
enum class ErrorCode {
  ok = 0,
  io,
  parse,
  invalid_argument,
  empty_input,
  empty_panel,
  non_monotonic_dates,
  invalid_price,
  log_return_undefined,
  degenerate_asset,
  no_investable_assets,
  insufficient_data,
  discretization_bound,
  assumption_violated,
  problem_too_large,
  no_feasible,
  not_converged,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace msq
