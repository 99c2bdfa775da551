#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sltb {

enum class ErrorKind {
  invalid_instance,
  invalid_schedule,
  missing_lower_time,
  budget_exceeded,
  instance_too_large,
  noninteger_upper_time,
  nonzero_lower_time,
  unequal_lower_times,
  cost_overflow,
  invalid_epsilon,
  invalid_argument,
  invalid_fixation,
  invalid_path,
  delta_out_of_range,
  identical_paths,
  lp_infeasible,
  invariant_breach,
  parse_error,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& detail);

inline void require(bool condition, ErrorKind kind, const std::string& detail) {
  if (!condition) fail(kind, detail);
}

}  // namespace sltb
