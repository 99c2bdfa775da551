#include "sltb/error.hpp"

namespace sltb {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_instance: return "invalid-instance";
    case ErrorKind::invalid_schedule: return "invalid-schedule";
    case ErrorKind::missing_lower_time: return "missing-lower-time";
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    case ErrorKind::instance_too_large: return "instance-too-large";
    case ErrorKind::noninteger_upper_time: return "noninteger-p_up";
    case ErrorKind::nonzero_lower_time: return "nonzero-p_low";
    case ErrorKind::unequal_lower_times: return "unequal-lower-times";
    case ErrorKind::cost_overflow: return "cost-overflow";
    case ErrorKind::invalid_epsilon: return "invalid-epsilon";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::invalid_fixation: return "invalid-fixation";
    case ErrorKind::invalid_path: return "invalid-path";
    case ErrorKind::delta_out_of_range: return "delta-out-of-range";
    case ErrorKind::identical_paths: return "identical-paths";
    case ErrorKind::lp_infeasible: return "lp-infeasible";
    case ErrorKind::invariant_breach: return "invariant-breach";
    case ErrorKind::parse_error: return "parse-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

void fail(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

}  // namespace sltb
