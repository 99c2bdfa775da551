#pragma once

#include <string>

#include "json.hpp"
#include "sltb/core.hpp"

namespace sltb {

// Rationals travel as "num/den" strings; integers are accepted as JSON numbers.
nlohmann::json rational_to_json(const Rational& value);
Rational rational_from_json(const nlohmann::json& value);

// {"n": int, "p_up": [...], "p_low": [str|null, ...], "cost": [...], "budget": str}
nlohmann::json instance_to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& doc);

Instance read_instance_file(const std::string& path);
nlohmann::json read_json_file(const std::string& path);

// 1-based ids for external output.
nlohmann::json job_set_to_json(const JobSet& set);
JobSet job_set_from_json(const nlohmann::json& doc, std::size_t n);

std::vector<Rational> parse_rational_list(const std::string& text);  // "1,2/3,4"

}  // namespace sltb
