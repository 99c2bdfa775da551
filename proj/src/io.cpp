#include "sltb/io.hpp"

#include <fstream>
#include <sstream>

namespace sltb {

nlohmann::json rational_to_json(const Rational& value) { return format_rational(value); }

Rational rational_from_json(const nlohmann::json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long long>());
  fail(ErrorKind::parse_error, "expected a rational, got " + value.dump());
}

nlohmann::json instance_to_json(const Instance& instance) {
  nlohmann::json doc;
  doc["n"] = instance.size();
  doc["p_up"] = nlohmann::json::array();
  doc["p_low"] = nlohmann::json::array();
  doc["cost"] = nlohmann::json::array();
  for (JobId j = 0; j < instance.size(); ++j) {
    doc["p_up"].push_back(rational_to_json(instance.upper(j)));
    doc["p_low"].push_back(instance.lower(j) ? rational_to_json(*instance.lower(j)) : nlohmann::json());
    doc["cost"].push_back(rational_to_json(instance.cost(j)));
  }
  doc["budget"] = rational_to_json(instance.budget());
  return doc;
}

Instance instance_from_json(const nlohmann::json& doc) {
  try {
    std::vector<Rational> upper;
    std::vector<std::optional<Rational>> lower;
    std::vector<Rational> cost;
    for (const auto& v : doc.at("p_up")) upper.push_back(rational_from_json(v));
    if (doc.contains("p_low")) {
      for (const auto& v : doc.at("p_low")) {
        lower.push_back(v.is_null() ? std::nullopt : std::optional<Rational>(rational_from_json(v)));
      }
    } else {
      lower.assign(upper.size(), std::nullopt);
    }
    for (const auto& v : doc.at("cost")) cost.push_back(rational_from_json(v));
    if (doc.contains("n")) {
      require(doc.at("n").get<std::size_t>() == upper.size(), ErrorKind::parse_error,
              "field n disagrees with p_up");
    }
    return Instance(upper, lower, cost, rational_from_json(doc.at("budget")));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse_error, e.what());
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::parse_error, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse_error, path + ": " + e.what());
  }
}

Instance read_instance_file(const std::string& path) { return instance_from_json(read_json_file(path)); }

nlohmann::json job_set_to_json(const JobSet& set) {
  nlohmann::json out = nlohmann::json::array();
  for (JobId j : set) out.push_back(j + 1);
  return out;
}

JobSet job_set_from_json(const nlohmann::json& doc, std::size_t n) {
  JobSet set;
  for (const auto& v : doc) {
    auto id = v.get<std::size_t>();
    require(id >= 1 && id <= n, ErrorKind::parse_error, "job id out of range");
    set.push_back(id - 1);
  }
  return normalize(set);
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_rational(item));
  }
  return out;
}

}  // namespace sltb
