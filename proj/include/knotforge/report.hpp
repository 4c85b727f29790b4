// Run reports shared by the verification routines and the CLI.
#pragma once

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace knotforge {

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

inline Check make_check(std::string name, std::string expected, std::string actual) {
  const bool pass = expected == actual;
  return Check{std::move(name), std::move(expected), std::move(actual), pass};
}

struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, std::string>> results;
  std::vector<Check> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }

  void input(std::string key, std::string value) { inputs.emplace_back(std::move(key), std::move(value)); }
  void result(std::string key, std::string value) { results.emplace_back(std::move(key), std::move(value)); }
  void check(Check c) { checks.push_back(std::move(c)); }
  void append(const RunReport& other, const std::string& prefix = {}) {
    for (const auto& [k, v] : other.results) results.emplace_back(prefix + k, v);
    for (auto c : other.checks) {
      c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
  }

  std::vector<std::string> failing() const {
    std::vector<std::string> out;
    for (const auto& c : checks) {
      if (!c.pass) out.push_back(c.name);
    }
    return out;
  }
};

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

inline std::string render_text(const RunReport& r, bool with_timestamp) {
  std::ostringstream os;
  if (with_timestamp) os << "# generated " << utc_timestamp() << '\n';
  os << "command: " << r.command << '\n';
  for (const auto& [k, v] : r.inputs) os << "input " << k << ": " << v << '\n';
  for (const auto& [k, v] : r.results) os << k << ": " << v << '\n';
  for (const auto& c : r.checks) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.pass) os << " (expected " << c.expected << ", got " << c.actual << ')';
    os << '\n';
  }
  os << "status: " << (r.passed() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

inline nlohmann::ordered_json to_json(const RunReport& r, bool with_timestamp) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  if (with_timestamp) j["timestamp"] = utc_timestamp();
  j["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.inputs) j["inputs"][k] = v;
  j["results"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.results) j["results"][k] = v;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
  }
  j["passed"] = r.passed();
  return j;
}

}  // namespace knotforge
