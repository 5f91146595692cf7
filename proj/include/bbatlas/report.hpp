#pragma once

#include <string>
#include <utility>

#include <json.hpp>

namespace bbatlas {

/// Outcome of one verification: an empty violation list means pass.
struct Report {
  Report() = default;
  explicit Report(std::string name) : check(std::move(name)) {}

  std::string check;
  bool passed = true;
  std::string summary;
  nlohmann::json details = nlohmann::json::object();
  nlohmann::json violations = nlohmann::json::array();

  void fail(nlohmann::json violation) {
    passed = false;
    violations.push_back(std::move(violation));
  }

  [[nodiscard]] nlohmann::json to_json() const {
    return {{"check", check}, {"passed", passed}, {"summary", summary}, {"details", details}, {"violations", violations}};
  }
};

}  // namespace bbatlas
