#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace phaseop {

struct CheckRecord {
  std::string name;
  std::string anchor;  // the identity the check exercises
  nlohmann::json params = nlohmann::json::object();
  double residual = 0.0;
  double tolerance = 0.0;
  // Report-only diagnostics carry asserted = false and never fail a run.
  bool asserted = true;
  bool passed = false;
  std::string note;
};

struct VerificationReport {
  nlohmann::json meta = nlohmann::json::object();
  std::vector<CheckRecord> checks;

  bool all_passed() const;
  std::size_t asserted_count() const;
  std::size_t failure_count() const;
  const CheckRecord* find(const std::string& name) const;
};

// Marks passed from residual/tolerance; non-finite residuals fail.
void settle(CheckRecord& record);

nlohmann::json to_json(const CheckRecord& record);
nlohmann::json to_json(const VerificationReport& report);
VerificationReport report_from_json(const nlohmann::json& doc);

}  // namespace phaseop
