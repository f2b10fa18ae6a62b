#include "phaseop/report.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace phaseop {

bool VerificationReport::all_passed() const { return failure_count() == 0; }

std::size_t VerificationReport::asserted_count() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.asserted ? 1 : 0;
  return n;
}

std::size_t VerificationReport::failure_count() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += (c.asserted && !c.passed) ? 1 : 0;
  return n;
}

const CheckRecord* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void settle(CheckRecord& record) {
  if (!std::isfinite(record.residual) || record.residual < 0.0) {
    record.note += record.note.empty() ? "non-finite residual" : "; non-finite residual";
    record.residual = DBL_MAX;
    record.passed = false;
    return;
  }
  record.passed = record.residual <= record.tolerance;
}

nlohmann::json to_json(const CheckRecord& record) {
  nlohmann::json j;
  j["name"] = record.name;
  j["anchor"] = record.anchor;
  j["params"] = record.params;
  j["residual"] = record.residual;
  j["tolerance"] = record.tolerance;
  j["asserted"] = record.asserted;
  j["passed"] = record.passed;
  if (!record.note.empty()) j["note"] = record.note;
  return j;
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["meta"] = report.meta;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks) j["checks"].push_back(to_json(c));
  return j;
}

VerificationReport report_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("meta") || !doc.contains("checks") || !doc["checks"].is_array()) {
    throw std::invalid_argument("report JSON: expected {\"meta\": {...}, \"checks\": [...]}");
  }
  VerificationReport report;
  report.meta = doc["meta"];
  for (const auto& c : doc["checks"]) {
    CheckRecord r;
    r.name = c.at("name").get<std::string>();
    r.params = c.at("params");
    r.residual = c.at("residual").get<double>();
    r.tolerance = c.at("tolerance").get<double>();
    r.passed = c.at("passed").get<bool>();
    r.anchor = c.value("anchor", std::string{});
    r.asserted = c.value("asserted", true);
    r.note = c.value("note", std::string{});
    report.checks.push_back(std::move(r));
  }
  return report;
}

}  // namespace phaseop
