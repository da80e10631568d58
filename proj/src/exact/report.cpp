#include "qlax/exact/report.hpp"

namespace qlax {

void Report::record(bool passed, const nlohmann::json& detail) {
  ++draws;
  if (passed) {
    ++passes;
  } else if (!first_failure) {
    first_failure = detail.is_null() ? nlohmann::json::object() : detail;
  }
}

void Report::record_control(bool failed, const nlohmann::json& detail) {
  ++controls;
  if (failed) {
    ++controls_failed_as_expected;
  } else if (!first_failure) {
    nlohmann::json d = detail.is_null() ? nlohmann::json::object() : detail;
    d["control_passed_unexpectedly"] = true;
    first_failure = d;
  }
}

void Report::merge(const Report& other) {
  if (check.empty()) check = other.check;
  draws += other.draws;
  passes += other.passes;
  controls += other.controls;
  controls_failed_as_expected += other.controls_failed_as_expected;
  if (!first_failure && other.first_failure) first_failure = other.first_failure;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["check"] = check;
  j["draws"] = draws;
  j["passes"] = passes;
  j["controls"] = controls;
  j["controls_failed_as_expected"] = controls_failed_as_expected;
  j["first_failure"] = first_failure ? *first_failure : nlohmann::json(nullptr);
  return j;
}

}  // namespace qlax
