#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace qlax {

/// Outcome of a verification check over one or more draws.
///
/// `controls` counts deliberately corrupted inputs that were run, and
/// `controls_failed_as_expected` how many of them produced a nonzero residual.
/// A check is ok when every draw passed and every control failed.
struct Report {
  Report() = default;
  explicit Report(std::string name) : check(std::move(name)) {}

  std::string check;
  int draws = 0;
  int passes = 0;
  int controls = 0;
  int controls_failed_as_expected = 0;
  std::optional<nlohmann::json> first_failure;

  bool ok() const { return draws > 0 && passes == draws && controls_failed_as_expected == controls; }

  /// Records one draw; keeps only the first failure detail.
  void record(bool passed, const nlohmann::json& detail = nullptr);
  /// Records one perturbation control. `failed` is the desired outcome.
  void record_control(bool failed, const nlohmann::json& detail = nullptr);

  /// Accumulates another report of the same check.
  void merge(const Report& other);

  nlohmann::json to_json() const;
};

}  // namespace qlax
