#pragma once

// The thirteen acceptance criteria, shared by `obslab verify` and the
// acceptance test binary.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace obslab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  nlohmann::json data;
  double seconds = 0.0;  // wall time; not part of the JSON report
};

// Floors recorded on the first calibrated run. Regression checks allow 10 %.
inline constexpr double kRecordedInghamFloor = 0.5438;
inline constexpr double kRecordedResolventFloor = 0.3217;
inline constexpr double kRecordedResolventFloorWithV = 0.3355;
inline constexpr double kRegressionTolerance = 0.10;

struct AcceptanceOptions {
  std::uint64_t seed = 42;
  /// Criteria to run (1..13); empty means all.
  std::vector<int> only;
};

using CriterionCallback = std::function<void(const CriterionResult&)>;

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, const CriterionCallback& on_result = {});

/// Deterministic JSON (no timings).
nlohmann::json acceptance_to_json(const std::vector<CriterionResult>& results, std::uint64_t seed);

/// "[PASS] 3 gap bounds: ..." style line.
std::string summary_line(const CriterionResult& r);

}  // namespace obslab
