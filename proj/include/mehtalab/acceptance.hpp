#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mehtalab/estimator.hpp"

namespace mehtalab {

struct AcceptanceOptions {
  std::uint64_t seed = 42;
  unsigned workers = 1;
  // Caps every Monte Carlo sample count (quick runs); nullopt keeps the
  // stated counts.
  std::optional<std::uint64_t> max_samples;
  // Criterion ids to run; empty runs 1..10.
  std::vector<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  double estimate = 0.0;
  std::optional<double> reference;
  std::optional<double> z_score;  // worst sub-check
  double tolerance = 0.0;         // |z| bound or absolute/relative tolerance
  bool pass = false;
  double time_limit_s = 0.0;
  double wall_time_s = 0.0;
  nlohmann::json details = nlohmann::json::array();
};

void to_json(nlohmann::json& j, const CriterionResult& c);

// Runs one acceptance criterion (1..10).
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

// Full report document: config echo, criteria, overall pass.
nlohmann::json make_report(const AcceptanceOptions& options, const std::vector<CriterionResult>& criteria);

// Copy of a JSON document with every wall_time_s field removed.
nlohmann::json strip_timing(nlohmann::json j);

// Criterion 11: two runs with the same options must agree byte for byte
// once timing fields are removed.
CriterionResult determinism_check(const nlohmann::json& first, const nlohmann::json& second);

// Plain-text table, one row per criterion in report order.
std::string render_report(const nlohmann::json& report);
// True iff every criterion passes (pass flag set and |z| within 4).
bool report_passes(const nlohmann::json& report);

}  // namespace mehtalab
