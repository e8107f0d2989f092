#include "mehtalab/estimator.hpp"

#include <limits>

namespace mehtalab {

RunningStats merge_pairwise(std::vector<RunningStats> parts) {
  if (parts.empty()) return {};
  while (parts.size() > 1) {
    std::vector<RunningStats> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
      RunningStats s = parts[i];
      s.merge(parts[i + 1]);
      next.push_back(s);
    }
    if (parts.size() % 2 == 1) next.push_back(parts.back());
    parts = std::move(next);
  }
  return parts.front();
}

std::optional<double> EstimatorResult::z_score() const {
  if (!reference) return std::nullopt;
  const double diff = estimate - *reference;
  const double se = combined_std_error();
  if (se > 0.0) return diff / se;
  // Zero error: only an exact match (to rounding) passes.
  if (std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(*reference))) return 0.0;
  return diff > 0 ? std::numeric_limits<double>::infinity()
                  : -std::numeric_limits<double>::infinity();
}

bool EstimatorResult::pass(double threshold) const {
  const auto z = z_score();
  return !z || std::abs(*z) <= threshold;
}

EstimatorResult make_result(const RunningStats& stats, std::uint64_t seed, double scale) {
  EstimatorResult r;
  r.estimate = scale * stats.mean;
  r.std_error = std::abs(scale) * stats.std_error();
  r.n_samples = stats.count;
  r.seed = seed;
  return r;
}

void to_json(nlohmann::json& j, const EstimatorResult& r) {
  j = nlohmann::json{{"estimate", r.estimate},
                     {"std_error", r.std_error},
                     {"n_samples", r.n_samples},
                     {"seed", r.seed}};
  j["reference"] = r.reference ? nlohmann::json(*r.reference) : nlohmann::json(nullptr);
  if (r.reference_std_error) j["reference_std_error"] = *r.reference_std_error;
  const auto z = r.z_score();
  j["z_score"] = (z && std::isfinite(*z)) ? nlohmann::json(*z) : nlohmann::json(nullptr);
  j["pass"] = r.pass();
}

}  // namespace mehtalab
