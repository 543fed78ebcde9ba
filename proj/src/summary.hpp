#pragma once

// Shared CSV / JSON layout of run outputs (internal).

#include <string>
#include <vector>

#include <json.hpp>

#include "bsubgrad/bounds.hpp"
#include "bsubgrad/solver.hpp"

namespace bsubgrad::detail {

using Json = nlohmann::ordered_json;

inline constexpr const char* kRunFormat = "bsubgrad-run/1";
inline constexpr const char* kSweepFormat = "bsubgrad-sweep/1";

/// Everything needed to recompute bounds from stored sums.
struct BoundContext {
  double mu = 0.0;
  InexactnessModel model = InexactnessModel::exact();
  StepRuleKind rule = StepRuleKind::ExactTheorem;
  std::optional<double> lipschitz;
  LipschitzMode mode = LipschitzMode::Analytic;

  BoundReport at(const Aggregates& sums, std::uint64_t k) const {
    return evaluate_bounds(sums, k, mu, model, rule, lipschitz, mode);
  }
};

const std::vector<std::string>& csv_columns();
std::string csv_header();
/// Data fields of one row, empty strings for inapplicable columns.
std::vector<std::string> csv_fields(const Checkpoint& cp, const BoundReport& report);
std::string join_csv(const std::vector<std::string>& fields);

Json bounds_json(const BoundReport& report);
Json checkpoint_json(const Checkpoint& cp);
Checkpoint checkpoint_from_json(const Json& j, double delta);
Json context_json(const BoundContext& ctx);
BoundContext context_from_json(const Json& j);

/// "fnv1a64:<16 hex digits>" over the compact dump of `payload`.
std::string checksum(const Json& payload);

struct Violation {
  std::uint64_t k = 0;
  std::string what;
};

/// Gap and distance against the certified bounds at every checkpoint.
std::vector<Violation> validity_violations(const std::vector<Checkpoint>& cps,
                                           const BoundContext& ctx, double f_star);
/// New bounds against the classical ones at every checkpoint.
std::vector<Violation> dominance_violations(const std::vector<Checkpoint>& cps,
                                            const BoundContext& ctx);

}  // namespace bsubgrad::detail
