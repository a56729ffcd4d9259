#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hybrid_centers/core_model.hpp"
#include "json.hpp"

namespace hc {

/// Optional "analysis" block of a spec file.
struct AnalysisSettings {
  /// Threshold for calling a multiplier neutral.
  std::optional<double> tolerance;
  int max_iter = 500;
  std::optional<int> max_period;
  int max_events = 1000;
  double max_time = 1e6;
  int samples = 64;
  std::uint64_t seed = 1;
  friend bool operator==(const AnalysisSettings&, const AnalysisSettings&) = default;
};

struct SystemSpec {
  HybridSystem system;
  AnalysisSettings analysis;
};

/// Throws SpecError naming the line and field at fault.
SystemSpec parse_spec(const std::string& text);
SystemSpec load_spec(const std::string& path);

nlohmann::ordered_json center_to_json(const LinearCenter& c);
nlohmann::ordered_json system_to_json(const HybridSystem& system);
nlohmann::ordered_json spec_to_json(const SystemSpec& spec);

}  // namespace hc
