#pragma once

#include <optional>
#include <string>

#include "holed/map_model.hpp"

namespace holed {

/// If the map is the doubling map and the hole is a single [a, 1] with
/// 1/2 < a < 1, returns a.
std::optional<Scalar> left_hole_parameter(const PiecewiseMap& map, const Hole& hole);

struct EngineValue {
  double entropy = 0;
  double diff_to_oracle = 0;
};

struct EngineComparison {
  int n = 0;
  double oracle = 0;
  std::optional<EngineValue> kneading;
  std::optional<EngineValue> markov;
  std::string kneading_note;  // reason the engine was skipped
  std::string markov_note;
};

/// Cylinder estimate at level n next to every other engine that applies.
EngineComparison compare_engines(const PiecewiseMap& map, const Hole& hole, int n);

}  // namespace holed
