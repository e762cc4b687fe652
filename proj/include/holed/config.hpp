#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "holed/map_model.hpp"

namespace holed {

using json = nlohmann::json;

/// A map and an optional hole read from a JSON document of the form
///   { "name": "...", "mode": "exact" | "float", "epsilon": 1e-12,
///     "codomain": [lo, hi],
///     "branches": [{"domain": [lo, hi], "kind": "affine" | "moebius", "coeffs": [...]}],
///     "hole": [[lo, hi], ...] }
/// Numbers are strings ("3/4", "0.75") or JSON integers. Decimal strings are
/// exact unless mode is "float".
struct MapConfig {
  PiecewiseMap map;
  std::optional<Hole> hole;
};

MapConfig parse_map_config(const json& doc);
MapConfig load_map_config(const std::string& path);

/// Inverse of parse_map_config; exact values are written as "num/den",
/// floats with 17 significant digits so they re-parse bit for bit.
json dump_map_config(const PiecewiseMap& map, const std::optional<Hole>& hole = std::nullopt);

json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& v, bool float_mode, double epsilon);

}  // namespace holed
