#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "holed/map_model.hpp"

namespace holed {

/// All level-n survivor components sharing one itinerary. T^n acts on each
/// component as the same Möbius composite.
struct Cylinder {
  std::vector<uint16_t> itinerary;
  IntervalOpen support;                 // hull of the components
  std::vector<IntervalOpen> components;
  Moebius composite;                    // T^n restricted to the cylinder

  size_t level() const { return itinerary.size(); }
};

struct RefineOptions {
  bool keep_levels = true;
  uint64_t component_cap = 10'000'000;
};

class RefinementTree {
 public:
  const PiecewiseMap& map() const { return map_; }
  const Hole& hole() const { return hole_; }
  int depth() const { return depth_; }

  /// Positive-length survivor components at level n; 0 beyond extinction.
  uint64_t count(int n) const;
  /// Distinct surviving itineraries at level n (the set-valued cylinder count).
  uint64_t word_count(int n) const;
  /// Level at which the count first hit zero, if it did.
  std::optional<int> extinct_at() const { return extinct_at_; }

  /// Cylinders at level n. Only the final level is kept unless keep_levels.
  const std::vector<Cylinder>& level(int n) const;
  const std::vector<uint64_t>& counts() const { return counts_; }

 private:
  friend RefinementTree refine(const PiecewiseMap&, const Hole&, int, const RefineOptions&);
  RefinementTree(PiecewiseMap map, Hole hole) : map_(std::move(map)), hole_(std::move(hole)) {}

  PiecewiseMap map_;
  Hole hole_;
  int depth_ = 0;
  std::optional<int> extinct_at_;
  bool kept_all_ = true;
  std::vector<std::vector<Cylinder>> levels_;  // levels_[n-1]
  std::vector<uint64_t> counts_;               // counts_[n-1]
  std::vector<uint64_t> word_counts_;
};

RefinementTree refine(const PiecewiseMap& map, const Hole& hole, int n_max,
                      const RefineOptions& options = {});

/// (1/n) log⁺ of the level-n component count; 0 when everything escaped.
double entropy_estimate(const RefinementTree& tree, int n);

/// One nonnegative weight per branch.
struct LocallyConstantWeight {
  std::vector<Scalar> values;

  static LocallyConstantWeight constant(const PiecewiseMap& map, const Scalar& c);
};

/// (1/n) log of the sum over surviving level-n components of the product of
/// branch weights along the itinerary; -inf when the sum vanishes.
double pressure_estimate(const PiecewiseMap& map, const LocallyConstantWeight& weight,
                         const Hole& hole, int n);

struct ExpansionDiagnostics {
  int n = 0;
  double theta_n = 0;   // -inf when no level-n cylinder meets the survivor set
  double lambda_n = 0;
  double xi_n = 0;
  double a_n = 0;
  double A_n = 0;

  // Exact maxima behind the logs (same mode as the map).
  Scalar max_derivative;      // sup_Z sup|D(T^n)|
  Scalar max_expansion_ratio; // sup_Z sup|D(T^n)| / m(T^n Z)
  Scalar a_n_exact;
  Scalar A_n_exact;
  Scalar max_variation;       // sup_Z var_Z(g_n) for the indicator weight
  uint64_t cylinders = 0;     // Card of the unrestricted level-n partition
  uint64_t survivors = 0;     // survivor components across all cylinders
};

/// Diagnostics for levels 1..n_max in a single pass, using the indicator
/// weight of `hole` (empty hole: weight ≡ 1).
std::vector<ExpansionDiagnostics> expansion_diagnostics_levels(
    const PiecewiseMap& map, const Hole& hole, int n_max, uint64_t node_cap = 50'000'000);

ExpansionDiagnostics expansion_diagnostics(const PiecewiseMap& map, int n, const Hole& hole = {});

/// `level,count,entropy_estimate` rows for levels 1..depth.
void write_counts_csv(std::ostream& os, const RefinementTree& tree);

}  // namespace holed
