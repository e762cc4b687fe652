#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "holed/config.hpp"
#include "holed/kneading.hpp"
#include "holed/map_model.hpp"
#include "holed/markov.hpp"

namespace holed {

enum class FamilyKind { LeftHole, SlidingHole, Custom };

/// s -> H_s. LeftHole: [s, 1]. SlidingHole: [s, s + width]. Custom: an
/// explicit list of (s, hole) pairs.
struct HoleFamily {
  FamilyKind kind = FamilyKind::LeftHole;
  Scalar width;
  std::vector<std::pair<Scalar, Hole>> custom;

  Hole at(const Scalar& s) const;
  /// Throws InvalidParameter outside (1/2, 1) resp. (0, 1 - width).
  void check(const Scalar& s) const;
  std::string name() const;
};

enum class EngineKind { Kneading, Markov, Oracle };

const char* to_string(EngineKind e);
EngineKind engine_from_string(const std::string& name);

struct EngineParams {
  int K = kDefaultTruncation;
  double tol = kDefaultRootTolerance;
  int n = 20;                     // oracle level
  int orbit_cap = kDefaultOrbitCap;
  double spectral_tol = 1e-9;
};

struct Grid {
  Scalar start;
  Scalar end;
  int count = 2;
  /// Snap to multiples of 2^-J with 2^-J at most 1/64 of the spacing.
  bool dyadic = true;
  std::vector<Scalar> extra;  // points added to the grid, e.g. 3/4
};

std::vector<Scalar> grid_points(const Grid& grid);

struct SweepSpec {
  PiecewiseMap map = build_d_adic(2);
  HoleFamily family;
  Grid grid;
  EngineKind engine = EngineKind::Kneading;
  EngineParams params;
  int threads = 0;  // 0: hardware concurrency
};

struct SweepRow {
  Scalar s;
  double entropy = 0;
  int p = 0;                 // 0 when the engine does not determine it
  std::string engine;
  double error_bound = 0;    // NaN when the engine gives no bound
  std::string status = "ok";
  bool ok() const { return status == "ok"; }
};

struct SweepResult {
  std::vector<SweepRow> rows;
  json metadata;
};

/// One engine evaluation; failures are reported in the row status.
SweepRow evaluate_point(const SweepSpec& spec, const Scalar& s);
SweepResult run_sweep(const SweepSpec& spec);

/// Entropy of H_s with the spec's engine; throws on failure.
using EntropyFunction = std::function<double(const Scalar&)>;
EntropyFunction entropy_function(const SweepSpec& spec);

struct HolderEstimate {
  Scalar t;
  double h_t = 0;
  int p = 1;
  double xi = 0;
  double alpha_target = 0;
  double alpha_used = 0;  // alpha_target unless overridden
  double fitted_exponent = 0;
  double fit_residual = 0;
  double constant_C = 0;
  std::vector<double> mesh_sizes;
  std::vector<double> max_diff;    // max |h(t±δ) - h(t)| per mesh size
  std::vector<double> C_per_mesh;  // max_diff / δ^alpha_used
  bool locally_constant = false;
  bool skipped = false;  // h(t) = 0
  std::string note;
};

/// 2^-lo, ..., 2^-hi as exact scalars.
std::vector<Scalar> dyadic_scales(int lo, int hi);

HolderEstimate holder_estimate(const EntropyFunction& h, const Scalar& t, int p, double xi,
                               const std::vector<Scalar>& scales, std::optional<double> alpha = std::nullopt);

struct HolderCheck {
  bool pass = false;
  double constant_C = 0;
  double growth = 0;  // stability statistic compared against the factor
  std::string reason;
};

inline constexpr double kHolderStabilityFactor = 4.0;

HolderCheck verify_holder_bound(const HolderEstimate& est, double factor = kHolderStabilityFactor);

/// s,entropy,p,engine,error_bound,status[,s_exact]
void emit_csv(std::ostream& os, const SweepResult& result, bool exact_column = true);
void emit_csv(const std::string& path, const SweepResult& result, bool exact_column = true);

struct PlotStyle {
  std::string title = "topological entropy";
  std::string x_label = "s";
  std::string y_label = "h";
};

void emit_svg(std::ostream& os, const SweepResult& result, const PlotStyle& style = {});
void emit_svg(const std::string& path, const SweepResult& result, const PlotStyle& style = {});

}  // namespace holed
