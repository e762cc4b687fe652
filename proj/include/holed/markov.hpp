#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "holed/algebraic.hpp"
#include "holed/map_model.hpp"
#include "holed/polynomial.hpp"

namespace holed {

/// Partition of the survivor set cut at the forward orbits of all branch and
/// hole endpoints. Every state maps monotonically onto a union of
/// consecutive inter-breakpoint intervals.
struct MarkovRefinement {
  std::vector<Rational> breakpoints;
  std::vector<IntervalOpen> states;
  std::vector<size_t> state_branch;
  std::vector<IntervalOpen> images;  // T(state) per state
};

inline constexpr int kDefaultOrbitCap = 10'000;

/// Requires exact input. Throws NotFinitelyMarkov if more than orbit_cap
/// breakpoints are generated before the set closes.
MarkovRefinement refine_markov(const PiecewiseMap& map, const Hole& hole, int orbit_cap = kDefaultOrbitCap);

struct TransitionMatrix {
  size_t size = 0;
  IntMatrix entries;
  std::vector<Integer> char_poly;  // monic det(λI − M), lowest degree first
};

TransitionMatrix transition_matrix(const MarkovRefinement& ref);

struct SpectralReport {
  double rho = 0;
  /// ρ as the unique root of `rho_poly` in (rho_lo, rho_hi]; rho_lo == rho_hi
  /// when ρ is rational.
  Poly rho_poly;
  Rational rho_lo, rho_hi;
  /// rho_poly is known irreducible (degree one, or degree ≤ 3 without
  /// rational roots).
  bool rho_poly_minimal = false;
  int algebraic_multiplicity = 0;
  int geometric_multiplicity = 0;
  int pole_order_p = 0;
  double second_eigenvalue_modulus = 0;
};

/// Perron root, its multiplicities and the index of the eigenvalue
/// (order of the resolvent pole). `tol` only separates the numerically
/// computed remaining spectrum from ρ.
SpectralReport spectral_report(const TransitionMatrix& m, double tol = 1e-9);

struct MarkovEntropy {
  double entropy = 0;
  SpectralReport report;
  MarkovRefinement refinement;
  TransitionMatrix matrix;
};

MarkovEntropy entropy_markov(const PiecewiseMap& map, const Hole& hole, int orbit_cap = kDefaultOrbitCap,
                             double tol = 1e-9);

/// Transition graph in Graphviz DOT.
void write_dot(std::ostream& os, const MarkovRefinement& ref, const TransitionMatrix& m);

}  // namespace holed
