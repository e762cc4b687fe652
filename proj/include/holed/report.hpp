#pragma once

#include "holed/compare.hpp"
#include "holed/config.hpp"
#include "holed/cylinder.hpp"
#include "holed/kneading.hpp"
#include "holed/markov.hpp"
#include "holed/regularity.hpp"

namespace holed {

/// {a, entropy, r, p, termination, K, error_bound}
json to_json(const KneadingResult& r);
/// Orbit, index set and determinant details for the tower subcommand.
json to_json(const TowerOrbit& orbit, const DeterminantSeries& d);
/// {states, matrix, char_poly_coeffs, rho, alg_mult, geo_mult, p, entropy, ...}
json to_json(const MarkovEntropy& m);
json to_json(const SweepResult& r);
json to_json(const HolderEstimate& e, const HolderCheck& c);
json to_json(const ExpansionDiagnostics& d);
json to_json(const EngineComparison& c);
json counts_json(const RefinementTree& tree);

/// Integers that fit in 64 bits as JSON numbers, larger ones as strings.
json integer_json(const Integer& z);

}  // namespace holed
