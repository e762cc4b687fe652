#include "holed/compare.hpp"

#include <cmath>

#include "holed/cylinder.hpp"
#include "holed/error.hpp"
#include "holed/kneading.hpp"
#include "holed/markov.hpp"

namespace holed {

std::optional<Scalar> left_hole_parameter(const PiecewiseMap& map, const Hole& hole) {
  if (!is_doubling_map(map) || hole.pieces().size() != 1) return std::nullopt;
  const auto& p = hole.pieces()[0];
  const Scalar half = Scalar::constant_like(p.lo, Rational(1, 2));
  if (!(p.hi == Scalar::constant_like(p.hi, Rational(1))) || !(p.lo > half) || !(p.lo < p.hi)) return std::nullopt;
  return p.lo;
}

EngineComparison compare_engines(const PiecewiseMap& map, const Hole& hole, int n) {
  EngineComparison out;
  out.n = n;
  RefineOptions opts;
  opts.keep_levels = false;
  out.oracle = entropy_estimate(refine(map, hole, n, opts), n);

  if (auto a = left_hole_parameter(map, hole)) {
    try {
      double h = entropy_left_hole(*a).root.entropy;
      out.kneading = EngineValue{h, std::abs(h - out.oracle)};
    } catch (const Error& e) {
      out.kneading_note = e.what();
    }
  } else {
    out.kneading_note = "needs the doubling map with a hole [a,1]";
  }

  try {
    double h = entropy_markov(map, hole).entropy;
    out.markov = EngineValue{h, std::abs(h - out.oracle)};
  } catch (const Error& e) {
    out.markov_note = e.what();
  }
  return out;
}

}  // namespace holed
