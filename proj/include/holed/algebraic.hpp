#pragma once

#include <optional>
#include <vector>

#include "holed/polynomial.hpp"

namespace holed {

/// A real algebraic number given as the only root of a squarefree polynomial
/// in the half-open interval (lo, hi]. Rational roots are stored with
/// lo == hi and a linear polynomial.
struct RealRoot {
  Poly poly;
  Rational lo;
  Rational hi;

  bool is_rational() const { return lo == hi; }
  /// True if the root of `factor` set includes this number.
  bool is_root_of(const Poly& factor) const;
  /// Bisect until hi - lo < 2^-bits (no-op for rational roots).
  void refine(int bits);
  double approx() const;
};

/// Largest real root of p, or nothing if p has no real roots.
std::optional<RealRoot> largest_real_root(const Poly& p);

/// Arithmetic in Q(ρ) without factoring: elements are polynomials modulo a
/// squarefree multiple of the minimal polynomial of ρ. Whenever a zero test
/// meets a zero divisor the modulus is split and the factor vanishing at ρ
/// is kept, so every answer agrees with evaluation at ρ.
class AlgebraicField {
 public:
  explicit AlgebraicField(RealRoot rho);

  const Poly& modulus() const { return rho_.poly; }
  const RealRoot& root() const { return rho_; }
  /// The element x, i.e. ρ itself.
  Poly generator() const;

  Poly reduce(const Poly& e) const { return e % rho_.poly; }
  Poly mul(const Poly& a, const Poly& b) const { return reduce(a * b); }
  bool is_zero(const Poly& e);
  /// Inverse of an element that is nonzero at ρ.
  Poly inverse(const Poly& e);

 private:
  RealRoot rho_;
};

using PolyMatrix = std::vector<std::vector<Poly>>;

/// Rank over Q(ρ).
int rank(PolyMatrix m, AlgebraicField& field);
PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, const AlgebraicField& field);

}  // namespace holed
