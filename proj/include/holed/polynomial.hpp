#pragma once

#include <string>
#include <vector>

#include "holed/scalar.hpp"

namespace holed {

/// Dense univariate polynomial over Q, coefficients lowest degree first.
/// The zero polynomial has no coefficients and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<long> coeffs);

  static Poly from_integers(const std::vector<Integer>& coeffs);
  static Poly monomial(const Rational& c, int degree);
  static Poly x_minus(const Rational& root) { return Poly(std::vector<Rational>{-root, Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const;
  const Rational& leading() const { return c_.back(); }

  Poly monic() const;
  Poly derivative() const;
  Rational eval(const Rational& x) const;
  int sign_at(const Rational& x) const { return sgn(eval(x)); }
  double eval(double x) const;

  /// Integer coefficients, if every coefficient is integral.
  bool integral() const;
  std::vector<Integer> integer_coeffs() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& k, const Poly& a);
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct PolyDivision {
  Poly quotient;
  Poly remainder;
};

PolyDivision divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
/// Division that must be exact; throws otherwise.
Poly exact_quotient(const Poly& a, const Poly& b);
/// Monic gcd (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);
/// s with s·a ≡ gcd(a, m) (mod m); used for inverses modulo m.
Poly bezout_coefficient(const Poly& a, const Poly& m);

/// Yun decomposition: factors f[0], f[1], ... with p = lc · ∏ f[i]^(i+1),
/// each f[i] monic, squarefree, pairwise coprime (some may be 1).
std::vector<Poly> squarefree_decomposition(const Poly& p);
Poly squarefree_part(const Poly& p);

/// Sturm chain of a squarefree polynomial.
class SturmSequence {
 public:
  explicit SturmSequence(const Poly& squarefree);
  int variations(const Rational& x) const;
  /// Number of distinct real roots in the half-open interval (a, b].
  int count_roots(const Rational& a, const Rational& b) const;

 private:
  std::vector<Poly> chain_;
};

/// Every real root has absolute value strictly below this bound.
Rational root_bound(const Poly& p);

using IntMatrix = std::vector<std::vector<long>>;

/// det(λI − M) with exact integer coefficients, lowest degree first, by the
/// division-free Berkowitz recursion.
std::vector<Integer> characteristic_polynomial(const IntMatrix& m);

}  // namespace holed
