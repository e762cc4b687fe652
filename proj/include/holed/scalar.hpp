#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace holed {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Mode { Exact, Float };

inline constexpr double kDefaultEpsilon = 1e-12;

/// A real parameter that is either an exact rational or a binary float that
/// carries its own classification tolerance. Arithmetic between the two modes
/// is refused rather than silently promoted.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(int v) : value_(Rational(v)) {}  // NOLINT: exact literals
  Scalar(long v) : value_(Rational(v)) {}  // NOLINT
  explicit Scalar(Rational q);

  static Scalar exact(Rational q) { return Scalar(std::move(q)); }
  static Scalar exact(long num, long den);
  static Scalar floating(double v, double epsilon = kDefaultEpsilon);

  /// A constant with the same mode (and epsilon) as `like`.
  static Scalar constant_like(const Scalar& like, const Rational& q);

  Mode mode() const { return value_.index() == 0 ? Mode::Exact : Mode::Float; }
  bool is_exact() const { return value_.index() == 0; }
  double epsilon() const { return eps_; }

  /// Throws ModeMismatch when the scalar is a float.
  const Rational& rational() const;
  double to_double() const;

  /// Convert to float mode. Exact values are rounded to nearest double.
  Scalar as_float(double epsilon = kDefaultEpsilon) const;

  /// Tolerance-aware three-way comparison: in float mode two values within
  /// epsilon compare equal.
  int compare(const Scalar& other) const;
  int sign() const;
  bool is_zero() const { return sign() == 0; }

  Scalar operator-() const;
  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.compare(b) == 0;
  }
  friend std::weak_ordering operator<=>(const Scalar& a, const Scalar& b) {
    int c = a.compare(b);
    return c < 0 ? std::weak_ordering::less
                 : (c > 0 ? std::weak_ordering::greater
                          : std::weak_ordering::equivalent);
  }

  /// Bitwise identity (same mode, same value); no tolerance.
  bool identical(const Scalar& other) const;

  /// "num/den" (or "num" for integers) in exact mode, 17 significant digits
  /// otherwise.
  std::string to_string() const;

 private:
  Scalar(double v, double eps) : value_(v), eps_(eps) {}
  void check_same_mode(const Scalar& other, const char* op) const;

  std::variant<Rational, double> value_;
  double eps_ = kDefaultEpsilon;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

Scalar min(const Scalar& a, const Scalar& b);
Scalar max(const Scalar& a, const Scalar& b);

/// Natural log of a positive rational, accurate for values far outside the
/// double range.
double log_rational(const Rational& q);
double log_scalar(const Scalar& s);

/// Parse "num/den" or an integer as exact. Decimal strings ("0.75") parse as
/// exact rationals when `decimal_exact` is set, otherwise as floats.
Scalar parse_scalar(std::string_view text, bool decimal_exact,
                    double epsilon = kDefaultEpsilon);

/// True if the literal is written as a bare decimal (contains '.', 'e' or 'E').
bool is_decimal_literal(std::string_view text);

std::string rational_to_string(const Rational& q);

}  // namespace holed
