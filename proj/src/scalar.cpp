#include "holed/scalar.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "holed/error.hpp"

namespace holed {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::ModeMismatch: return "mode-mismatch";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::EmptyPartition: return "empty-partition";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::NoRoot: return "no-root";
    case ErrorKind::NotFinitelyMarkov: return "not-finitely-markov";
    case ErrorKind::Ambiguity: return "ambiguity";
    case ErrorKind::Io: return "io-error";
  }
  return "unknown";
}

Scalar::Scalar(Rational q) : value_(std::move(q)) {
  std::get<Rational>(value_).canonicalize();
}

Scalar Scalar::exact(long num, long den) {
  if (den == 0) fail(ErrorKind::InvalidParameter, "zero denominator");
  return Scalar(Rational(num, den));
}

Scalar Scalar::floating(double v, double epsilon) {
  if (!(epsilon > 0)) fail(ErrorKind::InvalidParameter, "float epsilon must be positive");
  if (!std::isfinite(v)) fail(ErrorKind::InvalidParameter, "non-finite float value");
  return Scalar(v, epsilon);
}

Scalar Scalar::constant_like(const Scalar& like, const Rational& q) {
  if (like.is_exact()) return Scalar(q);
  return Scalar(q.get_d(), like.eps_);
}

const Rational& Scalar::rational() const {
  if (!is_exact()) fail(ErrorKind::ModeMismatch, "exact value requested from a float scalar");
  return std::get<Rational>(value_);
}

double Scalar::to_double() const {
  if (is_exact()) return std::get<Rational>(value_).get_d();
  return std::get<double>(value_);
}

Scalar Scalar::as_float(double epsilon) const {
  if (is_exact()) return Scalar(std::get<Rational>(value_).get_d(), epsilon);
  return Scalar(std::get<double>(value_), epsilon);
}

void Scalar::check_same_mode(const Scalar& other, const char* op) const {
  if (value_.index() != other.value_.index()) {
    fail(ErrorKind::ModeMismatch,
         std::string("cannot mix exact and float scalars in ") + op);
  }
}

int Scalar::compare(const Scalar& other) const {
  check_same_mode(other, "comparison");
  if (is_exact()) {
    int c = cmp(std::get<Rational>(value_), std::get<Rational>(other.value_));
    return (c > 0) - (c < 0);
  }
  double a = std::get<double>(value_);
  double b = std::get<double>(other.value_);
  double eps = std::max(eps_, other.eps_);
  if (std::fabs(a - b) <= eps) return 0;
  return a < b ? -1 : 1;
}

int Scalar::sign() const {
  if (is_exact()) return sgn(std::get<Rational>(value_));
  double a = std::get<double>(value_);
  if (std::fabs(a) <= eps_) return 0;
  return a < 0 ? -1 : 1;
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-std::get<Rational>(value_)));
  return Scalar(-std::get<double>(value_), eps_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  a.check_same_mode(b, "addition");
  if (a.is_exact()) return Scalar(Rational(std::get<Rational>(a.value_) + std::get<Rational>(b.value_)));
  return Scalar(std::get<double>(a.value_) + std::get<double>(b.value_), std::max(a.eps_, b.eps_));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  a.check_same_mode(b, "subtraction");
  if (a.is_exact()) return Scalar(Rational(std::get<Rational>(a.value_) - std::get<Rational>(b.value_)));
  return Scalar(std::get<double>(a.value_) - std::get<double>(b.value_), std::max(a.eps_, b.eps_));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  a.check_same_mode(b, "multiplication");
  if (a.is_exact()) return Scalar(Rational(std::get<Rational>(a.value_) * std::get<Rational>(b.value_)));
  return Scalar(std::get<double>(a.value_) * std::get<double>(b.value_), std::max(a.eps_, b.eps_));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  a.check_same_mode(b, "division");
  if (a.is_exact()) {
    const Rational& den = std::get<Rational>(b.value_);
    if (sgn(den) == 0) fail(ErrorKind::InvalidParameter, "division by zero");
    return Scalar(Rational(std::get<Rational>(a.value_) / den));
  }
  double den = std::get<double>(b.value_);
  if (den == 0.0) fail(ErrorKind::InvalidParameter, "division by zero");
  return Scalar(std::get<double>(a.value_) / den, std::max(a.eps_, b.eps_));
}

bool Scalar::identical(const Scalar& other) const {
  if (value_.index() != other.value_.index()) return false;
  if (is_exact()) return std::get<Rational>(value_) == std::get<Rational>(other.value_);
  return std::get<double>(value_) == std::get<double>(other.value_);
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string Scalar::to_string() const {
  if (is_exact()) return rational_to_string(std::get<Rational>(value_));
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(value_));
  return buf;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar min(const Scalar& a, const Scalar& b) { return b.compare(a) < 0 ? b : a; }
Scalar max(const Scalar& a, const Scalar& b) { return b.compare(a) > 0 ? b : a; }

namespace {

double log_integer(const Integer& z) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace

double log_rational(const Rational& q) {
  if (sgn(q) <= 0) fail(ErrorKind::InvalidParameter, "log of non-positive value");
  return log_integer(q.get_num()) - log_integer(q.get_den());
}

double log_scalar(const Scalar& s) {
  if (s.is_exact()) return log_rational(s.rational());
  double v = s.to_double();
  if (!(v > 0)) fail(ErrorKind::InvalidParameter, "log of non-positive value");
  return std::log(v);
}

bool is_decimal_literal(std::string_view text) {
  return text.find_first_of(".eE") != std::string_view::npos;
}

namespace {

bool parse_integer(std::string_view text, Integer& out) {
  if (text.empty()) return false;
  size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) return false;
  for (size_t k = i; k < text.size(); ++k) {
    if (text[k] < '0' || text[k] > '9') return false;
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

// Exact value of a decimal literal such as "-0.125" or "1.5e-3".
bool parse_decimal_exact(std::string_view text, Rational& out) {
  std::string mant(text);
  long exp10 = 0;
  if (auto e = mant.find_first_of("eE"); e != std::string::npos) {
    Integer ez;
    if (!parse_integer(std::string_view(mant).substr(e + 1), ez) || !ez.fits_slong_p()) return false;
    exp10 = ez.get_si();
    mant.resize(e);
  }
  std::string digits;
  long frac = 0;
  bool seen_dot = false;
  for (size_t k = 0; k < mant.size(); ++k) {
    char c = mant[k];
    if (c == '.') {
      if (seen_dot) return false;
      seen_dot = true;
    } else if ((c == '-' || c == '+') && k == 0) {
      if (c == '-') digits.push_back('-');
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac;
    } else {
      return false;
    }
  }
  Integer num;
  if (!parse_integer(digits, num)) return false;
  long shift = exp10 - frac;
  if (shift > 4096 || shift < -4096) return false;
  Integer pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  out = shift >= 0 ? Rational(num * pow10) : Rational(num, pow10);
  out.canonicalize();
  return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text, bool decimal_exact, double epsilon) {
  auto bad = [&]() -> Scalar {
    fail(ErrorKind::Parse, "malformed number '" + std::string(text) + "'");
  };
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return bad();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num, den;
    if (!parse_integer(text.substr(0, slash), num) || !parse_integer(text.substr(slash + 1), den)) return bad();
    if (den == 0) fail(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return Scalar(q);
  }
  if (!is_decimal_literal(text)) {
    Integer num;
    if (!parse_integer(text, num)) return bad();
    return Scalar(Rational(num));
  }
  Rational q;
  if (!parse_decimal_exact(text, q)) return bad();
  if (decimal_exact) return Scalar(q);
  return Scalar::floating(std::stod(std::string(text)), epsilon);
}

}  // namespace holed
