#include "holed/polynomial.hpp"

#include <sstream>

#include "holed/error.hpp"

namespace holed {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<long> coeffs) {
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

Poly Poly::from_integers(const std::vector<Integer>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (const auto& z : coeffs) c.emplace_back(z);
  return Poly(std::move(c));
}

Poly Poly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return c_[k];
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rational lc = leading();
  std::vector<Rational> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] / lc;
  return Poly(std::move(c));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> c(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(c));
}

Rational Poly::eval(const Rational& x) const {
  Rational acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

double Poly::eval(double x) const {
  double acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].get_d();
  return acc;
}

bool Poly::integral() const {
  for (const auto& q : c_) {
    if (q.get_den() != 1) return false;
  }
  return true;
}

std::vector<Integer> Poly::integer_coeffs() const {
  if (!integral()) fail(ErrorKind::InvalidParameter, "polynomial has non-integral coefficients");
  std::vector<Integer> out;
  for (const auto& q : c_) out.push_back(q.get_num());
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c));
}

Poly Poly::operator-() const {
  std::vector<Rational> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(c));
}

Poly operator*(const Rational& k, const Poly& a) {
  std::vector<Rational> c(a.c_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = k * a.c_[i];
  return Poly(std::move(c));
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    const Rational& q = c_[i];
    if (sgn(q) == 0) continue;
    Rational mag = abs(q);
    os << (sgn(q) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (mag != 1 || i == 0) os << rational_to_string(mag);
    if (i > 0) os << var;
    if (i > 1) os << '^' << i;
    first = false;
  }
  return os.str();
}

PolyDivision divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorKind::InvalidParameter, "polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  int db = b.degree();
  int dq = a.degree() - db;
  if (dq < 0) return {Poly(), a};
  std::vector<Rational> q(dq + 1);
  const Rational& lb = b.leading();
  for (int k = dq; k >= 0; --k) {
    Rational f = r[k + db] / lb;
    q[k] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= db; ++j) r[k + j] -= f * b.coeffs()[j];
  }
  r.resize(db);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }

Poly exact_quotient(const Poly& a, const Poly& b) {
  auto d = divmod(a, b);
  if (!d.remainder.is_zero()) fail(ErrorKind::InvalidParameter, "inexact polynomial division");
  return d.quotient;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = (x % y).monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly bezout_coefficient(const Poly& a, const Poly& m) {
  // Extended Euclid tracking only the coefficient of a.
  Poly r0 = m, r1 = a % m;
  Poly s0, s1 = Poly{1};
  while (!r1.is_zero()) {
    auto d = divmod(r0, r1);
    Poly s2 = s0 - d.quotient * s1;
    r0 = std::move(r1);
    r1 = std::move(d.remainder);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 = s0·a (mod m); normalize so that s0·a ≡ monic gcd.
  return (Rational(1) / r0.leading()) * s0 % m;
}

std::vector<Poly> squarefree_decomposition(const Poly& p) {
  if (p.degree() < 1) return {};
  Poly dp = p.derivative();
  Poly b = gcd(p, dp);
  Poly c = exact_quotient(p, b).monic();
  Poly d = exact_quotient(dp, b) - exact_quotient(p, b).derivative();
  d = (Rational(1) / exact_quotient(p, b).leading()) * d;
  std::vector<Poly> out;
  while (c.degree() > 0) {
    Poly a = gcd(c, d);
    out.push_back(a);
    c = exact_quotient(c, a);
    d = exact_quotient(d, a) - c.derivative();
  }
  return out;
}

Poly squarefree_part(const Poly& p) {
  if (p.degree() < 1) return p.is_zero() ? p : Poly{1};
  return exact_quotient(p, gcd(p, p.derivative())).monic();
}

SturmSequence::SturmSequence(const Poly& squarefree) {
  if (squarefree.is_zero()) fail(ErrorKind::InvalidParameter, "Sturm sequence of the zero polynomial");
  chain_.push_back(squarefree);
  if (squarefree.degree() < 1) return;
  chain_.push_back(squarefree.derivative());
  while (chain_.back().degree() > 0) {
    Poly r = -(chain_[chain_.size() - 2] % chain_.back());
    if (r.is_zero()) break;
    // Positive rescaling keeps the sign pattern and tames coefficient growth.
    chain_.push_back((Rational(1) / abs(r.leading())) * r);
  }
}

int SturmSequence::variations(const Rational& x) const {
  int v = 0, prev = 0;
  for (const auto& p : chain_) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

int SturmSequence::count_roots(const Rational& a, const Rational& b) const {
  return variations(a) - variations(b);
}

Rational root_bound(const Poly& p) {
  if (p.degree() < 1) return 1;
  Rational m = 0;
  for (int k = 0; k < p.degree(); ++k) {
    Rational r = abs(p.coeffs()[k] / p.leading());
    if (r > m) m = r;
  }
  return m + 1;
}

std::vector<Integer> characteristic_polynomial(const IntMatrix& m) {
  const size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) fail(ErrorKind::InvalidParameter, "characteristic polynomial needs a square matrix");
  }
  if (n == 0) return {Integer(1)};
  // c holds coefficients highest degree first for the leading r×r block.
  std::vector<Integer> c = {Integer(1), Integer(-m[0][0])};
  for (size_t r = 1; r < n; ++r) {
    // Leading block A (r×r), row R = m[r][0..r), column C = m[0..r)[r].
    // First Toeplitz column: 1, -m[r][r], -R C, -R A C, ..., -R A^(r-1) C.
    std::vector<Integer> col(r + 2);
    col[0] = 1;
    col[1] = -m[r][r];
    std::vector<Integer> v(r);  // A^k C
    for (size_t i = 0; i < r; ++i) v[i] = m[i][r];
    for (size_t k = 0; k < r; ++k) {
      Integer dot = 0;
      for (size_t i = 0; i < r; ++i) {
        if (m[r][i] != 0) dot += m[r][i] * v[i];
      }
      col[k + 2] = -dot;
      if (k + 1 == r) break;
      std::vector<Integer> w(r);
      for (size_t i = 0; i < r; ++i) {
        Integer acc = 0;
        for (size_t j = 0; j < r; ++j) {
          if (m[i][j] != 0) acc += m[i][j] * v[j];
        }
        w[i] = std::move(acc);
      }
      v = std::move(w);
    }
    // Lower-triangular Toeplitz product: next[i] = Σ_j col[i-j] c[j].
    std::vector<Integer> next(r + 2);
    for (size_t i = 0; i < r + 2; ++i) {
      Integer acc = 0;
      for (size_t j = 0; j <= i && j < c.size(); ++j) acc += col[i - j] * c[j];
      next[i] = std::move(acc);
    }
    c = std::move(next);
  }
  return {c.rbegin(), c.rend()};
}

}  // namespace holed
