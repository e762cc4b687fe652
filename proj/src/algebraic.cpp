#include "holed/algebraic.hpp"

#include "holed/error.hpp"

namespace holed {

bool RealRoot::is_root_of(const Poly& factor) const {
  if (factor.is_zero()) return true;
  if (is_rational()) return factor.sign_at(lo) == 0;
  return SturmSequence(squarefree_part(factor)).count_roots(lo, hi) > 0;
}

void RealRoot::refine(int bits) {
  if (is_rational()) return;
  Rational width_goal(1);
  width_goal /= Rational(Integer(1) << bits);
  int s_hi = poly.sign_at(hi);
  while (hi - lo >= width_goal) {
    Rational mid = (lo + hi) / 2;
    int s = poly.sign_at(mid);
    if (s == 0) {
      lo = hi = mid;
      poly = Poly::x_minus(mid);
      return;
    }
    if (s == s_hi) hi = mid; else lo = mid;
  }
}

double RealRoot::approx() const { return Rational((lo + hi) / 2).get_d(); }

std::optional<RealRoot> largest_real_root(const Poly& p) {
  Poly g = squarefree_part(p);
  if (g.degree() < 1) return std::nullopt;
  SturmSequence sturm(g);
  Rational bound = root_bound(g);
  Rational lo = -bound, hi = bound;
  if (sturm.count_roots(lo, hi) == 0) return std::nullopt;
  // Keep (lo, hi] holding the largest root and shrink until it is isolated
  // and g does not vanish at lo.
  while (sturm.count_roots(lo, hi) > 1 || g.sign_at(lo) == 0) {
    Rational mid = (lo + hi) / 2;
    if (sturm.count_roots(mid, hi) >= 1) lo = mid; else hi = mid;
  }
  if (g.sign_at(hi) == 0) return RealRoot{Poly::x_minus(hi), hi, hi};
  RealRoot root{g, lo, hi};
  // Monic integer polynomials only have integral rational roots.
  while (root.hi - root.lo >= 1) root.refine(0);
  if (!root.is_rational()) {
    Integer k;
    mpz_cdiv_q(k.get_mpz_t(), root.lo.get_num_mpz_t(), root.lo.get_den_mpz_t());
    if (Rational(k) <= root.hi && g.sign_at(Rational(k)) == 0) return RealRoot{Poly::x_minus(Rational(k)), k, k};
  }
  return root;
}

AlgebraicField::AlgebraicField(RealRoot rho) : rho_(std::move(rho)) {
  rho_.poly = rho_.poly.monic();
}

Poly AlgebraicField::generator() const { return reduce(Poly{0, 1}); }

bool AlgebraicField::is_zero(const Poly& e) {
  Poly r = reduce(e);
  if (r.is_zero()) return true;
  Poly h = gcd(r, rho_.poly);
  if (h.degree() < 1) return false;
  Poly rest = exact_quotient(rho_.poly, h).monic();
  if (rho_.is_root_of(h)) {
    rho_.poly = h;
    return true;
  }
  rho_.poly = rest;
  return false;
}

Poly AlgebraicField::inverse(const Poly& e) {
  if (is_zero(e)) fail(ErrorKind::InvalidParameter, "inverse of an element vanishing at the root");
  return bezout_coefficient(reduce(e), rho_.poly);
}

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, const AlgebraicField& field) {
  size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  PolyMatrix out(n, std::vector<Poly>(m));
  for (size_t i = 0; i < n; ++i) {
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (size_t j = 0; j < m; ++j) {
        if (b[l][j].is_zero()) continue;
        out[i][j] = out[i][j] + a[i][l] * b[l][j];
      }
    }
    for (auto& e : out[i]) e = field.reduce(e);
  }
  return out;
}

int rank(PolyMatrix m, AlgebraicField& field) {
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t pivot = rows;
    for (size_t i = r; i < rows; ++i) {
      if (!field.is_zero(m[i][c])) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    Poly inv = field.inverse(m[r][c]);
    for (size_t j = c; j < cols; ++j) m[r][j] = field.mul(m[r][j], inv);
    for (size_t i = r + 1; i < rows; ++i) {
      Poly f = field.reduce(m[i][c]);
      if (f.is_zero()) continue;
      for (size_t j = c; j < cols; ++j) {
        if (m[r][j].is_zero()) continue;
        m[i][j] = field.reduce(m[i][j] - f * m[r][j]);
      }
    }
    ++r;
  }
  return static_cast<int>(r);
}

}  // namespace holed
