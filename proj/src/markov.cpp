#include "holed/markov.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <set>

#include "holed/error.hpp"

namespace holed {

namespace {

bool in_closure(const IntervalOpen& iv, const Rational& x) {
  return iv.lo.rational() <= x && x <= iv.hi.rational();
}

}  // namespace

MarkovRefinement refine_markov(const PiecewiseMap& map, const Hole& hole, int orbit_cap) {
  if (map.mode() != Mode::Exact) {
    fail(ErrorKind::NotFinitelyMarkov, "Markov refinement needs exact rational parameters");
  }
  for (const auto& p : hole.pieces()) {
    if (!p.lo.is_exact() || !p.hi.is_exact()) {
      fail(ErrorKind::NotFinitelyMarkov, "Markov refinement needs exact rational hole endpoints");
    }
  }
  check_hole(map, hole);

  std::set<Rational> points;
  std::deque<Rational> work;
  auto add = [&](const Rational& x) {
    if (points.insert(x).second) {
      if (static_cast<int>(points.size()) > orbit_cap) {
        fail(ErrorKind::NotFinitelyMarkov,
             "boundary orbits did not close within " + std::to_string(orbit_cap) + " points");
      }
      work.push_back(x);
    }
  };
  add(map.codomain().lo.rational());
  add(map.codomain().hi.rational());
  for (const auto& b : map.branches()) {
    add(b.domain().lo.rational());
    add(b.domain().hi.rational());
  }
  for (const auto& p : hole.pieces()) {
    add(p.lo.rational());
    add(p.hi.rational());
  }
  while (!work.empty()) {
    Rational x = work.front();
    work.pop_front();
    if (hole.interior_contains(Scalar(x))) continue;
    for (const auto& b : map.branches()) {
      if (in_closure(b.domain(), x)) add(b(Scalar(x)).rational());
    }
  }

  MarkovRefinement ref;
  ref.breakpoints.assign(points.begin(), points.end());
  for (size_t i = 0; i + 1 < ref.breakpoints.size(); ++i) {
    const Rational& u = ref.breakpoints[i];
    const Rational& v = ref.breakpoints[i + 1];
    Scalar mid(Rational((u + v) / 2));
    if (hole.contains(mid)) continue;
    auto b = map.branch_at(mid);
    if (!b) continue;
    IntervalOpen state{Scalar(u), Scalar(v)};
    IntervalOpen img = map.branches()[*b].fn().image(state);
    // Markov property: the image is cut exactly at breakpoints.
    if (!points.count(img.lo.rational()) || !points.count(img.hi.rational())) {
      fail(ErrorKind::NotFinitelyMarkov, "refinement is not Markov at state (" + state.lo.to_string() + "," +
                                             state.hi.to_string() + ")");
    }
    ref.states.push_back(std::move(state));
    ref.state_branch.push_back(*b);
    ref.images.push_back(std::move(img));
  }
  return ref;
}

TransitionMatrix transition_matrix(const MarkovRefinement& ref) {
  TransitionMatrix m;
  m.size = ref.states.size();
  m.entries.assign(m.size, std::vector<long>(m.size, 0));
  for (size_t i = 0; i < m.size; ++i) {
    for (size_t j = 0; j < m.size; ++j) {
      if (ref.images[i].contains(ref.states[j])) m.entries[i][j] = 1;
    }
  }
  m.char_poly = characteristic_polynomial(m.entries);
  return m;
}

namespace {

bool known_irreducible(const Poly& p) {
  if (p.degree() == 1) return true;
  if (p.degree() > 3) return false;
  // Degree 2 or 3 is reducible iff it has a rational root; for a monic
  // integer polynomial that root is an integer dividing the constant term.
  if (!p.integral()) return false;
  Integer c = abs(p.coeffs()[0].get_num());
  if (c == 0) return false;
  for (Integer d = 1; d * d <= c; ++d) {
    if (c % d != 0) continue;
    for (const Integer& cand : {d, Integer(c / d)}) {
      if (p.sign_at(Rational(cand)) == 0 || p.sign_at(Rational(-cand)) == 0) return false;
    }
  }
  return true;
}

double second_modulus(const TransitionMatrix& m, double rho, int alg_mult, double tol) {
  const auto n = static_cast<Eigen::Index>(m.size);
  if (n == 0) return 0;
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = static_cast<double>(m.entries[i][j]);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
  std::vector<std::complex<double>> ev(solver.eigenvalues().begin(), solver.eigenvalues().end());
  // Drop the alg_mult eigenvalues nearest ρ; defective clusters spread like
  // sqrt(machine eps), which tol need not cover.
  std::sort(ev.begin(), ev.end(), [&](const auto& x, const auto& y) {
    return std::abs(x - rho) < std::abs(y - rho);
  });
  double second = 0;
  for (size_t k = static_cast<size_t>(alg_mult); k < ev.size(); ++k) second = std::max(second, std::abs(ev[k]));
  (void)tol;
  return std::min(second, rho);
}

}  // namespace

SpectralReport spectral_report(const TransitionMatrix& m, double tol) {
  if (!(tol > 0)) fail(ErrorKind::InvalidParameter, "tolerance must be positive");
  SpectralReport rep;
  if (m.size == 0) {
    rep.rho_poly = Poly{0, 1};
    rep.rho_poly_minimal = true;
    return rep;
  }
  Poly chi = Poly::from_integers(m.char_poly);
  auto root = largest_real_root(chi);
  if (!root) fail(ErrorKind::InvalidParameter, "characteristic polynomial without real roots");

  int mult = 0;
  auto factors = squarefree_decomposition(chi);
  Poly factor;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].degree() >= 1 && root->is_root_of(factors[i])) {
      mult = static_cast<int>(i) + 1;
      factor = factors[i];
      break;
    }
  }
  if (mult == 0) fail(ErrorKind::InvalidParameter, "Perron root missing from the squarefree decomposition");
  if (!root->is_rational()) root->poly = factor;
  rep.algebraic_multiplicity = mult;

  if (mult == 1) {
    rep.geometric_multiplicity = 1;
    rep.pole_order_p = 1;
  } else {
    AlgebraicField field(*root);
    const size_t n = m.size;
    PolyMatrix b(n, std::vector<Poly>(n));
    Poly x = field.generator();
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        b[i][j] = Poly::monomial(Rational(m.entries[i][j]), 0);
        if (i == j) b[i][j] = field.reduce(b[i][j] - x);
      }
    }
    int r_prev = rank(b, field);
    rep.geometric_multiplicity = static_cast<int>(n) - r_prev;
    PolyMatrix power = b;
    int q = 1;
    for (;; ++q) {
      power = multiply(power, b, field);
      int r = rank(power, field);
      if (r == r_prev) break;
      r_prev = r;
    }
    rep.pole_order_p = q;
    root->poly = field.modulus();
  }

  root->refine(96);
  rep.rho = root->approx();
  rep.rho_poly = root->poly;
  rep.rho_lo = root->lo;
  rep.rho_hi = root->hi;
  rep.rho_poly_minimal = known_irreducible(root->poly);
  rep.second_eigenvalue_modulus = second_modulus(m, rep.rho, mult, tol);
  return rep;
}

MarkovEntropy entropy_markov(const PiecewiseMap& map, const Hole& hole, int orbit_cap, double tol) {
  MarkovEntropy out;
  out.refinement = refine_markov(map, hole, orbit_cap);
  out.matrix = transition_matrix(out.refinement);
  out.report = spectral_report(out.matrix, tol);
  out.entropy = out.report.rho > 1 ? std::log(out.report.rho) : 0.0;
  return out;
}

void write_dot(std::ostream& os, const MarkovRefinement& ref, const TransitionMatrix& m) {
  os << "digraph transitions {\n";
  for (size_t i = 0; i < ref.states.size(); ++i) {
    os << "  s" << i << " [label=\"(" << ref.states[i].lo << "," << ref.states[i].hi << ")\"];\n";
  }
  for (size_t i = 0; i < m.size; ++i) {
    for (size_t j = 0; j < m.size; ++j) {
      if (m.entries[i][j]) os << "  s" << i << " -> s" << j << ";\n";
    }
  }
  os << "}\n";
}

}  // namespace holed
