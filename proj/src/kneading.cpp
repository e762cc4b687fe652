#include "holed/kneading.hpp"

#include <cfloat>
#include <cmath>
#include <map>

#include "holed/error.hpp"

namespace holed {

std::string Termination::to_string() const {
  switch (kind) {
    case Kind::Capped: return "Capped(" + std::to_string(N) + ")";
    case Kind::PrePeriodic: return "PrePeriodic(" + std::to_string(N) + "," + std::to_string(j) + ")";
    case Kind::Escape: return "Escape(" + std::to_string(N) + ")";
    case Kind::Critical: return "Critical(" + std::to_string(N) + ")";
  }
  return "?";
}

namespace {

// Earlier orbit points (indices >= 1) for repetition checks.
class OrbitIndex {
 public:
  explicit OrbitIndex(bool exact) : exact_(exact) {}

  void add(const Scalar& x, int k) {
    if (exact_) {
      exact_pts_.emplace(x.rational(), k);
    } else {
      float_pts_.emplace(x.to_double(), k);
    }
  }

  std::optional<int> find(const Scalar& x) const {
    if (exact_) {
      auto it = exact_pts_.find(x.rational());
      if (it == exact_pts_.end()) return std::nullopt;
      return it->second;
    }
    const double v = x.to_double();
    const double eps = x.epsilon();
    auto it = float_pts_.lower_bound(v - eps);
    if (it == float_pts_.end() || it->first > v + eps) return std::nullopt;
    return it->second;
  }

 private:
  bool exact_;
  std::map<Rational, int> exact_pts_;
  std::map<double, int> float_pts_;
};

}  // namespace

TowerOrbit build_orbit(const Scalar& a, int k_cap) {
  const Scalar half = Scalar::constant_like(a, Rational(1, 2));
  const Scalar one = Scalar::constant_like(a, Rational(1));
  if (!(a > half) || !(a < one)) {
    fail(ErrorKind::InvalidParameter, "a must lie in (1/2, 1), got " + a.to_string());
  }
  if (k_cap < 2) fail(ErrorKind::InvalidParameter, "orbit cap must be at least 2");

  TowerOrbit orbit;
  orbit.a = a;
  orbit.points.push_back(a);
  orbit.index_set_A.push_back(0);
  OrbitIndex seen(a.is_exact());
  const Scalar two = Scalar::constant_like(a, Rational(2));

  auto finish = [&](Termination::Kind kind, int n, int j) {
    orbit.termination = Termination{kind, n, j};
    return orbit;
  };

  for (int k = 0;; ++k) {
    const Scalar& x = orbit.points[k];
    if (k >= 1) {
      if (x == half) {
        if (!a.is_exact()) {
          fail(ErrorKind::Ambiguity, "orbit point a_" + std::to_string(k) + " = " + x.to_string() +
                                         " is within epsilon of 1/2; rerun with an exact rational a");
        }
        orbit.index_set_A.push_back(k);
        return finish(Termination::Kind::Critical, k, 0);
      }
      if (x >= half) orbit.index_set_A.push_back(k);
      if (x == a) {
        orbit.approximate = !a.is_exact();
        return finish(Termination::Kind::PrePeriodic, k, 1);
      }
      if (x > a) return finish(Termination::Kind::Escape, k, 1);
    }
    // Here x <= a and x != 1/2 (for k = 0, x = a), so min{a, x} = x and the
    // left limit agrees with T except at a itself, where T(a^-) = 2a - 1.
    Scalar next = x < half ? two * x : two * x - one;
    if (auto j = seen.find(next)) {
      orbit.approximate = !a.is_exact();
      return finish(Termination::Kind::PrePeriodic, k, *j);
    }
    if (k == k_cap) {
      return finish(Termination::Kind::Capped, k_cap, 0);
    }
    seen.add(next, k + 1);
    orbit.points.push_back(std::move(next));
  }
}

double DeterminantSeries::tail_bound(double x) const {
  if (closed_form) return 0;
  return std::pow(x, K + 2) / (1 - x);
}

double DeterminantSeries::truncated(double x) const {
  double s = 0;
  for (int k = K; k >= 0; --k) s = s * x + m[k];
  return 1 - x * s;
}

DeterminantSeries determinant(const TowerOrbit& orbit, int K) {
  if (K < 1) fail(ErrorKind::InvalidParameter, "truncation must be positive");
  const Termination& t = orbit.termination;
  if (t.kind == Termination::Kind::Capped && K > t.N) {
    fail(ErrorKind::Truncation, "truncation " + std::to_string(K) + " exceeds the capped orbit length " +
                                    std::to_string(t.N));
  }
  std::vector<unsigned char> raw(orbit.points.size(), 0);
  for (int k : orbit.index_set_A) raw[k] = 1;
  if (orbit.index_set_A.size() < 2 && t.finite()) {
    fail(ErrorKind::InvalidParameter, "index set A has no element beyond 0");
  }

  DeterminantSeries d;
  d.K = K;
  d.m.assign(K + 1, 0);
  switch (t.kind) {
    case Termination::Kind::Capped:
      for (int k = 0; k <= K; ++k) d.m[k] = raw[k];
      break;
    case Termination::Kind::Critical: {
      for (int k = 0; k <= std::min(K, t.N); ++k) d.m[k] = raw[k];
      DeterminantSeries::Finite f{t.N, 0, 0, std::vector<Integer>(t.N + 2, 0)};
      f.poly[0] = 1;
      for (int k = 0; k <= t.N; ++k) f.poly[k + 1] -= raw[k];
      d.closed_form = std::move(f);
      break;
    }
    case Termination::Kind::PrePeriodic:
    case Termination::Kind::Escape: {
      const int N = t.N, j = t.j, L = N - j + 1;
      for (int k = 0; k <= K; ++k) d.m[k] = k < j ? raw[k] : raw[j + (k - j) % L];
      DeterminantSeries::Finite f{N, j, L, std::vector<Integer>(std::max(N + 2, j + L + 1), 0)};
      f.poly[0] += 1;
      f.poly[L] -= 1;
      for (int k = 0; k <= N; ++k) f.poly[k + 1] -= raw[k];
      for (int k = 0; k < j; ++k) f.poly[k + 1 + L] += raw[k];
      while (f.poly.size() > 1 && f.poly.back() == 0) f.poly.pop_back();
      d.closed_form = std::move(f);
      break;
    }
  }
  return d;
}

namespace {

double horner(const std::vector<double>& c, double x) {
  double s = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
  return s;
}

// Smallest zero of a function that is positive at 0 and decreasing through
// its unique zero in (0,1); sign bisection to width tol.
template <class F>
std::pair<double, double> bisect(F f, double tol) {
  double lo = 0, hi = 1 - tol;
  if (f(hi) > 0) {
    fail(ErrorKind::NoRoot, "determinant stays positive on (0, 1 - tol); entropy is zero at this truncation");
  }
  while (hi - lo > tol) {
    double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return {lo, hi};
}

}  // namespace

RootResult leading_root(const DeterminantSeries& series, double tol) {
  if (!(tol > 0)) fail(ErrorKind::InvalidParameter, "tolerance must be positive");
  std::vector<double> c;
  if (series.closed_form) {
    for (const auto& v : series.closed_form->poly) c.push_back(v.get_d());
  } else {
    c.assign(series.K + 2, 0.0);
    c[0] = 1;
    for (int k = 0; k <= series.K; ++k) c[k + 1] = -double(series.m[k]);
  }
  std::vector<double> dc;
  for (size_t i = 1; i < c.size(); ++i) dc.push_back(double(i) * c[i]);
  auto f = [&](double x) { return horner(c, x); };

  RootResult res;
  auto [lo, hi] = bisect(f, tol);
  res.r = lo + (hi - lo) / 2;
  res.residual = std::abs(f(res.r));
  res.derivative = horner(dc, res.r);
  res.entropy = -std::log(res.r);

  const double slack = 64 * DBL_EPSILON;
  double r_low = lo;
  if (!series.closed_form) {
    // The full series lies between d_K - tail and d_K, so its zero lies
    // between the zeros of those two functions.
    auto g = [&](double x) { return f(x) - series.tail_bound(x); };
    r_low = bisect(g, tol).first;
  }
  res.error_bound = std::log(hi / r_low) + slack;
  return res;
}

KneadingResult entropy_left_hole(const Scalar& a, int K, double tol) {
  TowerOrbit orbit = build_orbit(a, K);
  DeterminantSeries d = determinant(orbit, K);
  KneadingResult out;
  out.a = a;
  out.termination = orbit.termination;
  out.K = K;
  out.p = 1;
  out.root = leading_root(d, tol);
  return out;
}

}  // namespace holed
