#include "holed/regularity.hpp"

#include <algorithm>
#include <atomic>
#include <cfloat>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <thread>

#include "holed/cylinder.hpp"
#include "holed/error.hpp"

namespace holed {

Hole HoleFamily::at(const Scalar& s) const {
  switch (kind) {
    case FamilyKind::LeftHole: return Hole::interval(s, Scalar::constant_like(s, Rational(1)));
    case FamilyKind::SlidingHole: return Hole::interval(s, s + width);
    case FamilyKind::Custom:
      for (const auto& [key, h] : custom) {
        if (key.identical(s)) return h;
      }
      fail(ErrorKind::InvalidParameter, "no custom hole for s = " + s.to_string());
  }
  return {};
}

void HoleFamily::check(const Scalar& s) const {
  const Scalar half = Scalar::constant_like(s, Rational(1, 2));
  const Scalar one = Scalar::constant_like(s, Rational(1));
  const Scalar zero = Scalar::constant_like(s, Rational(0));
  switch (kind) {
    case FamilyKind::LeftHole:
      if (!(s > half && s < one)) fail(ErrorKind::InvalidParameter, "LeftHole needs s in (1/2, 1), got " + s.to_string());
      break;
    case FamilyKind::SlidingHole:
      if (!(width > zero) || !(s > zero && s + width < one)) {
        fail(ErrorKind::InvalidParameter, "SlidingHole needs width > 0 and s in (0, 1 - width), got " + s.to_string());
      }
      break;
    case FamilyKind::Custom: at(s); break;
  }
}

std::string HoleFamily::name() const {
  switch (kind) {
    case FamilyKind::LeftHole: return "left";
    case FamilyKind::SlidingHole: return "sliding(" + width.to_string() + ")";
    case FamilyKind::Custom: return "custom";
  }
  return "?";
}

const char* to_string(EngineKind e) {
  switch (e) {
    case EngineKind::Kneading: return "kneading";
    case EngineKind::Markov: return "markov";
    case EngineKind::Oracle: return "oracle";
  }
  return "?";
}

EngineKind engine_from_string(const std::string& name) {
  if (name == "kneading") return EngineKind::Kneading;
  if (name == "markov") return EngineKind::Markov;
  if (name == "oracle" || name == "cylinder") return EngineKind::Oracle;
  fail(ErrorKind::InvalidParameter, "unknown engine '" + name + "' (kneading, markov, oracle)");
}

std::vector<Scalar> grid_points(const Grid& grid) {
  if (grid.count < 2) fail(ErrorKind::InvalidParameter, "grid needs at least 2 points");
  if (!(grid.start < grid.end)) fail(ErrorKind::InvalidParameter, "grid needs start < end");
  std::vector<Scalar> pts;
  const bool exact = grid.start.is_exact() && grid.end.is_exact();
  if (exact) {
    const Rational a = grid.start.rational(), b = grid.end.rational();
    const Rational step = (b - a) / (grid.count - 1);
    long J = 0;
    if (grid.dyadic) {
      // Smallest J with 2^-J <= step, plus six bits of headroom.
      while (Rational(1, 1) / Rational(Integer(1) << J) > step) ++J;
      J += 6;
    }
    const Integer scale = Integer(1) << J;
    for (int i = 0; i < grid.count; ++i) {
      Rational x = i == grid.count - 1 ? b : Rational(a + step * i);
      if (grid.dyadic) {
        Rational y = x * scale + Rational(1, 2);
        Integer k;
        mpz_fdiv_q(k.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
        x = Rational(k, scale);
        x.canonicalize();
      }
      pts.emplace_back(x);
    }
  } else {
    const double a = grid.start.to_double(), b = grid.end.to_double();
    const double eps = grid.start.is_exact() ? grid.end.epsilon() : grid.start.epsilon();
    for (int i = 0; i < grid.count; ++i) {
      pts.push_back(Scalar::floating(i == grid.count - 1 ? b : a + (b - a) * i / (grid.count - 1), eps));
    }
  }
  for (const auto& x : grid.extra) pts.push_back(x);
  std::sort(pts.begin(), pts.end(), [](const Scalar& x, const Scalar& y) { return x < y; });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const Scalar& x, const Scalar& y) { return x.identical(y); }),
            pts.end());
  return pts;
}

SweepRow evaluate_point(const SweepSpec& spec, const Scalar& s) {
  SweepRow row;
  row.s = s;
  row.engine = to_string(spec.engine);
  try {
    spec.family.check(s);
    Hole hole = spec.family.at(s);
    switch (spec.engine) {
      case EngineKind::Kneading: {
        if (!is_doubling_map(spec.map) || spec.family.kind != FamilyKind::LeftHole) {
          fail(ErrorKind::InvalidParameter, "kneading engine needs the doubling map with a left hole");
        }
        auto res = entropy_left_hole(s, spec.params.K, spec.params.tol);
        row.entropy = res.root.entropy;
        row.p = res.p;
        row.error_bound = res.root.error_bound;
        break;
      }
      case EngineKind::Markov: {
        auto res = entropy_markov(spec.map, hole, spec.params.orbit_cap, spec.params.spectral_tol);
        row.entropy = res.entropy;
        row.p = res.report.pole_order_p;
        row.error_bound = 0;
        if (res.report.rho > 1) {
          row.error_bound = std::log(res.report.rho_hi.get_d() / res.report.rho_lo.get_d()) + 4 * DBL_EPSILON;
        }
        break;
      }
      case EngineKind::Oracle: {
        RefineOptions opts;
        opts.keep_levels = false;
        row.entropy = entropy_estimate(refine(spec.map, hole, spec.params.n, opts), spec.params.n);
        row.p = 0;
        row.error_bound = std::nan("");
        break;
      }
    }
  } catch (const Error& e) {
    row.entropy = std::nan("");
    row.error_bound = std::nan("");
    row.status = std::string(to_string(e.kind())) + ": " + e.what();
  }
  return row;
}

namespace {

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int worker_count(int requested, size_t jobs) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, std::min<int>(n, static_cast<int>(jobs)));
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  std::vector<Scalar> pts = grid_points(spec.grid);
  SweepResult res;
  res.rows.resize(pts.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i; (i = next++) < pts.size();) res.rows[i] = evaluate_point(spec, pts[i]);
  };
  const int n = worker_count(spec.threads, pts.size());
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  res.metadata = {
      {"map", spec.map.name()},
      {"family", spec.family.name()},
      {"engine", to_string(spec.engine)},
      {"grid", {{"start", spec.grid.start.to_string()}, {"end", spec.grid.end.to_string()},
                {"count", spec.grid.count}, {"dyadic", spec.grid.dyadic}}},
      {"params", {{"K", spec.params.K}, {"tol", spec.params.tol}, {"n", spec.params.n},
                  {"orbit_cap", spec.params.orbit_cap}}},
      {"timestamp", utc_timestamp()},
  };
  return res;
}

EntropyFunction entropy_function(const SweepSpec& spec) {
  return [spec](const Scalar& s) {
    SweepRow row = evaluate_point(spec, s);
    if (!row.ok()) fail(ErrorKind::InvalidParameter, row.status);
    return row.entropy;
  };
}

std::vector<Scalar> dyadic_scales(int lo, int hi) {
  if (lo > hi) fail(ErrorKind::InvalidParameter, "scale exponents need lo <= hi");
  std::vector<Scalar> out;
  for (int k = lo; k <= hi; ++k) out.emplace_back(Rational(Integer(1), Integer(1) << k));
  return out;
}

HolderEstimate holder_estimate(const EntropyFunction& h, const Scalar& t, int p, double xi,
                               const std::vector<Scalar>& scales, std::optional<double> alpha) {
  if (p < 1) fail(ErrorKind::InvalidParameter, "pole order must be at least 1");
  if (!(xi > 0)) fail(ErrorKind::InvalidParameter, "expansion exponent must be positive");
  if (scales.size() < 2) fail(ErrorKind::InvalidParameter, "need at least two scales");
  for (size_t i = 1; i < scales.size(); ++i) {
    if (!(scales[i] < scales[i - 1]) || !(scales[i].sign() > 0)) {
      fail(ErrorKind::InvalidParameter, "scales must be positive and strictly decreasing");
    }
  }
  HolderEstimate est;
  est.t = t;
  est.p = p;
  est.xi = xi;
  est.h_t = h(t);
  est.alpha_target = est.h_t / (p * xi);
  est.alpha_used = alpha.value_or(est.alpha_target);
  if (est.h_t <= 0) {
    est.skipped = true;
    est.alpha_target = 0;
    est.note = "h(t) = 0; no Hölder statement";
    return est;
  }

  std::vector<double> lx, ly;
  for (const auto& d : scales) {
    double diff = -1;
    for (const Scalar& s : {t - d, t + d}) {
      try {
        diff = std::max(diff, std::abs(h(s) - est.h_t));
      } catch (const Error&) {
        // outside the family's range on this side
      }
    }
    if (diff < 0) continue;
    const double delta = d.to_double();
    est.mesh_sizes.push_back(delta);
    est.max_diff.push_back(diff);
    est.C_per_mesh.push_back(diff / std::pow(delta, est.alpha_used));
    if (diff > 0) {
      lx.push_back(std::log(delta));
      ly.push_back(std::log(diff));
    }
  }
  if (est.mesh_sizes.size() < 2) fail(ErrorKind::InvalidParameter, "fewer than two usable scales");
  est.constant_C = *std::max_element(est.C_per_mesh.begin(), est.C_per_mesh.end());
  if (lx.empty()) {
    est.locally_constant = true;
    est.note = "locally constant; exponent undefined";
    return est;
  }
  if (lx.size() >= 2) {
    const double n = lx.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < lx.size(); ++i) mx += lx[i] / n, my += ly[i] / n;
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < lx.size(); ++i) sxy += (lx[i] - mx) * (ly[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
    est.fitted_exponent = sxy / sxx;
    double rss = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
      double e = ly[i] - (my + est.fitted_exponent * (lx[i] - mx));
      rss += e * e;
    }
    est.fit_residual = std::sqrt(rss / n);
  }
  return est;
}

HolderCheck verify_holder_bound(const HolderEstimate& est, double factor) {
  HolderCheck chk;
  chk.constant_C = est.constant_C;
  if (est.skipped || est.locally_constant) {
    chk.reason = est.note;
    return chk;
  }
  // The single constant fitted on the first k scales, C_k = max_{i<=k} C_i,
  // must not grow by more than `factor` as the mesh is refined.
  double first = est.C_per_mesh.front();
  double running = first;
  for (double c : est.C_per_mesh) running = std::max(running, c);
  chk.growth = first > 0 ? running / first : INFINITY;
  chk.pass = std::isfinite(est.constant_C) && chk.growth <= factor;
  chk.reason = chk.pass ? "fitted constant stable under mesh refinement"
                        : "fitted constant grows under mesh refinement";
  return chk;
}

namespace {

std::string fmt15(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <class F>
void write_file(const std::string& path, F body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot open " + path + " for writing");
  body(out);
  if (!out) fail(ErrorKind::Io, "write failed for " + path);
}

}  // namespace

void emit_csv(std::ostream& os, const SweepResult& result, bool exact_column) {
  if (result.rows.empty()) fail(ErrorKind::InvalidParameter, "empty sweep");
  os << "s,entropy,p,engine,error_bound,status" << (exact_column ? ",s_exact" : "") << "\n";
  for (const auto& r : result.rows) {
    os << fmt15(r.s.to_double()) << ',' << fmt15(r.entropy) << ',' << (r.p > 0 ? std::to_string(r.p) : "") << ','
       << r.engine << ',' << fmt15(r.error_bound) << ',' << csv_field(r.status);
    if (exact_column) os << ',' << (r.s.is_exact() ? r.s.to_string() : "");
    os << "\n";
  }
}

void emit_csv(const std::string& path, const SweepResult& result, bool exact_column) {
  write_file(path, [&](std::ostream& os) { emit_csv(os, result, exact_column); });
}

void emit_svg(std::ostream& os, const SweepResult& result, const PlotStyle& style) {
  if (result.rows.empty()) fail(ErrorKind::InvalidParameter, "empty sweep");
  const double W = 800, H = 600, left = 80, right = 30, top = 50, bottom = 70;
  double x0 = result.rows.front().s.to_double(), x1 = result.rows.back().s.to_double();
  double y0 = INFINITY, y1 = -INFINITY;
  for (const auto& r : result.rows) {
    if (!r.ok()) continue;
    y0 = std::min(y0, r.entropy);
    y1 = std::max(y1, r.entropy);
  }
  if (!std::isfinite(y0)) y0 = 0, y1 = 1;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (W - left - right); };
  auto py = [&](double y) { return H - bottom - (y - y0) / (y1 - y0) * (H - top - bottom); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return std::string(buf);
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" height=\"600\">\n";
  os << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  os << "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">"
     << style.title << "</text>\n";
  os << "<g stroke=\"black\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\"" << H - bottom
     << "\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom << "\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    double xv = x0 + (x1 - x0) * i / 5, yv = y0 + (y1 - y0) * i / 5;
    os << "<line x1=\"" << px(xv) << "\" y1=\"" << H - bottom << "\" x2=\"" << px(xv) << "\" y2=\""
       << H - bottom + 6 << "\"/>\n";
    os << "<line x1=\"" << left - 6 << "\" y1=\"" << py(yv) << "\" x2=\"" << left << "\" y2=\"" << py(yv)
       << "\"/>\n";
  }
  os << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int i = 0; i <= 5; ++i) {
    double xv = x0 + (x1 - x0) * i / 5, yv = y0 + (y1 - y0) * i / 5;
    os << "<text x=\"" << px(xv) << "\" y=\"" << H - bottom + 22 << "\" text-anchor=\"middle\">" << num(xv)
       << "</text>\n";
    os << "<text x=\"" << left - 10 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << num(yv)
       << "</text>\n";
  }
  os << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 20 << "\" text-anchor=\"middle\">"
     << style.x_label << "</text>\n";
  os << "<text x=\"20\" y=\"" << (top + H - bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
     << (top + H - bottom) / 2 << ")\">" << style.y_label << "</text>\n</g>\n";

  os << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
  bool first = true;
  for (const auto& r : result.rows) {
    if (!r.ok()) continue;
    os << (first ? "" : " ") << num(px(r.s.to_double())) << ',' << num(py(r.entropy));
    first = false;
  }
  os << "\"/>\n";
  for (const auto& r : result.rows) {
    if (r.ok()) continue;
    os << "<circle cx=\"" << num(px(r.s.to_double())) << "\" cy=\"" << H - bottom
       << "\" r=\"3\" fill=\"#c0392b\"/>\n";
  }
  os << "</svg>\n";
}

void emit_svg(const std::string& path, const SweepResult& result, const PlotStyle& style) {
  write_file(path, [&](std::ostream& os) { emit_svg(os, result, style); });
}

}  // namespace holed
