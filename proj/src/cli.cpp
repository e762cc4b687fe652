#include "holed/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "holed/error.hpp"
#include "holed/report.hpp"

namespace holed {

namespace {

constexpr int kExitInput = 2;
constexpr int kExitEngine = 3;

struct Options {
  // map and hole
  std::string map = "doubling";
  std::string param;
  std::string hole;
  double epsilon = kDefaultEpsilon;
  // engines
  std::string engine;
  int depth = 20;
  int K = kDefaultTruncation;
  double tol = kDefaultRootTolerance;
  int orbit_cap = kDefaultOrbitCap;
  int threads = 0;
  // outputs
  std::string json_path, csv_path, svg_path, dot_path;
  // tower
  std::string a;
  // sweep / holder
  std::string family = "left";
  std::string width = "1/12";
  std::string start, end;
  int count = 129;
  std::vector<std::string> extra;
  bool no_dyadic = false;
  std::string title;
  std::string t;
  int p = 0;
  double xi = 0;
  std::string scales = "6:16";
  double alpha_shift = 0;
  // diag
  bool dump_config = false;
};

// Decides exact vs float once for all literals of a command.
class NumberReader {
 public:
  NumberReader(bool float_mode, double eps) : float_(float_mode), eps_(eps) {}
  bool float_mode() const { return float_; }
  double epsilon() const { return eps_; }

  Scalar operator()(const std::string& text) const {
    Scalar s = parse_scalar(text, !float_, eps_);
    return float_ ? s.as_float(eps_) : s;
  }

 private:
  bool float_;
  double eps_;
};

NumberReader make_reader(const Options& o, std::ostream& err, bool config_float = false) {
  std::vector<std::string> literals = {o.param, o.a, o.width, o.start, o.end, o.t};
  literals.insert(literals.end(), o.extra.begin(), o.extra.end());
  if (o.hole != "none") {
    std::string tok;
    std::stringstream ss(o.hole);
    while (std::getline(ss, tok, ';')) {
      std::stringstream piece(tok);
      std::string lit;
      while (std::getline(piece, lit, ',')) literals.push_back(lit);
    }
  }
  bool decimal = false;
  for (const auto& s : literals) {
    if (!s.empty() && is_decimal_literal(s)) decimal = true;
  }
  if (decimal) {
    err << "warning: decimal input selects Float mode (epsilon " << o.epsilon
        << "); write num/den for exact arithmetic\n";
  }
  return NumberReader(decimal || config_float, o.epsilon);
}

Hole parse_hole(const std::string& text, const NumberReader& num) {
  std::vector<ClosedInterval> pieces;
  if (text.empty() || text == "none") return Hole();
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ';')) {
    auto comma = piece.find(',');
    if (comma == std::string::npos) fail(ErrorKind::Parse, "hole piece '" + piece + "' must be lo,hi");
    pieces.push_back({num(piece.substr(0, comma)), num(piece.substr(comma + 1))});
  }
  return Hole(std::move(pieces));
}

struct Problem {
  PiecewiseMap map;
  Hole hole;
  NumberReader num;
};

Problem load_problem(const Options& o, std::ostream& err) {
  if (o.map == "doubling" || o.map == "dadic" || o.map == "farey") {
    NumberReader num = make_reader(o, err);
    const Mode mode = num.float_mode() ? Mode::Float : Mode::Exact;
    PiecewiseMap map = build_d_adic(2, mode, num.epsilon());
    if (o.map == "dadic") {
      if (o.param.empty()) fail(ErrorKind::InvalidParameter, "--map dadic needs --param d");
      map = build_d_adic(std::stoi(o.param), mode, num.epsilon());
    } else if (o.map == "farey") {
      if (o.param.empty()) fail(ErrorKind::InvalidParameter, "--map farey needs --param a");
      map = build_scaled_farey(num(o.param));
    }
    Hole hole = parse_hole(o.hole, num);
    check_hole(map, hole);
    return {std::move(map), std::move(hole), num};
  }
  MapConfig cfg = load_map_config(o.map);
  NumberReader num = make_reader(o, err, cfg.map.mode() == Mode::Float);
  PiecewiseMap map = cfg.map;
  Hole hole = cfg.hole.value_or(Hole());
  if (num.float_mode() && map.mode() == Mode::Exact) {
    map = to_float(map, num.epsilon());
    hole = to_float(hole, num.epsilon());
  }
  if (!o.hole.empty()) hole = parse_hole(o.hole, num);
  check_hole(map, hole);
  return {std::move(map), std::move(hole), num};
}

// Writes to a file, or to `out` when the path is "-".
template <class F>
void emit(const std::string& path, std::ostream& out, F body) {
  if (path == "-") {
    body(out);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::Io, "cannot open " + path + " for writing");
  body(f);
  if (!f) fail(ErrorKind::Io, "write failed for " + path);
}

void emit_json(const std::string& path, std::ostream& out, const json& j) {
  emit(path, out, [&](std::ostream& os) { os << j.dump(2) << "\n"; });
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

int threads_from(const Options& o) {
  if (o.threads > 0) return o.threads;
  if (const char* env = std::getenv("HOLED_ENTROPY_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    fail(ErrorKind::InvalidParameter, std::string("HOLED_ENTROPY_THREADS must be a positive integer, got '") + env + "'");
  }
  return 0;
}

int cmd_entropy(const Options& o, std::ostream& out, std::ostream& err) {
  Problem pr = load_problem(o, err);
  const std::string engine = o.engine.empty() ? "all" : o.engine;
  json j;
  if (engine == "all") {
    auto c = compare_engines(pr.map, pr.hole, o.depth);
    j = to_json(c);
    if (o.json_path.empty()) {
      out << "oracle    n=" << c.n << "  entropy " << fmt(c.oracle) << "\n";
      if (c.kneading) out << "kneading  entropy " << fmt(c.kneading->entropy) << "  p 1\n";
      if (c.markov) out << "markov    entropy " << fmt(c.markov->entropy) << "\n";
    }
  } else if (engine == "kneading") {
    auto a = left_hole_parameter(pr.map, pr.hole);
    if (!a) fail(ErrorKind::InvalidParameter, "kneading engine needs --map doubling and --hole a,1 with 1/2 < a < 1");
    auto r = entropy_left_hole(*a, o.K, o.tol);
    j = to_json(r);
    if (o.json_path.empty()) {
      out << "entropy " << fmt(r.root.entropy) << "\np " << r.p << "\nengine kneading\ntermination "
          << r.termination.to_string() << "\nerror_bound " << fmt(r.root.error_bound) << "\n";
    }
  } else if (engine == "markov") {
    auto m = entropy_markov(pr.map, pr.hole, o.orbit_cap);
    j = to_json(m);
    if (o.json_path.empty()) {
      out << "entropy " << fmt(m.entropy) << "\np " << m.report.pole_order_p << "\nengine markov\nrho "
          << fmt(m.report.rho) << "\n";
    }
  } else if (engine == "oracle") {
    RefineOptions opts;
    opts.keep_levels = false;
    auto tree = refine(pr.map, pr.hole, o.depth, opts);
    double h = entropy_estimate(tree, o.depth);
    j = {{"entropy", h}, {"n", o.depth}, {"count", tree.count(o.depth)}};
    if (o.json_path.empty()) {
      out << "entropy " << fmt(h) << "\nengine oracle\nn " << o.depth << "\ncount " << tree.count(o.depth) << "\n";
    }
  } else {
    fail(ErrorKind::InvalidParameter, "unknown engine '" + engine + "' (kneading, markov, oracle, all)");
  }
  if (!o.json_path.empty()) emit_json(o.json_path, out, j);
  return 0;
}

int cmd_tower(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.a.empty()) fail(ErrorKind::InvalidParameter, "tower needs --a");
  NumberReader num = make_reader(o, err);
  Scalar a = num(o.a);
  TowerOrbit orbit = build_orbit(a, o.K);
  DeterminantSeries d = determinant(orbit, o.K);
  KneadingResult r{a, orbit.termination, o.K, 1, leading_root(d, o.tol)};
  json j = to_json(r);
  j["orbit"] = to_json(orbit, d);
  if (o.json_path.empty()) {
    out << "a " << a << "\ntermination " << orbit.termination.to_string() << "\nA";
    for (int k : orbit.index_set_A) out << ' ' << k;
    out << "\n";
    if (d.closed_form) {
      std::vector<Rational> c;
      for (const auto& z : d.closed_form->poly) c.emplace_back(z);
      out << "d(z) " << Poly(c).to_string("z") << "\n";
    }
    out << "r " << fmt(r.root.r) << "\nentropy " << fmt(r.root.entropy) << "\np 1\nerror_bound "
        << fmt(r.root.error_bound) << "\n";
  } else {
    emit_json(o.json_path, out, j);
  }
  return 0;
}

int cmd_spectrum(const Options& o, std::ostream& out, std::ostream& err) {
  Problem pr = load_problem(o, err);
  auto m = entropy_markov(pr.map, pr.hole, o.orbit_cap);
  emit_json(o.json_path.empty() ? "-" : o.json_path, out, to_json(m));
  if (!o.dot_path.empty()) emit(o.dot_path, out, [&](std::ostream& os) { write_dot(os, m.refinement, m.matrix); });
  return 0;
}

int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err) {
  Problem pr = load_problem(o, err);
  RefineOptions opts;
  opts.keep_levels = false;
  auto tree = refine(pr.map, pr.hole, o.depth, opts);
  if (!o.json_path.empty()) emit_json(o.json_path, out, counts_json(tree));
  if (!o.csv_path.empty() || o.json_path.empty()) {
    emit(o.csv_path.empty() ? "-" : o.csv_path, out, [&](std::ostream& os) { write_counts_csv(os, tree); });
  }
  return 0;
}

SweepSpec sweep_spec(const Options& o, const Problem& pr) {
  SweepSpec spec;
  spec.map = pr.map;
  if (o.family == "left") {
    spec.family.kind = FamilyKind::LeftHole;
  } else if (o.family == "sliding") {
    spec.family.kind = FamilyKind::SlidingHole;
    spec.family.width = pr.num(o.width);
  } else {
    fail(ErrorKind::InvalidParameter, "unknown family '" + o.family + "' (left, sliding)");
  }
  const bool left = spec.family.kind == FamilyKind::LeftHole;
  spec.engine = engine_from_string(o.engine.empty() ? (left && is_doubling_map(pr.map) ? "kneading" : "markov")
                                                     : o.engine);
  spec.params.K = o.K;
  spec.params.tol = o.tol;
  spec.params.n = o.depth;
  spec.params.orbit_cap = o.orbit_cap;
  spec.threads = threads_from(o);
  return spec;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  Problem pr = load_problem(o, err);
  SweepSpec spec = sweep_spec(o, pr);
  const bool left = spec.family.kind == FamilyKind::LeftHole;
  spec.grid.start = pr.num(o.start);
  spec.grid.end = pr.num(o.end);
  spec.grid.count = o.count;
  spec.grid.dyadic = !o.no_dyadic;
  for (const auto& x : o.extra) spec.grid.extra.push_back(pr.num(x));
  SweepResult res = run_sweep(spec);

  bool wrote = false;
  if (!o.csv_path.empty()) emit(o.csv_path, out, [&](std::ostream& os) { emit_csv(os, res); }), wrote = true;
  if (!o.json_path.empty()) emit_json(o.json_path, out, to_json(res)), wrote = true;
  if (!o.svg_path.empty()) {
    PlotStyle style;
    style.title = o.title.empty() ? "entropy, " + spec.family.name() + " hole" : o.title;
    style.x_label = left ? "a (hole [a,1])" : "a (hole [a,a+w])";
    style.y_label = "h";
    emit(o.svg_path, out, [&](std::ostream& os) { emit_svg(os, res, style); });
    wrote = true;
  }
  if (!wrote) emit_csv(out, res);
  size_t flagged = 0;
  for (const auto& r : res.rows) flagged += !r.ok();
  if (flagged) err << "warning: " << flagged << " grid point(s) flagged; see the status column\n";
  return 0;
}

std::vector<Scalar> parse_scales(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) fail(ErrorKind::Parse, "--scales must be lo:hi (exponents of 2^-k)");
  try {
    return dyadic_scales(std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1)));
  } catch (const std::logic_error&) {
    fail(ErrorKind::Parse, "--scales must be lo:hi with integer exponents");
  }
}

int cmd_holder(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.t.empty()) fail(ErrorKind::InvalidParameter, "holder needs --t");
  Problem pr = load_problem(o, err);
  SweepSpec spec = sweep_spec(o, pr);
  Scalar t = pr.num(o.t);
  int p = o.p;
  if (p == 0) {
    p = 1;
    if (spec.engine == EngineKind::Markov) p = evaluate_point(spec, t).p;
    if (p == 0) p = 1;
  }
  double xi = o.xi;
  if (xi == 0) xi = expansion_diagnostics(pr.map, 12).xi_n;
  auto h = entropy_function(spec);
  auto scales = parse_scales(o.scales);
  auto est = holder_estimate(h, t, p, xi, scales);
  if (o.alpha_shift != 0 && !est.skipped) est = holder_estimate(h, t, p, xi, scales, est.alpha_target + o.alpha_shift);
  auto chk = verify_holder_bound(est);
  if (!o.json_path.empty()) {
    emit_json(o.json_path, out, to_json(est, chk));
    return 0;
  }
  out << "t " << t << "\nh(t) " << fmt(est.h_t) << "\np " << p << "\nxi " << fmt(xi) << "\nalpha_target "
      << fmt(est.alpha_target) << "\nalpha_used " << fmt(est.alpha_used) << "\nfitted_exponent "
      << fmt(est.fitted_exponent) << "\nconstant_C " << fmt(est.constant_C) << "\n";
  if (!est.note.empty()) out << "note " << est.note << "\n";
  out << "mesh,max_diff,C\n";
  for (size_t i = 0; i < est.mesh_sizes.size(); ++i) {
    out << fmt(est.mesh_sizes[i]) << ',' << fmt(est.max_diff[i]) << ',' << fmt(est.C_per_mesh[i]) << "\n";
  }
  out << (chk.pass ? "PASS" : "FAIL") << " growth " << fmt(chk.growth) << " (" << chk.reason << ")\n";
  return 0;
}

int cmd_diag(const Options& o, std::ostream& out, std::ostream& err) {
  Problem pr = load_problem(o, err);
  if (o.dump_config) {
    emit_json(o.json_path.empty() ? "-" : o.json_path, out,
              dump_map_config(pr.map, pr.hole.empty() ? std::nullopt : std::optional<Hole>(pr.hole)));
    return 0;
  }
  auto levels = expansion_diagnostics_levels(pr.map, pr.hole, o.depth);
  if (!o.json_path.empty()) {
    json rows = json::array();
    for (const auto& d : levels) rows.push_back(to_json(d));
    emit_json(o.json_path, out, rows);
    return 0;
  }
  out << "n,theta_n,lambda_n,xi_n,a_n,A_n,cylinders,survivors\n";
  for (const auto& d : levels) {
    out << d.n << ',' << fmt(d.theta_n) << ',' << fmt(d.lambda_n) << ',' << fmt(d.xi_n) << ',' << fmt(d.a_n) << ','
        << fmt(d.A_n) << ',' << d.cylinders << ',' << d.survivors << "\n";
  }
  return 0;
}

void add_map_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--map", o.map, "doubling, dadic, farey, or a JSON map config path");
  cmd->add_option("--param", o.param, "d for dadic, a for farey");
  cmd->add_option("--hole", o.hole, "closed pieces lo,hi separated by ';'");
  cmd->add_option("--epsilon", o.epsilon, "Float-mode tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Topological entropy of interval maps with holes", "holed_entropy"};
  app.require_subcommand(1);

  auto* entropy = app.add_subcommand("entropy", "entropy of one map and hole");
  add_map_options(entropy, o);
  entropy->add_option("--engine", o.engine, "kneading, markov, oracle or all");
  entropy->add_option("--depth,-n", o.depth, "cylinder level for the oracle")->check(CLI::PositiveNumber);
  entropy->add_option("-K,--truncation", o.K, "determinant truncation")->check(CLI::PositiveNumber);
  entropy->add_option("--tol", o.tol, "root tolerance")->check(CLI::PositiveNumber);
  entropy->add_option("--orbit-cap", o.orbit_cap)->check(CLI::PositiveNumber);
  entropy->add_option("--json", o.json_path, "write JSON ('-' for stdout)");

  auto* sweep = app.add_subcommand("sweep", "entropy over a hole family");
  add_map_options(sweep, o);
  sweep->add_option("--family", o.family, "left or sliding");
  sweep->add_option("--width", o.width, "sliding hole width");
  sweep->add_option("--start", o.start)->required();
  sweep->add_option("--end", o.end)->required();
  sweep->add_option("--count", o.count)->check(CLI::Range(2, 1'000'000));
  sweep->add_option("--extra", o.extra, "additional grid points");
  sweep->add_flag("--no-dyadic", o.no_dyadic, "keep uniform points instead of snapping to dyadics");
  sweep->add_option("--engine", o.engine, "kneading, markov or oracle");
  sweep->add_option("--depth,-n", o.depth)->check(CLI::PositiveNumber);
  sweep->add_option("-K,--truncation", o.K)->check(CLI::PositiveNumber);
  sweep->add_option("--tol", o.tol)->check(CLI::PositiveNumber);
  sweep->add_option("--orbit-cap", o.orbit_cap)->check(CLI::PositiveNumber);
  sweep->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
  sweep->add_option("--csv", o.csv_path);
  sweep->add_option("--svg", o.svg_path);
  sweep->add_option("--json", o.json_path);
  sweep->add_option("--title", o.title);

  auto* tower = app.add_subcommand("tower", "kneading orbit and determinant for the hole [a,1]");
  tower->add_option("--a", o.a)->required();
  tower->add_option("-K,--truncation", o.K)->check(CLI::PositiveNumber);
  tower->add_option("--tol", o.tol)->check(CLI::PositiveNumber);
  tower->add_option("--epsilon", o.epsilon)->check(CLI::PositiveNumber);
  tower->add_option("--json", o.json_path);

  auto* spectrum = app.add_subcommand("spectrum", "Markov refinement, transition matrix and spectrum");
  add_map_options(spectrum, o);
  spectrum->add_option("--orbit-cap", o.orbit_cap)->check(CLI::PositiveNumber);
  spectrum->add_option("--json", o.json_path);
  spectrum->add_option("--dot", o.dot_path, "write the transition graph in DOT");

  auto* oracle = app.add_subcommand("oracle", "exact cylinder counts per level");
  add_map_options(oracle, o);
  oracle->add_option("--depth,-n", o.depth)->check(CLI::PositiveNumber);
  oracle->add_option("--csv", o.csv_path);
  oracle->add_option("--json", o.json_path);

  auto* holder = app.add_subcommand("holder", "empirical Hölder estimate of the entropy at t");
  add_map_options(holder, o);
  holder->add_option("--family", o.family, "left or sliding");
  holder->add_option("--width", o.width);
  holder->add_option("--t", o.t)->required();
  holder->add_option("--p", o.p, "pole order (default: from the Markov engine, else 1)");
  holder->add_option("--xi", o.xi, "expansion exponent (default: Xi_12 of the map)");
  holder->add_option("--scales", o.scales, "lo:hi for the scales 2^-lo .. 2^-hi");
  holder->add_option("--alpha-shift", o.alpha_shift, "add to the target exponent");
  holder->add_option("--engine", o.engine);
  holder->add_option("--depth,-n", o.depth)->check(CLI::PositiveNumber);
  holder->add_option("--json", o.json_path);

  auto* diag = app.add_subcommand("diag", "expansion and Lasota-Yorke diagnostics");
  add_map_options(diag, o);
  diag->add_option("--depth,-n", o.depth)->check(CLI::PositiveNumber);
  diag->add_flag("--dump-config", o.dump_config, "print the map (and hole) as a JSON config");
  diag->add_option("--json", o.json_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*entropy) return cmd_entropy(o, out, err);
    if (*sweep) return cmd_sweep(o, out, err);
    if (*tower) return cmd_tower(o, out, err);
    if (*spectrum) return cmd_spectrum(o, out, err);
    if (*oracle) return cmd_oracle(o, out, err);
    if (*holder) return cmd_holder(o, out, err);
    if (*diag) return cmd_diag(o, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.is_input_error() || e.kind() == ErrorKind::Io ? kExitInput : kExitEngine;
  } catch (const std::invalid_argument& e) {
    err << "error: malformed argument: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace holed
