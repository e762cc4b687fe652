#include "holed/report.hpp"

#include <cmath>

namespace holed {

json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

namespace {

json poly_json(const Poly& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(rational_to_string(c));
  return out;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const KneadingResult& r) {
  return {{"a", r.a.to_string()},
          {"entropy", r.root.entropy},
          {"r", r.root.r},
          {"p", r.p},
          {"termination", r.termination.to_string()},
          {"K", r.K},
          {"error_bound", r.root.error_bound}};
}

json to_json(const TowerOrbit& orbit, const DeterminantSeries& d) {
  json pts = json::array();
  for (const auto& x : orbit.points) pts.push_back(x.to_string());
  json out = {{"a", orbit.a.to_string()},
              {"points", pts},
              {"termination", orbit.termination.to_string()},
              {"index_set_A", orbit.index_set_A},
              {"approximate", orbit.approximate}};
  if (d.closed_form) {
    json poly = json::array();
    for (const auto& c : d.closed_form->poly) poly.push_back(integer_json(c));
    out["determinant"] = {{"N", d.closed_form->N}, {"j", d.closed_form->j}, {"period", d.closed_form->period},
                          {"coeffs", poly}};
  }
  return out;
}

json to_json(const MarkovEntropy& m) {
  json states = json::array();
  for (const auto& s : m.refinement.states) states.push_back({s.lo.to_string(), s.hi.to_string()});
  json cp = json::array();
  for (const auto& c : m.matrix.char_poly) cp.push_back(integer_json(c));
  const auto& r = m.report;
  return {{"states", states},
          {"matrix", m.matrix.entries},
          {"char_poly_coeffs", cp},
          {"rho", r.rho},
          {"rho_poly", poly_json(r.rho_poly)},
          {"rho_poly_minimal", r.rho_poly_minimal},
          {"rho_interval", {rational_to_string(r.rho_lo), rational_to_string(r.rho_hi)}},
          {"alg_mult", r.algebraic_multiplicity},
          {"geo_mult", r.geometric_multiplicity},
          {"p", r.pole_order_p},
          {"second_eigenvalue_modulus", r.second_eigenvalue_modulus},
          {"entropy", m.entropy}};
}

json to_json(const SweepResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"s", row.s.to_string()},
                    {"entropy", number_or_null(row.entropy)},
                    {"p", row.p > 0 ? json(row.p) : json(nullptr)},
                    {"engine", row.engine},
                    {"error_bound", number_or_null(row.error_bound)},
                    {"status", row.status}});
  }
  return {{"rows", rows}, {"metadata", r.metadata}};
}

json to_json(const HolderEstimate& e, const HolderCheck& c) {
  return {{"t", e.t.to_string()},
          {"h_t", e.h_t},
          {"p", e.p},
          {"xi", e.xi},
          {"alpha_target", e.alpha_target},
          {"alpha_used", e.alpha_used},
          {"fitted_exponent", e.fitted_exponent},
          {"fit_residual", e.fit_residual},
          {"constant_C", e.constant_C},
          {"mesh_sizes", e.mesh_sizes},
          {"max_diff", e.max_diff},
          {"C_per_mesh", e.C_per_mesh},
          {"locally_constant", e.locally_constant},
          {"note", e.note},
          {"pass", c.pass},
          {"growth", c.growth},
          {"reason", c.reason}};
}

json to_json(const ExpansionDiagnostics& d) {
  return {{"n", d.n},
          {"theta_n", number_or_null(d.theta_n)},
          {"lambda_n", d.lambda_n},
          {"xi_n", d.xi_n},
          {"a_n", d.a_n},
          {"A_n", d.A_n},
          {"max_derivative", d.max_derivative.to_string()},
          {"max_variation", d.max_variation.to_string()},
          {"cylinders", d.cylinders},
          {"survivors", d.survivors}};
}

json to_json(const EngineComparison& c) {
  json out = {{"n", c.n}, {"oracle", c.oracle}};
  auto engine = [](const std::optional<EngineValue>& v, const std::string& note) -> json {
    if (!v) return {{"applicable", false}, {"reason", note}};
    return {{"applicable", true}, {"entropy", v->entropy}, {"diff_to_oracle", v->diff_to_oracle}};
  };
  out["kneading"] = engine(c.kneading, c.kneading_note);
  out["markov"] = engine(c.markov, c.markov_note);
  return out;
}

json counts_json(const RefinementTree& tree) {
  json rows = json::array();
  for (int n = 1; n <= tree.depth(); ++n) {
    rows.push_back({{"level", n}, {"count", tree.count(n)}, {"entropy_estimate", entropy_estimate(tree, n)}});
  }
  return rows;
}

}  // namespace holed
