#include "holed/config.hpp"

#include <fstream>

#include "holed/error.hpp"

namespace holed {

json scalar_to_json(const Scalar& s) { return s.to_string(); }

Scalar scalar_from_json(const json& v, bool float_mode, double epsilon) {
  Scalar out;
  if (v.is_string()) {
    out = parse_scalar(v.get<std::string>(), !float_mode, epsilon);
  } else if (v.is_number_integer()) {
    out = Scalar(Rational(v.get<long>()));
  } else if (v.is_number() && float_mode) {
    out = Scalar::floating(v.get<double>(), epsilon);
  } else {
    fail(ErrorKind::Parse, "expected a number written as a string (\"3/4\", \"0.75\"), got " + v.dump());
  }
  return float_mode ? out.as_float(epsilon) : out;
}

namespace {

std::pair<Scalar, Scalar> pair_from_json(const json& v, bool float_mode, double eps, const char* what) {
  if (!v.is_array() || v.size() != 2) fail(ErrorKind::Parse, std::string(what) + " must be a [lo, hi] pair");
  return {scalar_from_json(v[0], float_mode, eps), scalar_from_json(v[1], float_mode, eps)};
}

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorKind::Parse, std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

MapConfig parse_map_config(const json& doc) {
  if (!doc.is_object()) fail(ErrorKind::Parse, "map config must be a JSON object");
  const std::string mode = doc.value("mode", std::string("exact"));
  if (mode != "exact" && mode != "float") fail(ErrorKind::Parse, "mode must be \"exact\" or \"float\"");
  const bool float_mode = mode == "float";
  const double eps = doc.value("epsilon", kDefaultEpsilon);
  if (!(eps > 0)) fail(ErrorKind::Parse, "epsilon must be positive");

  auto [clo, chi] = pair_from_json(field(doc, "codomain"), float_mode, eps, "codomain");
  if (!(clo < chi)) fail(ErrorKind::Parse, "codomain needs lo < hi");
  IntervalOpen codomain{clo, chi};

  const json& branches = field(doc, "branches");
  if (!branches.is_array() || branches.empty()) fail(ErrorKind::Parse, "branches must be a nonempty array");
  std::vector<Branch> out;
  for (const auto& b : branches) {
    auto [lo, hi] = pair_from_json(field(b, "domain"), float_mode, eps, "domain");
    if (!(lo < hi)) fail(ErrorKind::Parse, "branch domain needs lo < hi");
    IntervalOpen dom{lo, hi};
    if (!out.empty() && dom.lo < out.back().domain().hi) {
      fail(ErrorKind::Parse, "branch domains overlap or are out of order at (" + lo.to_string() + "," +
                                 hi.to_string() + ")");
    }
    const std::string kind = field(b, "kind").get<std::string>();
    const json& coeffs = field(b, "coeffs");
    std::vector<Scalar> c;
    for (const auto& v : coeffs) c.push_back(scalar_from_json(v, float_mode, eps));
    if (kind == "affine") {
      if (c.size() != 2) fail(ErrorKind::Parse, "affine branch needs coeffs [slope, offset]");
      out.push_back(Branch::affine(dom, c[0], c[1]));
    } else if (kind == "moebius") {
      if (c.size() != 4) fail(ErrorKind::Parse, "moebius branch needs coeffs [p, q, r, s]");
      out.push_back(Branch::moebius(dom, c[0], c[1], c[2], c[3]));
    } else {
      fail(ErrorKind::Parse, "unknown branch kind '" + kind + "'");
    }
  }
  MapConfig cfg{PiecewiseMap(codomain, std::move(out), doc.value("name", std::string("custom"))), std::nullopt};

  if (auto it = doc.find("hole"); it != doc.end()) {
    if (!it->is_array()) fail(ErrorKind::Parse, "hole must be an array of [lo, hi] pairs");
    std::vector<ClosedInterval> pieces;
    for (const auto& p : *it) {
      auto [lo, hi] = pair_from_json(p, float_mode, eps, "hole piece");
      pieces.push_back({lo, hi});
    }
    Hole h(std::move(pieces));
    check_hole(cfg.map, h);
    cfg.hole = std::move(h);
  }
  return cfg;
}

MapConfig load_map_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open map config " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, path + ": " + e.what());
  }
  return parse_map_config(doc);
}

json dump_map_config(const PiecewiseMap& map, const std::optional<Hole>& hole) {
  json doc;
  doc["name"] = map.name();
  doc["mode"] = map.mode() == Mode::Exact ? "exact" : "float";
  if (map.mode() == Mode::Float) doc["epsilon"] = map.codomain().lo.epsilon();
  doc["codomain"] = {scalar_to_json(map.codomain().lo), scalar_to_json(map.codomain().hi)};
  doc["branches"] = json::array();
  for (const auto& b : map.branches()) {
    json jb;
    jb["domain"] = {scalar_to_json(b.domain().lo), scalar_to_json(b.domain().hi)};
    jb["kind"] = b.kind() == BranchKind::Affine ? "affine" : "moebius";
    jb["coeffs"] = json::array();
    for (const auto& c : b.coefficients()) jb["coeffs"].push_back(scalar_to_json(c));
    doc["branches"].push_back(std::move(jb));
  }
  if (hole) {
    doc["hole"] = json::array();
    for (const auto& p : hole->pieces()) doc["hole"].push_back({scalar_to_json(p.lo), scalar_to_json(p.hi)});
  }
  return doc;
}

}  // namespace holed
