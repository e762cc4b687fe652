#include "holed/cylinder.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "holed/error.hpp"

namespace holed {

namespace {

bool increasing(const Moebius& m) {
  Scalar d = m.det();
  if (d.is_exact()) return d.sign() > 0;
  return d.to_double() > 0;
}

struct Piece {
  uint16_t branch;
  IntervalOpen interval;
};

std::vector<Piece> level_one_pieces(const PiecewiseMap& map, const Hole& hole) {
  std::vector<Piece> out;
  for (size_t b = 0; b < map.size(); ++b) {
    for (auto& iv : hole.subtract_from(map.branches()[b].domain())) {
      out.push_back({static_cast<uint16_t>(b), std::move(iv)});
    }
  }
  return out;
}

// Pull back J ∩ target through m, where J = m(source). Endpoints that are not
// cut by the target are taken from the source so exact ties stay exact.
std::optional<IntervalOpen> pull_back(const Moebius& m, bool inc, const IntervalOpen& source,
                                      const IntervalOpen& image, const IntervalOpen& target) {
  auto cut = intersect(image, target);
  if (!cut) return std::nullopt;
  Scalar lo, hi;
  if (inc) {
    lo = cut->lo.identical(image.lo) ? source.lo : m.inverse(cut->lo);
    hi = cut->hi.identical(image.hi) ? source.hi : m.inverse(cut->hi);
  } else {
    lo = cut->hi.identical(image.hi) ? source.lo : m.inverse(cut->hi);
    hi = cut->lo.identical(image.lo) ? source.hi : m.inverse(cut->lo);
  }
  if (!(lo < hi)) return std::nullopt;
  return IntervalOpen(std::move(lo), std::move(hi));
}

IntervalOpen image_of(const Moebius& m, bool inc, const IntervalOpen& iv) {
  if (inc) return IntervalOpen(m(iv.lo), m(iv.hi));
  return IntervalOpen(m(iv.hi), m(iv.lo));
}

// Branch visiting order that keeps children left to right.
std::vector<size_t> branch_order(size_t nb, bool inc) {
  std::vector<size_t> order(nb);
  for (size_t i = 0; i < nb; ++i) order[i] = inc ? i : nb - 1 - i;
  return order;
}

}  // namespace

uint64_t RefinementTree::count(int n) const {
  if (n < 1) fail(ErrorKind::InvalidParameter, "level must be >= 1");
  if (static_cast<size_t>(n) <= counts_.size()) return counts_[n - 1];
  if (extinct_at_) return 0;
  fail(ErrorKind::InvalidParameter, "level " + std::to_string(n) + " beyond refinement depth");
}

uint64_t RefinementTree::word_count(int n) const {
  if (n < 1) fail(ErrorKind::InvalidParameter, "level must be >= 1");
  if (static_cast<size_t>(n) <= word_counts_.size()) return word_counts_[n - 1];
  if (extinct_at_) return 0;
  fail(ErrorKind::InvalidParameter, "level " + std::to_string(n) + " beyond refinement depth");
}

const std::vector<Cylinder>& RefinementTree::level(int n) const {
  static const std::vector<Cylinder> kEmpty;
  if (n < 1 || n > depth_) fail(ErrorKind::InvalidParameter, "level out of range");
  if (extinct_at_ && n >= *extinct_at_) return kEmpty;
  if (!kept_all_) {
    if (n != depth_) fail(ErrorKind::InvalidParameter, "intermediate levels were not kept");
    return levels_.back();
  }
  return levels_[n - 1];
}

RefinementTree refine(const PiecewiseMap& map, const Hole& hole, int n_max, const RefineOptions& options) {
  if (n_max < 1) fail(ErrorKind::InvalidParameter, "refinement depth must be >= 1");
  check_hole(map, hole);
  RefinementTree tree(map, hole);
  tree.depth_ = n_max;
  tree.kept_all_ = options.keep_levels;

  auto pieces = level_one_pieces(map, hole);
  std::vector<std::vector<const Piece*>> by_branch(map.size());
  for (const auto& p : pieces) by_branch[p.branch].push_back(&p);

  std::vector<Cylinder> current;
  for (size_t b = 0; b < map.size(); ++b) {
    if (by_branch[b].empty()) continue;
    Cylinder c;
    c.itinerary = {static_cast<uint16_t>(b)};
    for (const Piece* p : by_branch[b]) c.components.push_back(p->interval);
    c.support = IntervalOpen(c.components.front().lo, c.components.back().hi);
    c.composite = map.branches()[b].fn();
    current.push_back(std::move(c));
  }

  for (int n = 1;; ++n) {
    uint64_t comps = 0;
    for (const auto& c : current) comps += c.components.size();
    tree.counts_.push_back(comps);
    tree.word_counts_.push_back(current.size());
    if (comps == 0) {
      tree.extinct_at_ = n;
      break;
    }
    if (n == n_max) {
      tree.levels_.push_back(std::move(current));
      break;
    }

    std::vector<Cylinder> next;
    uint64_t next_comps = 0;
    for (const auto& c : current) {
      bool inc = increasing(c.composite);
      std::vector<IntervalOpen> images;
      images.reserve(c.components.size());
      for (const auto& s : c.components) images.push_back(image_of(c.composite, inc, s));
      for (size_t b : branch_order(map.size(), inc)) {
        if (by_branch[b].empty()) continue;
        Cylinder child;
        // Within one branch, pieces run left to right; a decreasing composite
        // reverses them, so walk the targets accordingly.
        const auto& targets = by_branch[b];
        size_t nt = targets.size();
        for (size_t si = 0; si < c.components.size(); ++si) {
          for (size_t t = 0; t < nt; ++t) {
            const Piece* p = targets[inc ? t : nt - 1 - t];
            if (auto iv = pull_back(c.composite, inc, c.components[si], images[si], p->interval)) {
              child.components.push_back(std::move(*iv));
            }
          }
        }
        if (child.components.empty()) continue;
        next_comps += child.components.size();
        if (next_comps > options.component_cap) {
          fail(ErrorKind::ResourceLimit, "level " + std::to_string(n + 1) + " exceeds the component cap of " +
                                             std::to_string(options.component_cap));
        }
        child.itinerary = c.itinerary;
        child.itinerary.push_back(static_cast<uint16_t>(b));
        child.support = IntervalOpen(child.components.front().lo, child.components.back().hi);
        child.composite = map.branches()[b].fn().after(c.composite);
        next.push_back(std::move(child));
      }
    }
    if (options.keep_levels) tree.levels_.push_back(std::move(current));
    current = std::move(next);
  }
  return tree;
}

double entropy_estimate(const RefinementTree& tree, int n) {
  uint64_t c = tree.count(n);
  if (c <= 1) return 0.0;
  return std::log(static_cast<double>(c)) / n;
}

LocallyConstantWeight LocallyConstantWeight::constant(const PiecewiseMap& map, const Scalar& c) {
  return {std::vector<Scalar>(map.size(), c)};
}

double pressure_estimate(const PiecewiseMap& map, const LocallyConstantWeight& weight, const Hole& hole, int n) {
  if (n < 1) fail(ErrorKind::InvalidParameter, "level must be >= 1");
  if (weight.values.size() != map.size()) fail(ErrorKind::InvalidParameter, "need one weight per branch");
  for (const auto& w : weight.values) {
    if (w.sign() < 0) fail(ErrorKind::InvalidParameter, "weights must be nonnegative");
  }
  RefineOptions opts;
  opts.keep_levels = false;
  auto tree = refine(map, hole, n, opts);
  if (tree.count(n) == 0) return -std::numeric_limits<double>::infinity();
  Scalar total = Scalar::constant_like(weight.values.front(), 0);
  for (const auto& c : tree.level(n)) {
    Scalar prod = Scalar::constant_like(weight.values.front(), 1);
    for (uint16_t b : c.itinerary) prod *= weight.values[b];
    total += prod * Scalar::constant_like(prod, static_cast<long>(c.components.size()));
  }
  if (total.sign() <= 0) return -std::numeric_limits<double>::infinity();
  return log_scalar(total) / n;
}

namespace {

struct LevelAccumulator {
  std::optional<Scalar> max_derivative, max_ratio, a_n, A_n, max_var;
  uint64_t cylinders = 0;
  uint64_t survivors = 0;
  bool any_survivor = false;
};

void keep_max(std::optional<Scalar>& slot, const Scalar& v) {
  if (!slot || *slot < v) slot = v;
}

// var_Z of the indicator of a union of open components of Z; components that
// share an endpoint are one component up to a null set.
long indicator_variation(const IntervalOpen& z, const std::vector<IntervalOpen>& comps) {
  long jumps = 0;
  size_t i = 0;
  while (i < comps.size()) {
    Scalar lo = comps[i].lo;
    Scalar hi = comps[i].hi;
    size_t j = i + 1;
    while (j < comps.size() && comps[j].lo == hi) hi = comps[j++].hi;
    jumps += 2;
    if (lo == z.lo) --jumps;
    if (hi == z.hi) --jumps;
    i = j;
  }
  return jumps;
}

struct DiagnosticsWalker {
  const PiecewiseMap& map;
  const std::vector<std::vector<IntervalOpen>>& pieces_by_branch;
  int n_max;
  uint64_t node_cap;
  uint64_t nodes = 0;
  std::vector<LevelAccumulator> acc;

  void visit(int n, const IntervalOpen& z, const Moebius& m, const std::vector<IntervalOpen>& survivors) {
    if (++nodes > node_cap) fail(ErrorKind::ResourceLimit, "diagnostics exceeded the cylinder cap");
    bool inc = increasing(m);
    IntervalOpen img = image_of(m, inc, z);
    auto& a = acc[n - 1];
    ++a.cylinders;
    a.survivors += survivors.size();

    Scalar dlo = m.derivative(z.lo).abs();
    Scalar dhi = m.derivative(z.hi).abs();
    Scalar sup_d = max(dlo, dhi);
    Scalar ratio = sup_d / img.length();
    keep_max(a.max_derivative, sup_d);
    keep_max(a.max_ratio, ratio);

    Scalar g = Scalar::constant_like(sup_d, survivors.empty() ? 0 : 1);
    Scalar var = Scalar::constant_like(sup_d, indicator_variation(z, survivors));
    Scalar two = Scalar::constant_like(sup_d, 2), three = Scalar::constant_like(sup_d, 3);
    keep_max(a.max_var, var);
    keep_max(a.a_n, three * g + var);
    keep_max(a.A_n, (two * g + var) * ratio + g * sup_d);
    if (!survivors.empty()) a.any_survivor = true;

    if (n == n_max) return;
    std::vector<IntervalOpen> surv_images;
    for (const auto& s : survivors) surv_images.push_back(image_of(m, inc, s));
    for (size_t b : branch_order(map.size(), inc)) {
      const Branch& br = map.branches()[b];
      auto child = pull_back(m, inc, z, img, br.domain());
      if (!child) continue;
      std::vector<IntervalOpen> child_surv;
      const auto& targets = pieces_by_branch[b];
      size_t nt = targets.size();
      for (size_t si = 0; si < survivors.size(); ++si) {
        for (size_t t = 0; t < nt; ++t) {
          if (auto iv = pull_back(m, inc, survivors[si], surv_images[si], targets[inc ? t : nt - 1 - t])) {
            child_surv.push_back(std::move(*iv));
          }
        }
      }
      visit(n + 1, *child, br.fn().after(m), child_surv);
    }
  }
};

}  // namespace

std::vector<ExpansionDiagnostics> expansion_diagnostics_levels(const PiecewiseMap& map, const Hole& hole,
                                                               int n_max, uint64_t node_cap) {
  if (n_max < 1) fail(ErrorKind::InvalidParameter, "level must be >= 1");
  check_hole(map, hole);
  std::vector<std::vector<IntervalOpen>> pieces(map.size());
  for (size_t b = 0; b < map.size(); ++b) pieces[b] = hole.subtract_from(map.branches()[b].domain());

  DiagnosticsWalker walker{map, pieces, n_max, node_cap, 0, std::vector<LevelAccumulator>(n_max)};
  for (size_t b = 0; b < map.size(); ++b) {
    const Branch& br = map.branches()[b];
    walker.visit(1, br.domain(), br.fn(), pieces[b]);
  }

  std::vector<ExpansionDiagnostics> out;
  for (int n = 1; n <= n_max; ++n) {
    const auto& a = walker.acc[n - 1];
    if (a.cylinders == 0) {
      fail(ErrorKind::EmptyPartition, "the unrestricted partition is empty at level " + std::to_string(n));
    }
    ExpansionDiagnostics d;
    d.n = n;
    d.max_derivative = *a.max_derivative;
    d.max_expansion_ratio = *a.max_ratio;
    d.a_n_exact = *a.a_n;
    d.A_n_exact = *a.A_n;
    d.max_variation = *a.max_var;
    d.cylinders = a.cylinders;
    d.survivors = a.survivors;
    d.lambda_n = log_scalar(d.max_derivative) / n;
    d.xi_n = log_scalar(d.max_expansion_ratio) / n;
    d.theta_n = a.any_survivor ? 0.0 : -std::numeric_limits<double>::infinity();
    d.a_n = d.a_n_exact.to_double();
    d.A_n = d.A_n_exact.to_double();
    out.push_back(std::move(d));
  }
  return out;
}

ExpansionDiagnostics expansion_diagnostics(const PiecewiseMap& map, int n, const Hole& hole) {
  return expansion_diagnostics_levels(map, hole, n).back();
}

void write_counts_csv(std::ostream& os, const RefinementTree& tree) {
  os << "level,count,entropy_estimate\n";
  char buf[64];
  for (int n = 1; n <= tree.depth(); ++n) {
    std::snprintf(buf, sizeof buf, "%.15g", entropy_estimate(tree, n));
    os << n << ',' << tree.count(n) << ',' << buf << '\n';
  }
}

}  // namespace holed
