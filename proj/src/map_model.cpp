#include "holed/map_model.hpp"

#include <algorithm>

#include "holed/error.hpp"

namespace holed {

IntervalOpen::IntervalOpen(Scalar l, Scalar h) : lo(std::move(l)), hi(std::move(h)) {
  if (!(lo < hi)) {
    fail(ErrorKind::InvalidParameter,
         "open interval needs lo < hi, got (" + lo.to_string() + "," + hi.to_string() + ")");
  }
}

std::optional<IntervalOpen> intersect(const IntervalOpen& a, const IntervalOpen& b) {
  Scalar lo = max(a.lo, b.lo);
  Scalar hi = min(a.hi, b.hi);
  if (!(lo < hi)) return std::nullopt;
  return IntervalOpen(std::move(lo), std::move(hi));
}

Moebius Moebius::affine(const Scalar& slope, const Scalar& offset) {
  return {slope, offset, Scalar::constant_like(slope, 0), Scalar::constant_like(slope, 1)};
}

Moebius Moebius::identity_like(const Scalar& like) {
  Scalar one = Scalar::constant_like(like, 1), zero = Scalar::constant_like(like, 0);
  return {one, zero, zero, one};
}

Scalar Moebius::derivative(const Scalar& x) const {
  Scalar den = r * x + s;
  return det() / (den * den);
}

Moebius Moebius::after(const Moebius& in) const {
  return {p * in.p + q * in.r, p * in.q + q * in.s, r * in.p + s * in.r, r * in.q + s * in.s};
}

IntervalOpen Moebius::image(const IntervalOpen& iv) const {
  Scalar a = (*this)(iv.lo), b = (*this)(iv.hi);
  if (a < b) return {std::move(a), std::move(b)};
  return {std::move(b), std::move(a)};
}

IntervalOpen Moebius::preimage(const IntervalOpen& iv) const {
  Scalar a = inverse(iv.lo), b = inverse(iv.hi);
  if (a < b) return {std::move(a), std::move(b)};
  return {std::move(b), std::move(a)};
}

Branch::Branch(IntervalOpen domain, BranchKind kind, Moebius fn)
    : domain_(std::move(domain)), kind_(kind), fn_(std::move(fn)) {
  if (fn_.det().is_zero()) fail(ErrorKind::InvalidParameter, "degenerate branch (zero determinant)");
  if (!fn_.r.is_zero()) {
    Scalar pole = -fn_.s / fn_.r;
    if (domain_.lo <= pole && pole <= domain_.hi) {
      fail(ErrorKind::InvalidParameter, "branch pole " + pole.to_string() + " lies in the closure of its domain");
    }
  }
  orientation_ = fn_.det().sign() > 0 ? Orientation::Increasing : Orientation::Decreasing;
}

Branch Branch::affine(IntervalOpen domain, Scalar slope, Scalar offset) {
  if (slope.is_zero()) fail(ErrorKind::InvalidParameter, "affine branch needs a nonzero slope");
  return Branch(std::move(domain), BranchKind::Affine, Moebius::affine(slope, offset));
}

Branch Branch::moebius(IntervalOpen domain, Scalar p, Scalar q, Scalar r, Scalar s) {
  return Branch(std::move(domain), BranchKind::Moebius, Moebius{std::move(p), std::move(q), std::move(r), std::move(s)});
}

std::vector<Scalar> Branch::coefficients() const {
  if (kind_ == BranchKind::Affine) return {fn_.p, fn_.q};
  return {fn_.p, fn_.q, fn_.r, fn_.s};
}

bool Branch::same_as(const Branch& other) const {
  if (domain_.lo != other.domain_.lo || domain_.hi != other.domain_.hi) return false;
  const Scalar a[4] = {fn_.p, fn_.q, fn_.r, fn_.s};
  const Scalar b[4] = {other.fn_.p, other.fn_.q, other.fn_.r, other.fn_.s};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
    }
  }
  return true;
}

PiecewiseMap::PiecewiseMap(IntervalOpen codomain, std::vector<Branch> branches, std::string name)
    : codomain_(std::move(codomain)), branches_(std::move(branches)), name_(std::move(name)) {
  if (branches_.empty()) fail(ErrorKind::InvalidParameter, "map needs at least one branch");
  for (size_t i = 0; i < branches_.size(); ++i) {
    const auto& b = branches_[i];
    if (b.domain().lo.mode() != codomain_.lo.mode()) {
      fail(ErrorKind::ModeMismatch, "branch and codomain use different scalar modes");
    }
    if (!codomain_.contains(b.domain()))
      fail(ErrorKind::InvalidParameter, "branch " + std::to_string(i) + " domain leaves the codomain");
    if (i > 0 && branches_[i - 1].domain().hi > b.domain().lo) {
      fail(ErrorKind::InvalidParameter,
           "branch domains must be disjoint and listed left to right (branch " + std::to_string(i) + ")");
    }
    IntervalOpen img = b.image();
    if (!codomain_.contains(img)) {
      fail(ErrorKind::InvalidParameter, "branch " + std::to_string(i) + " image (" + img.lo.to_string() +
                                            "," + img.hi.to_string() + ") leaves the codomain");
    }
  }
}

std::optional<size_t> PiecewiseMap::branch_at(const Scalar& x) const {
  for (size_t i = 0; i < branches_.size(); ++i) {
    if (branches_[i].domain().contains(x)) return i;
  }
  return std::nullopt;
}

bool PiecewiseMap::same_as(const PiecewiseMap& other) const {
  if (mode() != other.mode() || branches_.size() != other.branches_.size()) return false;
  if (codomain_.lo != other.codomain_.lo || codomain_.hi != other.codomain_.hi) return false;
  for (size_t i = 0; i < branches_.size(); ++i) {
    if (!branches_[i].same_as(other.branches_[i])) return false;
  }
  return true;
}

Hole::Hole(std::vector<ClosedInterval> pieces) {
  for (const auto& p : pieces) {
    if (p.hi < p.lo) fail(ErrorKind::InvalidParameter, "hole piece needs lo <= hi");
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const ClosedInterval& a, const ClosedInterval& b) { return a.lo < b.lo; });
  for (auto& p : pieces) {
    if (!pieces_.empty() && p.lo <= pieces_.back().hi) {
      pieces_.back().hi = max(pieces_.back().hi, p.hi);
    } else {
      pieces_.push_back(std::move(p));
    }
  }
}

Scalar Hole::measure() const {
  if (pieces_.empty()) return Scalar(0);
  Scalar total = Scalar::constant_like(pieces_.front().lo, 0);
  for (const auto& p : pieces_) total += p.length();
  return total;
}

bool Hole::contains(const Scalar& x) const {
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [&](const ClosedInterval& p) { return p.lo <= x && x <= p.hi; });
}

bool Hole::interior_contains(const Scalar& x) const {
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [&](const ClosedInterval& p) { return p.lo < x && x < p.hi; });
}

bool Hole::same_as(const Hole& other) const {
  if (pieces_.size() != other.pieces_.size()) return false;
  for (size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].lo != other.pieces_[i].lo || pieces_[i].hi != other.pieces_[i].hi) return false;
  }
  return true;
}

std::vector<IntervalOpen> Hole::subtract_from(const IntervalOpen& iv) const {
  std::vector<IntervalOpen> out;
  Scalar cur = iv.lo;
  for (const auto& p : pieces_) {
    if (p.hi < cur) continue;
    if (iv.hi <= p.lo) break;
    if (cur < p.lo) out.emplace_back(cur, p.lo);
    cur = max(cur, p.hi);
    if (iv.hi <= cur) return out;
  }
  if (cur < iv.hi) out.emplace_back(cur, iv.hi);
  return out;
}

namespace {

Scalar intersection_measure(const Hole& h1, const Hole& h2, const Scalar& zero) {
  Scalar total = zero;
  const auto& a = h1.pieces();
  const auto& b = h2.pieces();
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    Scalar lo = max(a[i].lo, b[j].lo);
    Scalar hi = min(a[i].hi, b[j].hi);
    if (lo < hi) total += hi - lo;
    if (a[i].hi < b[j].hi) ++i; else ++j;
  }
  return total;
}

}  // namespace

Scalar hole_dist(const Hole& h1, const Hole& h2) {
  if (h1.empty() && h2.empty()) return Scalar(0);
  const Scalar& like = h1.empty() ? h2.pieces().front().lo : h1.pieces().front().lo;
  Scalar zero = Scalar::constant_like(like, 0);
  Scalar m1 = h1.empty() ? zero : h1.measure();
  Scalar m2 = h2.empty() ? zero : h2.measure();
  return m1 + m2 - Scalar::constant_like(like, 2) * intersection_measure(h1, h2, zero);
}

std::vector<IntervalOpen> restrict_partition(const PiecewiseMap& map, const Hole& hole) {
  std::vector<IntervalOpen> out;
  for (const auto& b : map.branches()) {
    auto pieces = hole.subtract_from(b.domain());
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return out;
}

void check_hole(const PiecewiseMap& map, const Hole& hole) {
  for (const auto& p : hole.pieces()) {
    if (p.lo.mode() != map.mode()) fail(ErrorKind::ModeMismatch, "hole and map use different scalar modes");
    if (p.lo < map.codomain().lo || map.codomain().hi < p.hi) {
      fail(ErrorKind::InvalidParameter,
           "hole piece [" + p.lo.to_string() + "," + p.hi.to_string() + "] leaves the closure of the codomain");
    }
  }
}

PiecewiseMap build_d_adic(int d, Mode mode, double epsilon) {
  if (d < 2) fail(ErrorKind::InvalidParameter, "d-adic map needs d >= 2, got " + std::to_string(d));
  auto num = [&](long n, long den) {
    Scalar q = Scalar::exact(n, den);
    return mode == Mode::Exact ? q : q.as_float(epsilon);
  };
  std::vector<Branch> branches;
  for (int k = 0; k < d; ++k) {
    branches.push_back(Branch::affine({num(k, d), num(k + 1, d)}, num(d, 1), num(-k, 1)));
  }
  std::string name = d == 2 ? "doubling" : std::to_string(d) + "-adic";
  return PiecewiseMap({num(0, 1), num(1, 1)}, std::move(branches), name);
}

PiecewiseMap build_scaled_farey(const Scalar& a) {
  Scalar zero = Scalar::constant_like(a, 0), one = Scalar::constant_like(a, 1);
  Scalar half = Scalar::constant_like(a, Rational(1, 2));
  if (!(zero < a) || one < a) fail(ErrorKind::InvalidParameter, "scaled Farey parameter must lie in (0,1], got " + a.to_string());
  std::vector<Branch> branches;
  branches.push_back(Branch::moebius({zero, half}, a, zero, -one, one));
  branches.push_back(Branch::moebius({half, one}, -a, a, one, zero));
  return PiecewiseMap({zero, one}, std::move(branches), "farey");
}

bool is_doubling_map(const PiecewiseMap& map) {
  return map.same_as(build_d_adic(2, map.mode(), map.codomain().lo.epsilon()));
}

namespace {

Scalar fl(const Scalar& s, double eps) { return s.as_float(eps); }

}  // namespace

PiecewiseMap to_float(const PiecewiseMap& map, double eps) {
  std::vector<Branch> branches;
  for (const auto& b : map.branches()) {
    IntervalOpen dom(fl(b.domain().lo, eps), fl(b.domain().hi, eps));
    const Moebius& f = b.fn();
    if (b.kind() == BranchKind::Affine) {
      branches.push_back(Branch::affine(dom, fl(f.p, eps), fl(f.q, eps)));
    } else {
      branches.push_back(Branch::moebius(dom, fl(f.p, eps), fl(f.q, eps), fl(f.r, eps), fl(f.s, eps)));
    }
  }
  return PiecewiseMap({fl(map.codomain().lo, eps), fl(map.codomain().hi, eps)}, std::move(branches), map.name());
}

Hole to_float(const Hole& hole, double eps) {
  std::vector<ClosedInterval> pieces;
  for (const auto& p : hole.pieces()) pieces.push_back({fl(p.lo, eps), fl(p.hi, eps)});
  return Hole(std::move(pieces));
}

}  // namespace holed
