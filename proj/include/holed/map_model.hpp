#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holed/scalar.hpp"

namespace holed {

/// Open interval (lo, hi) with lo < hi.
struct IntervalOpen {
  Scalar lo;
  Scalar hi;

  IntervalOpen() = default;
  IntervalOpen(Scalar l, Scalar h);

  Scalar length() const { return hi - lo; }
  bool contains(const Scalar& x) const { return lo < x && x < hi; }
  bool contains(const IntervalOpen& other) const { return lo <= other.lo && other.hi <= hi; }
  bool identical(const IntervalOpen& other) const {
    return lo.identical(other.lo) && hi.identical(other.hi);
  }
};

/// Closed interval [lo, hi]; lo == hi is allowed.
struct ClosedInterval {
  Scalar lo;
  Scalar hi;

  Scalar length() const { return hi - lo; }
};

/// Intersection of two open intervals if it has positive length.
std::optional<IntervalOpen> intersect(const IntervalOpen& a, const IntervalOpen& b);

/// x -> (p x + q) / (r x + s). Affine maps are the case r = 0, s = 1.
struct Moebius {
  Scalar p, q, r, s;

  static Moebius affine(const Scalar& slope, const Scalar& offset);
  static Moebius identity_like(const Scalar& like);

  Scalar operator()(const Scalar& x) const { return (p * x + q) / (r * x + s); }
  Scalar inverse(const Scalar& y) const { return (s * y - q) / (p - r * y); }
  Scalar derivative(const Scalar& x) const;
  Scalar det() const { return p * s - q * r; }
  bool is_affine() const { return r.is_zero(); }

  /// this ∘ inner
  Moebius after(const Moebius& inner) const;

  /// Image of an open interval on which the map has no pole.
  IntervalOpen image(const IntervalOpen& iv) const;
  /// Preimage of an open interval, assuming no pole in the relevant range.
  IntervalOpen preimage(const IntervalOpen& iv) const;
};

enum class BranchKind { Affine, Moebius };
enum class Orientation { Increasing, Decreasing };

class Branch {
 public:
  static Branch affine(IntervalOpen domain, Scalar slope, Scalar offset);
  static Branch moebius(IntervalOpen domain, Scalar p, Scalar q, Scalar r, Scalar s);

  const IntervalOpen& domain() const { return domain_; }
  BranchKind kind() const { return kind_; }
  Orientation orientation() const { return orientation_; }
  const Moebius& fn() const { return fn_; }

  Scalar operator()(const Scalar& x) const { return fn_(x); }
  Scalar inverse(const Scalar& y) const { return fn_.inverse(y); }
  Scalar derivative(const Scalar& x) const { return fn_.derivative(x); }

  /// One-sided limits of the branch at the ends of its domain closure.
  Scalar left_end_value() const { return fn_(domain_.lo); }
  Scalar right_end_value() const { return fn_(domain_.hi); }
  /// Image of the domain, T(Z).
  IntervalOpen image() const { return fn_.image(domain_); }

  /// Extensional equality: same domain and proportional coefficients.
  bool same_as(const Branch& other) const;

  /// Coefficients as written: (slope, offset) or (p, q, r, s).
  std::vector<Scalar> coefficients() const;

 private:
  Branch(IntervalOpen domain, BranchKind kind, Moebius fn);

  IntervalOpen domain_;
  BranchKind kind_;
  Moebius fn_;
  Orientation orientation_ = Orientation::Increasing;
};

class PiecewiseMap {
 public:
  /// Validates disjointness, ordering, and that every branch image closure
  /// lies in the closure of the codomain.
  PiecewiseMap(IntervalOpen codomain, std::vector<Branch> branches, std::string name = "custom");

  const IntervalOpen& codomain() const { return codomain_; }
  const std::vector<Branch>& branches() const { return branches_; }
  size_t size() const { return branches_.size(); }
  const std::string& name() const { return name_; }
  Mode mode() const { return codomain_.lo.mode(); }

  /// Index of the branch whose domain contains x, if any.
  std::optional<size_t> branch_at(const Scalar& x) const;

  bool same_as(const PiecewiseMap& other) const;

 private:
  IntervalOpen codomain_;
  std::vector<Branch> branches_;
  std::string name_;
};

/// Finite union of closed intervals, sorted, with overlapping or touching
/// pieces merged.
class Hole {
 public:
  Hole() = default;
  explicit Hole(std::vector<ClosedInterval> pieces);

  static Hole interval(Scalar lo, Scalar hi) { return Hole({ClosedInterval{std::move(lo), std::move(hi)}}); }

  const std::vector<ClosedInterval>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  Scalar measure() const;
  bool contains(const Scalar& x) const;
  /// x lies in the interior of some piece.
  bool interior_contains(const Scalar& x) const;

  /// Normalizing an already normalized hole is the identity.
  Hole normalized() const { return Hole(pieces_); }
  bool same_as(const Hole& other) const;

  /// Open components of iv minus the hole with positive length.
  std::vector<IntervalOpen> subtract_from(const IntervalOpen& iv) const;

 private:
  std::vector<ClosedInterval> pieces_;
};

/// Lebesgue measure of the symmetric difference.
Scalar hole_dist(const Hole& h1, const Hole& h2);

/// Level-1 survivor pieces: positive-length components of each branch domain
/// minus the hole, left to right.
std::vector<IntervalOpen> restrict_partition(const PiecewiseMap& map, const Hole& hole);

/// Throws unless every hole piece lies in the closure of the map's codomain
/// and uses the map's scalar mode.
void check_hole(const PiecewiseMap& map, const Hole& hole);

/// x -> d x mod 1 on (0,1).
PiecewiseMap build_d_adic(int d, Mode mode = Mode::Exact, double epsilon = kDefaultEpsilon);

/// Scaled Farey map: a x/(1-x) on (0,1/2), a (1-x)/x on (1/2,1).
PiecewiseMap build_scaled_farey(const Scalar& a);

/// The doubling map, checked extensionally.
bool is_doubling_map(const PiecewiseMap& map);

/// Convert all parameters of a map / hole to float mode.
PiecewiseMap to_float(const PiecewiseMap& map, double epsilon = kDefaultEpsilon);
Hole to_float(const Hole& hole, double epsilon = kDefaultEpsilon);

}  // namespace holed
