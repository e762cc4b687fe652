#include <doctest.h>

#include <random>

#include "holed/error.hpp"
#include "holed/map_model.hpp"

using namespace holed;

namespace {

Scalar q(long n, long d) { return Scalar::exact(n, d); }

// m(H1 Δ H2) by classifying every elementary interval between endpoints.
Rational symdiff_oracle(const Hole& a, const Hole& b) {
  std::vector<Rational> pts;
  for (const Hole* h : {&a, &b})
    for (const auto& p : h->pieces()) pts.push_back(p.lo.rational()), pts.push_back(p.hi.rational());
  std::sort(pts.begin(), pts.end());
  auto inside = [](const Hole& h, const Rational& x) {
    for (const auto& p : h.pieces())
      if (p.lo.rational() <= x && x <= p.hi.rational()) return true;
    return false;
  };
  Rational total = 0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    Rational mid = (pts[i] + pts[i + 1]) / 2;
    if (inside(a, mid) != inside(b, mid)) total += pts[i + 1] - pts[i];
  }
  return total;
}

Hole random_hole(std::mt19937& rng, int max_pieces = 3) {
  std::uniform_int_distribution<int> np(0, max_pieces), num(0, 60);
  std::vector<ClosedInterval> pieces;
  int n = np(rng);
  for (int i = 0; i < n; ++i) {
    int a = num(rng), b = num(rng);
    if (a > b) std::swap(a, b);
    pieces.push_back({q(a, 60), q(b, 60)});
  }
  return Hole(pieces);
}

}  // namespace

TEST_CASE("scalar modes") {
  Scalar e = q(1, 3);
  Scalar f = Scalar::floating(0.25);
  CHECK_THROWS_AS(e + f, Error);
  CHECK_THROWS_AS((void)(e < f), Error);
  CHECK((q(1, 3) + q(1, 6)).rational() == Rational(1, 2));
  CHECK(parse_scalar("0.75", true).rational() == Rational(3, 4));
  CHECK(parse_scalar("6/8", false).rational() == Rational(3, 4));
  CHECK_FALSE(parse_scalar("0.75", false).is_exact());
  CHECK_THROWS_AS(parse_scalar("1/0", true), Error);
  CHECK_THROWS_AS(parse_scalar("abc", true), Error);
  CHECK(Scalar::floating(0.5) == Scalar::floating(0.5 + 1e-14));
  CHECK(log_rational(Rational(Integer(1) << 3000)) == doctest::Approx(3000 * std::log(2.0)));
}

TEST_CASE("d-adic builder") {
  auto m = build_d_adic(2);
  REQUIRE(m.size() == 2);
  CHECK(m.branches()[1].coefficients()[1].rational() == -1);
  auto t = build_d_adic(3);
  REQUIRE(t.size() == 3);
  for (size_t k = 0; k < 3; ++k) {
    auto c = t.branches()[k].coefficients();
    CHECK(c[0].rational() == 3);
    CHECK(c[1].rational() == -long(k));
    auto img = t.branches()[k].image();
    CHECK(img.lo.rational() == 0);
    CHECK(img.hi.rational() == 1);
  }
  CHECK_THROWS_AS(build_d_adic(1), Error);
}

TEST_CASE("scaled Farey builder") {
  auto f1 = build_scaled_farey(Scalar(1));
  CHECK(f1.branches()[0](q(1, 3)).rational() == Rational(1, 2));
  CHECK(f1.branches()[0].inverse(q(1, 2)).rational() == Rational(1, 3));
  CHECK(f1.branches()[1].orientation() == Orientation::Decreasing);
  auto fh = build_scaled_farey(q(1, 2));
  CHECK(fh.branches()[1](q(2, 3)).rational() == Rational(1, 4));
  CHECK_THROWS_AS(build_scaled_farey(Scalar(0)), Error);
  CHECK_THROWS_AS(build_scaled_farey(q(3, 2)), Error);
}

TEST_CASE("branch validation") {
  CHECK_THROWS_AS(Branch::affine({q(0, 1), q(1, 2)}, Scalar(0), Scalar(0)), Error);
  // pole at x = 1/4 inside the domain
  CHECK_THROWS_AS(Branch::moebius({q(0, 1), q(1, 2)}, Scalar(1), Scalar(0), Scalar(-4), Scalar(1)), Error);
  // overlapping domains
  std::vector<Branch> bs = {Branch::affine({q(0, 1), q(1, 2)}, Scalar(2), Scalar(0)),
                            Branch::affine({q(1, 4), q(1, 1)}, Scalar(1), Scalar(0))};
  CHECK_THROWS_AS(PiecewiseMap({q(0, 1), q(1, 1)}, bs), Error);
}

TEST_CASE("inverse exactness and derivative sign") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(1, 999);
  std::vector<PiecewiseMap> maps = {build_d_adic(2), build_d_adic(5), build_scaled_farey(q(4, 5)),
                                    build_scaled_farey(Scalar(1)), build_scaled_farey(q(2, 5))};
  for (const auto& m : maps) {
    for (const auto& b : m.branches()) {
      for (int i = 0; i < 50; ++i) {
        Scalar x = b.domain().lo + b.domain().length() * q(num(rng), 1000);
        CHECK(b.inverse(b(x)).rational() == x.rational());
      }
      int want = b.orientation() == Orientation::Increasing ? 1 : -1;
      CHECK(b.derivative(b.domain().lo).sign() == want);
      CHECK(b.derivative(b.domain().hi).sign() == want);
    }
  }
}

TEST_CASE("hole distance examples") {
  auto a = Hole::interval(parse_scalar("0.2", true), parse_scalar("0.4", true));
  auto b = Hole::interval(parse_scalar("0.3", true), parse_scalar("0.5", true));
  CHECK(hole_dist(a, b).rational() == Rational(1, 5));
  CHECK(hole_dist(a, a).is_zero());
  CHECK(hole_dist(Hole::interval(q(0, 1), q(1, 4)), Hole::interval(q(1, 2), q(3, 4))).rational() == Rational(1, 2));
  auto af = Hole::interval(Scalar::floating(0.2), Scalar::floating(0.4));
  auto bf = Hole::interval(Scalar::floating(0.3), Scalar::floating(0.5));
  CHECK(hole_dist(af, bf).to_double() == doctest::Approx(0.2));
  CHECK_THROWS_AS(hole_dist(a, bf), Error);
}

TEST_CASE("hole distance is a pseudometric") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    Hole h1 = random_hole(rng), h2 = random_hole(rng), h3 = random_hole(rng);
    Scalar d12 = hole_dist(h1, h2), d21 = hole_dist(h2, h1);
    CHECK(d12.rational() == symdiff_oracle(h1, h2));
    CHECK(d12.rational() == d21.rational());
    CHECK(hole_dist(h1, h1).is_zero());
    CHECK(hole_dist(h1, h3) <= d12 + hole_dist(h2, h3));
    CHECK(h1.normalized().same_as(h1));
  }
}

TEST_CASE("normalization merges touching pieces and keeps points") {
  Hole h({{q(1, 2), q(3, 4)}, {q(1, 4), q(1, 2)}, {q(7, 8), q(7, 8)}});
  REQUIRE(h.pieces().size() == 2);
  CHECK(h.pieces()[0].lo.rational() == Rational(1, 4));
  CHECK(h.pieces()[1].lo.rational() == Rational(7, 8));
  CHECK(h.measure().rational() == Rational(1, 2));
  CHECK(h.contains(q(7, 8)));
  CHECK_FALSE(h.interior_contains(q(7, 8)));
}

TEST_CASE("restrict_partition") {
  auto d = build_d_adic(2);
  auto p1 = restrict_partition(d, Hole::interval(q(3, 4), q(1, 1)));
  REQUIRE(p1.size() == 2);
  CHECK(p1[1].hi.rational() == Rational(3, 4));
  auto p2 = restrict_partition(d, Hole::interval(q(3, 4), q(5, 6)));
  REQUIRE(p2.size() == 3);
  CHECK(p2[2].lo.rational() == Rational(5, 6));
  CHECK(restrict_partition(d, Hole::interval(q(0, 1), q(1, 1))).empty());
}
