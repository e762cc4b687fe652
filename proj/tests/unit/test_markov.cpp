#include <doctest.h>

#include <cmath>
#include <sstream>

#include "holed/error.hpp"
#include "holed/markov.hpp"
#include "oracles.hpp"

using namespace holed;

namespace {

Hole hole(long a, long b, long c, long d) { return Hole::interval(Scalar::exact(a, b), Scalar::exact(c, d)); }

std::vector<std::string> strings(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& q : v) out.push_back(rational_to_string(q));
  return out;
}

}  // namespace

TEST_CASE("refinement for the hole [3/4, 5/6]") {
  auto ref = refine_markov(build_d_adic(2), hole(3, 4, 5, 6));
  CHECK(strings(ref.breakpoints) == std::vector<std::string>{"0", "1/3", "1/2", "2/3", "3/4", "5/6", "1"});
  REQUIRE(ref.states.size() == 5);
  CHECK(ref.states[4].lo.to_string() == "5/6");

  auto m = transition_matrix(ref);
  std::vector<long long> cp;
  for (const auto& c : m.char_poly) cp.push_back(c.get_si());
  CHECK(cp == std::vector<long long>{0, 1, 2, -1, -2, 1});
  CHECK(cp == oracle::char_poly_leibniz(m.entries));

  auto rep = spectral_report(m);
  CHECK(rep.rho == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-15));
  CHECK(rep.rho_poly == Poly{-1, -1, 1});
  CHECK(rep.rho_poly_minimal);
  CHECK(rep.algebraic_multiplicity == 2);
  CHECK(rep.geometric_multiplicity == 1);
  CHECK(rep.pole_order_p == 2);
  CHECK(rep.second_eigenvalue_modulus < rep.rho);
}

TEST_CASE("refinement for the left hole [3/4, 1]") {
  auto ref = refine_markov(build_d_adic(2), hole(3, 4, 1, 1));
  CHECK(strings(ref.breakpoints) == std::vector<std::string>{"0", "1/2", "3/4", "1"});
  auto m = transition_matrix(ref);
  CHECK(m.entries == IntMatrix{{1, 1}, {1, 0}});
  auto rep = spectral_report(m);
  CHECK(rep.algebraic_multiplicity == 1);
  CHECK(rep.pole_order_p == 1);
}

TEST_CASE("degenerate spectra") {
  TransitionMatrix id;
  id.size = 3;
  id.entries = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  id.char_poly = characteristic_polynomial(id.entries);
  auto rep = spectral_report(id);
  CHECK(rep.rho == 1);
  CHECK(rep.algebraic_multiplicity == 3);
  CHECK(rep.geometric_multiplicity == 3);
  CHECK(rep.pole_order_p == 1);

  auto total = entropy_markov(build_d_adic(2), hole(0, 1, 1, 1));
  CHECK(total.matrix.size == 0);
  CHECK(total.entropy == 0);

  auto half = entropy_markov(build_d_adic(2), hole(1, 2, 1, 1));
  CHECK(half.matrix.entries == IntMatrix{{1}});
  CHECK(half.entropy == 0);
}

TEST_CASE("Jordan consistency on assorted holes") {
  const long holes[][4] = {{3, 4, 5, 6}, {2, 3, 1, 1}, {1, 3, 1, 2}, {5, 8, 3, 4}, {1, 5, 2, 5}, {7, 8, 1, 1}};
  for (const auto& h : holes) {
    auto res = entropy_markov(build_d_adic(2), hole(h[0], h[1], h[2], h[3]));
    const auto& r = res.report;
    CHECK(r.geometric_multiplicity <= r.algebraic_multiplicity);
    CHECK(r.pole_order_p <= r.algebraic_multiplicity - r.geometric_multiplicity + 1);
    if (r.algebraic_multiplicity == 1) CHECK(r.pole_order_p == 1);
    long trace = 0;
    for (size_t i = 0; i < res.matrix.size; ++i) trace += res.matrix.entries[i][i];
    if (res.matrix.size > 0) CHECK(-res.matrix.char_poly[res.matrix.size - 1] == trace);
    // Row i counts the states covered by the image of state i.
    for (size_t i = 0; i < res.matrix.size; ++i) {
      long sum = 0, covered = 0;
      for (long e : res.matrix.entries[i]) sum += e;
      for (const auto& s : res.refinement.states) covered += res.refinement.images[i].contains(s);
      CHECK(sum == covered);
    }
  }
}

TEST_CASE("non-Markov and float input is rejected") {
  auto irrational = Hole::interval(Scalar::floating(1 / M_PI), Scalar::floating(1.0));
  CHECK_THROWS_AS(refine_markov(to_float(build_d_adic(2)), irrational), Error);
  // The orbit of 1012/1013 closes only after hundreds of points.
  CHECK_THROWS_AS(refine_markov(build_d_adic(2), hole(1012, 1013, 1, 1), 50), Error);
  CHECK_NOTHROW(refine_markov(build_d_adic(2), hole(1012, 1013, 1, 1)));
}

TEST_CASE("DOT export") {
  auto ref = refine_markov(build_d_adic(2), hole(3, 4, 1, 1));
  std::ostringstream os;
  write_dot(os, ref, transition_matrix(ref));
  CHECK(os.str().find("s1 -> s0") != std::string::npos);
  CHECK(os.str().find("s1 -> s1") == std::string::npos);
}
