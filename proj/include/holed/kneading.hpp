#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holed/scalar.hpp"

namespace holed {

/// How the orbit a_0, a_1, ... of the hole boundary stopped.
///  Capped(K):        no classification within K steps.
///  PrePeriodic(N,j): a_{N+1} = a_j with 1 <= j <= N (includes a_N = a, j = 1).
///  Escape(N):        a_N > a, so a_{N+1} = a_1.
///  Critical(N):      a_N = 1/2; the flat (0,1/2) has no successor.
struct Termination {
  enum class Kind { Capped, PrePeriodic, Escape, Critical };
  Kind kind = Kind::Capped;
  int N = 0;
  int j = 0;

  bool finite() const { return kind != Kind::Capped; }
  std::string to_string() const;
};

struct TowerOrbit {
  Scalar a;
  std::vector<Scalar> points;  // a_0 .. a_N (or a_0 .. a_K when capped)
  Termination termination;
  std::vector<int> index_set_A;  // k with a_k >= 1/2
  bool approximate = false;      // float-mode repetition matched within epsilon
};

inline constexpr int kDefaultTruncation = 4096;
inline constexpr double kDefaultRootTolerance = 1e-14;

/// Iterates a_{k+1} = T(min{a, a_k}^-) for the doubling map T.
TowerOrbit build_orbit(const Scalar& a, int k_cap = kDefaultTruncation);

/// d(z) = 1 - sum_{k in A} z^{k+1}, truncated after z^{K+1}.
struct DeterminantSeries {
  int K = 0;
  std::vector<unsigned char> m;  // m_0 .. m_K

  /// Present when the tower is finite: d is then an integer polynomial,
  ///   d(z) = (1 - z^L)(1 - sum_{k<j} m_k z^{k+1}) - sum_{k=j}^{N} m_k z^{k+1}
  /// with L = N - j + 1 (L = 0 and no factor for a critical orbit).
  struct Finite {
    int N = 0;
    int j = 0;
    int period = 0;
    std::vector<Integer> poly;  // lowest degree first
  };
  std::optional<Finite> closed_form;

  /// sum_{k>K} z^{k+1}; zero when the closed form is available.
  double tail_bound(double x) const;
  /// 1 - sum_{k<=K} m_k x^{k+1}
  double truncated(double x) const;
};

DeterminantSeries determinant(const TowerOrbit& orbit, int K = kDefaultTruncation);

struct RootResult {
  double r = 0;
  double residual = 0;
  double derivative = 0;  // d'(r), negative at a simple zero
  double entropy = 0;
  double error_bound = 0;
};

RootResult leading_root(const DeterminantSeries& series, double tol = kDefaultRootTolerance);

struct KneadingResult {
  Scalar a;
  Termination termination;
  int K = 0;
  int p = 1;
  RootResult root;
};

KneadingResult entropy_left_hole(const Scalar& a, int K = kDefaultTruncation,
                                 double tol = kDefaultRootTolerance);

}  // namespace holed
