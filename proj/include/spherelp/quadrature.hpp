#pragma once

// 1/N-quadrature rules built from the Levenshtein function L_m(n, s):
//
//   f_0 = f(1) / N + sum_i rho_i f(alpha_i)      for every deg f <= m,
//
// with m = 2k - 1 + eps, nodes alpha_0 < ... < alpha_{k-1+eps} = s and
// alpha_0 = -1 exactly when eps = 1.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spherelp/orthopoly.hpp"

namespace spherelp {

inline constexpr int kMaxRuleDegree = 25;

struct DegreeSplit {
  int m = 1;
  int k = 1;
  int eps = 0;

  static DegreeSplit from_degree(int m);
};

struct QuadratureRule {
  int n = 3;
  int m = 1;
  int k = 1;
  int eps = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  double capacity = 0.0;
  double s = 0.0;

  /// f(1)/capacity + sum rho_i f(alpha_i)
  double apply(const GegenbauerSeries& f) const;
};

struct LevenshteinPolynomial {
  int n = 3;
  int m = 1;
  double s = 0.0;
  /// Zeros alpha_0 < ... < alpha_{k-1+eps} = s.
  std::vector<double> roots;
  /// Monic: (t+1)^eps (t-s) prod_interior (t - alpha_i)^2.
  MonomialPoly monomial;
  GegenbauerSeries gegenbauer{3, {0.0}};
  bool outside_validity = false;
};

/// Delsarte-Goethals-Seidel number D(n, m).
std::int64_t dgs_bound(int n, int m);

/// The unique m >= 1 with D(n,m) < capacity <= D(n,m+1); m = 1 for capacity in (1, 2].
DegreeSplit select_degree_from_capacity(int n, double capacity);

/// [t_{k-1+eps}^{1,1-eps}, t_k^{1,eps}]
std::pair<double, double> validity_interval(int n, int m);

/// Smallest m whose validity interval contains s.
DegreeSplit select_degree_from_s(int n, double s);

/// L_m(n, s). Throws ValidityError for s outside the validity interval unless allow_outside.
double levenshtein_function(int n, int m, double s, bool allow_outside = false);

/// Nodes of the 1/capacity rule of degree m whose largest node is s: the
/// roots of L_m(n, t) = capacity with denominators cleared.
std::vector<double> levenshtein_nodes(int n, int m, double s, double capacity);

/// rho_i = [(l_i)_0 - l_i(1)/capacity] / l_i(alpha_i); exactness up to degree
/// 2k-1+eps is verified. Throws NumericalError on non-positive weights or lost exactness.
std::vector<double> compute_weights(int n, std::span<const double> nodes, double capacity);
/// Same formula without any checks.
std::vector<double> lagrange_weights(int n, std::span<const double> nodes, double capacity);

/// Largest deviation of the rule from exactness on P_0..P_max_degree.
double exactness_defect(const QuadratureRule& rule, int max_degree);

/// ULB rule for capacity N_W > 2.
QuadratureRule solve_ulb_rule(int n, double capacity);

/// The Levenshtein rule for a given s: capacity N_1 = L_m(n, s), largest node s.
QuadratureRule levenshtein_rule(int n, int m, double s, bool allow_outside = false);

LevenshteinPolynomial levenshtein_polynomial(int n, int m, double s, bool allow_outside = false);

}  // namespace spherelp
