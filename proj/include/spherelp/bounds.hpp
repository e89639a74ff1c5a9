#pragma once

// Universal lower and upper bounds on weighted h-energy, for weighted codes
// and weighted designs, together with their certificate polynomials.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spherelp/orthopoly.hpp"
#include "spherelp/potentials.hpp"
#include "spherelp/quadrature.hpp"

namespace spherelp {

enum class BoundKind { ulb, uub, design_ulb, design_uub };

std::string to_string(BoundKind kind);

struct Check {
  std::string name;
  bool passed = true;
  double value = 0.0;
  double threshold = 0.0;
  std::string note;
  /// Informational checks are reported but do not affect feasibility.
  bool informational = false;
};

struct WeightSummary {
  int size = 0;
  double sum_of_squares = 0.0;
  double variance = 0.0;
};

struct BoundReport {
  BoundKind kind = BoundKind::ulb;
  int n = 3;
  int m = 1;
  /// N_W of the code class.
  double capacity = 0.0;
  std::string potential;
  /// ULB rule for N_W, or the Levenshtein rule for s (capacity N_1).
  QuadratureRule rule;
  double value = 0.0;
  MonomialPoly certificate_poly;
  GegenbauerSeries certificate{3, {0.0}};
  double lambda_star = 0.0;
  double n1 = 0.0;
  std::optional<WeightSummary> weights;
  bool feasible = true;
  std::vector<Check> diagnostics;

  const Check* find(std::string_view name) const;
};

enum class TestSign { zero, positive, negative };

struct TestFunctionReport {
  int n = 3;
  int m = 1;
  QuadratureRule rule;
  /// values[j - 1] = Q_j for j = 1..j_max.
  std::vector<double> values;
  std::vector<TestSign> signs;
  /// Smallest j with Q_j < -tol, if any.
  std::optional<int> improvable_degree;
  std::string note;
};

/// Sum rho_i h(alpha_i) for the 1/N_W rule, certified by the Hermite interpolant
/// at the doubled nodes.
BoundReport ulb(int n, double capacity, const Potential& h);

/// ulb() with N_W = 1 / sum w_i^2.
BoundReport ulb_for_weights(std::span<const double> weights, int n, const Potential& h);

/// Upper bound for codes with maximal inner product s. The degree comes from s
/// unless m_override is given; an override may place s outside the validity interval.
BoundReport uub(int n, double capacity, double s, const Potential& h, std::optional<int> m_override = {});

/// Lower bound for weighted tau-designs with D(n,tau) < N_W <= D(n,tau+1).
BoundReport design_ulb(int n, double capacity, int tau, const Potential& h);

/// Upper bound for weighted tau-designs: lambda = 0 in the UUB construction.
/// The degree defaults to tau; an override m needs m - 1 <= tau.
BoundReport design_uub(int n, double capacity, double s, int tau, const Potential& h,
                       std::optional<int> m_override = {});

/// Q_j = 1/N_W + sum rho_i P_j(alpha_i) for j = 1..j_max against the ULB rule.
TestFunctionReport test_functions(int n, double capacity, int j_max, double tol = 1e-9);

}  // namespace spherelp
