#pragma once

// Weighted spherical codes: example configurations, weighted energy, weighted
// moments and design-strength checks.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "spherelp/potentials.hpp"

namespace spherelp {

class WeightedCode {
 public:
  /// Rows of `points` are unit vectors (norm within 1e-12); weights positive,
  /// summing to 1 within 1e-12; points pairwise at distance > 1e-9.
  static WeightedCode create(Eigen::MatrixXd points, std::vector<double> weights);
  /// Equal weights 1/N.
  static WeightedCode equal_weights(Eigen::MatrixXd points);

  int dimension() const { return static_cast<int>(points_.cols()); }
  int size() const { return static_cast<int>(points_.rows()); }
  const Eigen::MatrixXd& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  Eigen::VectorXd point(int i) const { return points_.row(i).transpose(); }

  double sum_of_squares() const { return sw_; }
  double capacity() const { return 1.0 / sw_; }
  /// S_W / N - 1 / N^2.
  double variance() const;
  /// Largest inner product between distinct points.
  double max_inner_product() const { return s_; }

 private:
  WeightedCode(Eigen::MatrixXd points, std::vector<double> weights);

  Eigen::MatrixXd points_;
  std::vector<double> weights_;
  double sw_ = 0.0;
  double s_ = -1.0;
};

/// sum_{i != j} w_i w_j h(x_i . x_j)
double energy(const WeightedCode& code, const Potential& h);

/// sum_{i,j} w_i w_j P_ell(x_i . x_j), diagonal included.
double weighted_moment(const WeightedCode& code, int ell);

struct DesignCheckReport {
  int strength = 0;
  /// moments[ell - 1] = M_ell for ell = 1..tau_max.
  std::vector<double> moments;
  double tol = 1e-9;
};

DesignCheckReport design_strength(const WeightedCode& code, int tau_max, double tol = 1e-9);

/// Largest |sum_j w_j f(x . x_j) - f_0| over random polynomials f of degree <= tau
/// and random unit x.
double design_point_identity_check(const WeightedCode& code, int tau, int trials, std::uint64_t seed = 1);

/// Largest |sum_i w_i p(x_i) - int p dsigma| over random polynomials p in n
/// variables of total degree <= tau, with exact monomial integrals.
double sphere_quadrature_check(const WeightedCode& code, int tau, int trials, std::uint64_t seed = 1);

/// |sum_i w_i x^alpha(x_i) - int x^alpha dsigma| for a single monomial.
double monomial_residual(const WeightedCode& code, const std::vector<int>& exponents);

/// Surface average of x^alpha over the unit sphere.
double sphere_monomial_moment(const std::vector<int>& exponents);

/// Built-in configurations: pentakis, cube-cross:n, ngon:N, icosahedron,
/// dodecahedron, cube:n, cross:n, 24-cell.
WeightedCode build_config(std::string_view name);

/// Closed-form energies from the inner-product distributions of `pentakis` and `cube-cross:n`.
double closed_form_energy(std::string_view name, const Potential& h);

}  // namespace spherelp
