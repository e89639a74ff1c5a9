#pragma once

// Potential functions h(t) of the inner product t = x . y on the sphere.

#include <span>
#include <string>
#include <string_view>

namespace spherelp {

enum class PotentialKind { riesz, newton, gaussian, logarithmic, fejes_toth };

struct MonotonicityClass {
  bool absolutely_monotone = false;
  bool strictly_absolutely_monotone = false;
  bool shift_absolutely_monotone = false;
  /// Smallest j with h^{(i)} >= 0 on [-1, 1) for every i >= j; negative when unknown.
  int min_nonneg_derivative_order = -1;
  /// Sampled finite-difference signs agree with the closed-form flags.
  bool sampling_consistent = true;

  /// h^{(order)} >= 0 and every higher derivative as well.
  bool derivatives_nonneg_from(int order) const {
    return min_nonneg_derivative_order >= 0 && min_nonneg_derivative_order <= order;
  }
};

class Potential {
 public:
  /// [2(1-t)]^{-alpha/2}, alpha > 0.
  static Potential riesz(double alpha);
  /// [2(1-t)]^{1-n/2}; riesz(n-2), and the constant 1 for n = 2.
  static Potential newton(int n);
  /// exp(-alpha (1-t)), alpha > 0.
  static Potential gaussian(double alpha);
  /// -log[2(1-t)].
  static Potential logarithmic();
  /// -sqrt(2(1-t)).
  static Potential fejes_toth();
  /// base(t) + c.
  static Potential shifted(const Potential& base, double c);

  /// Parses `riesz:1.0`, `newton`, `newton:3`, `gaussian:2.5`, `log`, `fejes-toth`,
  /// `shift:2.0:fejes-toth`. A bare `newton` takes its exponent from `dimension`.
  static Potential parse(std::string_view spec, int dimension = 0);

  PotentialKind kind() const { return kind_; }
  bool is_shifted() const { return shifted_; }
  double shift() const { return shift_; }
  double parameter() const { return param_; }

  double value(double t) const;
  double derivative(double t) const;
  double operator()(double t) const { return value(t); }

  /// Canonical spelling accepted by parse().
  std::string spec() const;

 private:
  Potential(PotentialKind kind, double param) : kind_(kind), param_(param) {}

  PotentialKind kind_;
  double param_;
  bool shifted_ = false;
  double shift_ = 0.0;
};

/// Monotonicity flags from closed-form knowledge of each kind. Central
/// differences of h' on `sample_grid` for orders 1..max_order are used only as a
/// consistency check and reported in `sampling_consistent`.
MonotonicityClass classify(const Potential& h, int max_order, std::span<const double> sample_grid);
MonotonicityClass classify(const Potential& h);

}  // namespace spherelp
