#pragma once

// Normalized Gegenbauer polynomials P_i^{(n)} (P_i(1) = 1), adjacent Jacobi
// polynomials, moments of the measure
//   d mu_n(t) = gamma_n (1 - t^2)^{(n-3)/2} dt
// and conversion between the power basis and the Gegenbauer basis.

#include <span>
#include <vector>

namespace spherelp {

inline constexpr int kMaxPolyDegree = 64;

/// Polynomial in the power basis, c_0 + c_1 t + ... + c_d t^d.
class MonomialPoly {
 public:
  MonomialPoly() : coeffs_{0.0} {}
  explicit MonomialPoly(std::vector<double> coeffs);

  static MonomialPoly constant(double c) { return MonomialPoly({c}); }
  /// Monic polynomial prod (t - r).
  static MonomialPoly from_roots(std::span<const double> roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const { return coeffs_; }
  double operator[](int i) const { return i <= degree() ? coeffs_[static_cast<std::size_t>(i)] : 0.0; }

  double operator()(double t) const;
  MonomialPoly derivative() const;

  friend MonomialPoly operator+(const MonomialPoly& a, const MonomialPoly& b);
  friend MonomialPoly operator-(const MonomialPoly& a, const MonomialPoly& b);
  friend MonomialPoly operator*(const MonomialPoly& a, const MonomialPoly& b);
  friend MonomialPoly operator*(double c, const MonomialPoly& p);

 private:
  void trim();
  std::vector<double> coeffs_;
};

/// Polynomial sum_i f_i P_i^{(n)}(t) for a fixed dimension n.
class GegenbauerSeries {
 public:
  GegenbauerSeries(int n, std::vector<double> coeffs);

  int dimension() const { return n_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const { return coeffs_; }
  /// Coefficient f_i, zero beyond the stored degree.
  double operator[](int i) const { return i <= degree() ? coeffs_[static_cast<std::size_t>(i)] : 0.0; }

  double operator()(double t) const;
  /// f(1), which is the plain coefficient sum.
  double at_one() const;

 private:
  int n_;
  std::vector<double> coeffs_;
};

/// P_k^{(a + (n-3)/2, b + (n-3)/2)} normalized to 1 at t = 1.
struct JacobiSpec {
  double a = 0.0;
  double b = 0.0;
  int n = 3;
  int k = 0;

  double alpha() const { return a + 0.5 * (n - 3); }
  double beta() const { return b + 0.5 * (n - 3); }
};

double gegenbauer_eval(int n, int i, double t);
/// P_0(t), ..., P_max_degree(t) in one recurrence pass.
std::vector<double> gegenbauer_values(int n, int max_degree, double t);

double jacobi_eval(const JacobiSpec& spec, double t);
/// Largest zero t_k^{a,b}; the convention t_0^{1,1} = -1 covers k = 0.
double jacobi_largest_zero(const JacobiSpec& spec);

/// Integral of t^j against mu_n.
double measure_moment(int n, int j);
/// Zeroth Gegenbauer coefficient of p, i.e. its mu_n-mean.
double mean_value(const MonomialPoly& p, int n);

GegenbauerSeries to_gegenbauer(const MonomialPoly& p, int n);
MonomialPoly from_gegenbauer(const GegenbauerSeries& g);
/// Power-basis coefficients of P_i^{(n)}.
MonomialPoly gegenbauer_monomial(int n, int i);

}  // namespace spherelp
