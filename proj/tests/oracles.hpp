#pragma once

// Reference implementations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/gegenbauer.hpp>
#include <boost/math/special_functions/jacobi.hpp>
#include <boost/math/special_functions/legendre.hpp>

namespace oracle {

// Generalized binomial coefficient via the gamma function.
inline double gbinom(double a, double k) {
  return boost::math::tgamma(a + 1.0) / (boost::math::tgamma(k + 1.0) * boost::math::tgamma(a - k + 1.0));
}

/// Jacobi P_k^{(alpha,beta)}(x) from the explicit sum, scaled to 1 at x = 1.
inline double jacobi_series(int k, double alpha, double beta, double x) {
  double sum = 0.0;
  for (int s = 0; s <= k; ++s) {
    sum += gbinom(k + alpha, k - s) * gbinom(k + beta, s) * std::pow((x - 1.0) / 2.0, s) *
           std::pow((x + 1.0) / 2.0, k - s);
  }
  return sum / gbinom(k + alpha, k);
}

/// Normalized Gegenbauer P_i^{(n)}(t) through Boost.
inline double gegenbauer(int n, int i, double t) {
  if (n == 2) return std::cos(i * std::acos(std::clamp(t, -1.0, 1.0)));
  const double lambda = 0.5 * (n - 2);
  return boost::math::gegenbauer(static_cast<unsigned>(i), lambda, t) /
         boost::math::gegenbauer(static_cast<unsigned>(i), lambda, 1.0);
}

/// Standard Jacobi through Boost, scaled to 1 at x = 1.
inline double jacobi_boost(int k, double alpha, double beta, double x) {
  return boost::math::jacobi(static_cast<unsigned>(k), alpha, beta, x) /
         boost::math::jacobi(static_cast<unsigned>(k), alpha, beta, 1.0);
}

/// int f dmu_n with dmu_n proportional to (1 - t^2)^{(n-3)/2} dt, by tanh-sinh quadrature.
inline double mu_integral(int n, const std::function<double(double)>& f) {
  // t = cos(theta) turns the weight into sin^{n-2}, smooth on [0, pi]
  boost::math::quadrature::tanh_sinh<double> q;
  const double pi = boost::math::constants::pi<double>();
  auto w = [n](double th) { return std::pow(std::sin(th), n - 2); };
  const double z = q.integrate(w, 0.0, pi);
  return q.integrate([&](double th) { return f(std::cos(th)) * w(th); }, 0.0, pi) / z;
}

inline double legendre(int i, double t) { return boost::math::legendre_p(i, t); }

/// (2(1-t))^{-a/2}
inline double riesz(double a, double t) { return std::pow(2.0 * (1.0 - t), -a / 2.0); }

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t size, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(size);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace oracle
