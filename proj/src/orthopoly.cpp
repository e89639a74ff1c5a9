#include "spherelp/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/toms748_solve.hpp>

#include "spherelp/errors.hpp"

namespace spherelp {

namespace {

void require_dimension(int n) {
  if (n < 2) throw DomainError("dimension must be at least 2, got " + std::to_string(n));
}

}  // namespace

// ---------------------------------------------------------------------------
// MonomialPoly

MonomialPoly::MonomialPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  trim();
  if (degree() > kMaxPolyDegree) {
    throw DomainError("polynomial degree " + std::to_string(degree()) + " exceeds the cap of " +
                      std::to_string(kMaxPolyDegree));
  }
}

void MonomialPoly::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

MonomialPoly MonomialPoly::from_roots(std::span<const double> roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return MonomialPoly(std::move(c));
}

double MonomialPoly::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

MonomialPoly MonomialPoly::derivative() const {
  if (degree() == 0) return MonomialPoly();
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return MonomialPoly(std::move(d));
}

MonomialPoly operator+(const MonomialPoly& a, const MonomialPoly& b) {
  std::vector<double> c(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1), 0.0);
  for (int i = 0; i <= a.degree(); ++i) c[static_cast<std::size_t>(i)] += a[i];
  for (int i = 0; i <= b.degree(); ++i) c[static_cast<std::size_t>(i)] += b[i];
  return MonomialPoly(std::move(c));
}

MonomialPoly operator-(const MonomialPoly& a, const MonomialPoly& b) { return a + (-1.0) * b; }

MonomialPoly operator*(const MonomialPoly& a, const MonomialPoly& b) {
  std::vector<double> c(static_cast<std::size_t>(a.degree() + b.degree() + 1), 0.0);
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j) c[static_cast<std::size_t>(i + j)] += a[i] * b[j];
  return MonomialPoly(std::move(c));
}

MonomialPoly operator*(double s, const MonomialPoly& p) {
  std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  for (double& x : c) x *= s;
  return MonomialPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// GegenbauerSeries

GegenbauerSeries::GegenbauerSeries(int n, std::vector<double> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  require_dimension(n);
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double GegenbauerSeries::operator()(double t) const {
  const auto p = gegenbauer_values(n_, degree(), t);
  double acc = 0.0;
  for (int i = degree(); i >= 0; --i) acc += coeffs_[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(i)];
  return acc;
}

double GegenbauerSeries::at_one() const {
  double acc = 0.0;
  for (double c : coeffs_) acc += c;
  return acc;
}

// ---------------------------------------------------------------------------
// Evaluation

std::vector<double> gegenbauer_values(int n, int max_degree, double t) {
  require_dimension(n);
  if (max_degree < 0) throw DomainError("Gegenbauer degree must be non-negative");
  std::vector<double> p(static_cast<std::size_t>(max_degree) + 1);
  p[0] = 1.0;
  if (max_degree >= 1) p[1] = t;
  // (i + n - 2) P_{i+1} = (2i + n - 2) t P_i - i P_{i-1}
  for (int i = 1; i < max_degree; ++i) {
    const auto u = static_cast<std::size_t>(i);
    p[u + 1] = ((2.0 * i + n - 2) * t * p[u] - i * p[u - 1]) / (i + n - 2.0);
  }
  return p;
}

double gegenbauer_eval(int n, int i, double t) {
  if (i < 0) throw DomainError("Gegenbauer degree must be non-negative");
  return gegenbauer_values(n, i, t).back();
}

namespace {

void require_jacobi(const JacobiSpec& spec) {
  require_dimension(spec.n);
  if (spec.k < 0) throw DomainError("Jacobi degree must be non-negative");
  if (!(spec.alpha() > -1.0) || !(spec.beta() > -1.0))
    throw DomainError("Jacobi exponents must exceed -1");
}

// Standard (unnormalized) Jacobi recurrence.
double jacobi_standard(int k, double al, double be, double x) {
  if (k == 0) return 1.0;
  double p0 = 1.0;
  double p1 = (al + 1.0) + 0.5 * (al + be + 2.0) * (x - 1.0);
  for (int j = 2; j <= k; ++j) {
    const double s = 2.0 * j + al + be;
    const double a1 = 2.0 * j * (j + al + be) * (s - 2.0);
    const double a2 = (s - 1.0) * (al * al - be * be);
    const double a3 = (s - 2.0) * (s - 1.0) * s;
    const double a4 = 2.0 * (j + al - 1.0) * (j + be - 1.0) * s;
    const double p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

double jacobi_eval(const JacobiSpec& spec, double t) {
  require_jacobi(spec);
  // P_k^{(al,be)}(1) = binom(k + al, k)
  double at_one = 1.0;
  for (int j = 1; j <= spec.k; ++j) at_one *= (spec.alpha() + j) / j;
  return jacobi_standard(spec.k, spec.alpha(), spec.beta(), t) / at_one;
}

double jacobi_largest_zero(const JacobiSpec& spec) {
  if (spec.k == 0) {
    if (spec.a == 1.0 && spec.b == 1.0) return -1.0;
    throw DomainError("largest zero of a degree-0 Jacobi polynomial is only defined for a = b = 1");
  }
  require_jacobi(spec);
  const double al = spec.alpha();
  const double be = spec.beta();
  const int k = spec.k;

  // Golub-Welsch: eigenvalues of the symmetric tridiagonal Jacobi matrix.
  Eigen::VectorXd diag(k);
  Eigen::VectorXd sub(std::max(k - 1, 1));
  for (int j = 0; j < k; ++j) {
    const double s = 2.0 * j + al + be;
    diag(j) = (j == 0) ? (be - al) / (al + be + 2.0) : (be * be - al * al) / (s * (s + 2.0));
  }
  for (int j = 1; j < k; ++j) {
    const double s = 2.0 * j + al + be;
    double b2;
    if (j == 1) {
      b2 = 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + al + be) * (2.0 + al + be) * (3.0 + al + be));
    } else {
      b2 = 4.0 * j * (j + al) * (j + be) * (j + al + be) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(j - 1) = std::sqrt(b2);
  }
  double guess;
  double gap = 1.0;
  if (k == 1) {
    guess = diag(0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(k - 1), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    guess = ev(k - 1);
    gap = ev(k - 1) - ev(k - 2);
  }

  auto f = [&](double x) { return jacobi_eval(spec, x); };
  double delta = 1e-10;
  double lo = guess - delta;
  double hi = std::min(guess + delta, 1.0);
  while (!(f(lo) <= 0.0 && f(hi) >= 0.0)) {
    delta *= 4.0;
    if (delta > 0.5 * gap) throw NumericalError("failed to bracket the largest Jacobi zero");
    lo = guess - delta;
    hi = std::min(guess + delta, 1.0);
  }
  if (f(lo) == 0.0) return lo;
  if (f(hi) == 0.0) return hi;
  std::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-15; };
  const auto [r0, r1] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  return 0.5 * (r0 + r1);
}

// ---------------------------------------------------------------------------
// Moments and basis conversion

double measure_moment(int n, int j) {
  require_dimension(n);
  if (j < 0) throw DomainError("moment exponent must be non-negative");
  if (j % 2 == 1) return 0.0;
  // (2p-1)!! / (n (n+2) ... (n+2p-2))
  double m = 1.0;
  for (int q = 0; q < j / 2; ++q) m *= (2.0 * q + 1.0) / (n + 2.0 * q);
  return m;
}

double mean_value(const MonomialPoly& p, int n) {
  double acc = 0.0;
  for (int j = p.degree(); j >= 0; --j) acc += p[j] * measure_moment(n, j);
  return acc;
}

namespace {

// t * sum g_i P_i expressed again in the P_i basis.
std::vector<double> multiply_by_t(int n, const std::vector<double>& g) {
  std::vector<double> r(g.size() + 1, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i == 0) {
      r[1] += g[0];
      continue;
    }
    const double d = 2.0 * static_cast<double>(i) + n - 2;
    r[i + 1] += g[i] * (static_cast<double>(i) + n - 2) / d;
    r[i - 1] += g[i] * static_cast<double>(i) / d;
  }
  return r;
}

}  // namespace

GegenbauerSeries to_gegenbauer(const MonomialPoly& p, int n) {
  require_dimension(n);
  std::vector<double> g{p[p.degree()]};
  for (int j = p.degree() - 1; j >= 0; --j) {
    g = multiply_by_t(n, g);
    g[0] += p[j];
  }
  return GegenbauerSeries(n, std::move(g));
}

MonomialPoly gegenbauer_monomial(int n, int i) {
  require_dimension(n);
  if (i < 0) throw DomainError("Gegenbauer degree must be non-negative");
  MonomialPoly prev = MonomialPoly::constant(1.0);
  if (i == 0) return prev;
  MonomialPoly cur({0.0, 1.0});
  const MonomialPoly t({0.0, 1.0});
  for (int j = 1; j < i; ++j) {
    MonomialPoly next = (1.0 / (j + n - 2.0)) * (((2.0 * j + n - 2) * t) * cur - static_cast<double>(j) * prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

MonomialPoly from_gegenbauer(const GegenbauerSeries& g) {
  const int n = g.dimension();
  MonomialPoly acc = MonomialPoly::constant(g[0]);
  if (g.degree() == 0) return acc;
  MonomialPoly prev = MonomialPoly::constant(1.0);
  MonomialPoly cur({0.0, 1.0});
  const MonomialPoly t({0.0, 1.0});
  acc = acc + g[1] * cur;
  for (int j = 1; j < g.degree(); ++j) {
    MonomialPoly next = (1.0 / (j + n - 2.0)) * (((2.0 * j + n - 2) * t) * cur - static_cast<double>(j) * prev);
    prev = std::move(cur);
    cur = std::move(next);
    acc = acc + g[j + 1] * cur;
  }
  return acc;
}

}  // namespace spherelp
