#include "spherelp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/toms748_solve.hpp>

#include "spherelp/errors.hpp"

namespace spherelp {

namespace {

std::int64_t binomial(int a, int b) {
  if (b < 0 || a < b) return 0;
  b = std::min(b, a - b);
  std::int64_t r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

void require_degree(int m) {
  if (m < 1) throw DomainError("degree m must be at least 1");
  if (m > kMaxRuleDegree)
    throw DomainError("degree m = " + std::to_string(m) + " exceeds the supported cap of " +
                      std::to_string(kMaxRuleDegree));
}

constexpr double kIntervalSlack = 1e-12;

}  // namespace

DegreeSplit DegreeSplit::from_degree(int m) {
  if (m < 1) throw DomainError("degree m must be at least 1");
  DegreeSplit d;
  d.m = m;
  d.k = (m + 1) / 2;
  d.eps = m - (2 * d.k - 1);
  return d;
}

double QuadratureRule::apply(const GegenbauerSeries& f) const {
  double acc = f.at_one() / capacity;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
  return acc;
}

std::int64_t dgs_bound(int n, int m) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  const auto d = DegreeSplit::from_degree(m);
  return binomial(n + d.k - 2 + d.eps, n - 1) + binomial(n + d.k - 2, n - 1);
}

DegreeSplit select_degree_from_capacity(int n, double capacity) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  if (!(capacity > 1.0)) throw DomainError("capacity must exceed 1");
  int m = 1;
  while (!(capacity <= static_cast<double>(dgs_bound(n, m + 1)))) {
    ++m;
    if (m > 10 * kMaxRuleDegree) throw DomainError("capacity too large");
  }
  return DegreeSplit::from_degree(m);
}

std::pair<double, double> validity_interval(int n, int m) {
  const auto d = DegreeSplit::from_degree(m);
  const double lo = jacobi_largest_zero({1.0, 1.0 - d.eps, n, d.k - 1 + d.eps});
  const double hi = jacobi_largest_zero({1.0, static_cast<double>(d.eps), n, d.k});
  return {lo, hi};
}

DegreeSplit select_degree_from_s(int n, double s) {
  if (!(s >= -1.0 && s < 1.0)) throw DomainError("s must lie in [-1, 1)");
  for (int m = 1; m <= kMaxRuleDegree; ++m) {
    const auto [lo, hi] = validity_interval(n, m);
    if (s >= lo - kIntervalSlack && s <= hi + kIntervalSlack) return DegreeSplit::from_degree(m);
  }
  throw DomainError("s = " + std::to_string(s) + " needs a degree above the supported cap");
}

double levenshtein_function(int n, int m, double s, bool allow_outside) {
  require_degree(m);
  if (!(s >= -1.0 && s < 1.0)) throw DomainError("s must lie in [-1, 1)");
  if (!allow_outside) {
    const auto [lo, hi] = validity_interval(n, m);
    if (s < lo - kIntervalSlack || s > hi + kIntervalSlack)
      throw ValidityError("s = " + std::to_string(s) + " outside the validity interval [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "] of L_" + std::to_string(m));
  }
  const auto d = DegreeSplit::from_degree(m);
  const auto p = gegenbauer_values(n, d.k + d.eps, s);
  const auto k = static_cast<std::size_t>(d.k);
  const auto e = static_cast<std::size_t>(d.eps);
  const double c = static_cast<double>(binomial(d.k + n - 3 + d.eps, n - 2));
  const double a = (2.0 * d.k + n - 3 + 2.0 * d.eps) / (n - 1.0);
  const double num = std::pow(1.0 + s, d.eps) * (p[k - 1 + e] - p[k + e]);
  const double den = (1.0 - s) * (d.eps * p[k] + p[k + e]);
  return c * (a - num / den);
}

namespace {

// C [A (1-t) Dn(t) - (1+t)^eps Nm(t)] - N (1-t) Dn(t) with
// Dn = eps P_k + P_{k+eps} and Nm = P_{k-1+eps} - P_{k+eps}.
MonomialPoly cleared_levenshtein(int n, const DegreeSplit& d, double capacity) {
  const double c = static_cast<double>(binomial(d.k + n - 3 + d.eps, n - 2));
  const double a = (2.0 * d.k + n - 3 + 2.0 * d.eps) / (n - 1.0);
  const MonomialPoly pk = gegenbauer_monomial(n, d.k);
  const MonomialPoly pke = gegenbauer_monomial(n, d.k + d.eps);
  const MonomialPoly pkm = gegenbauer_monomial(n, d.k - 1 + d.eps);
  const MonomialPoly dn = static_cast<double>(d.eps) * pk + pke;
  const MonomialPoly nm = pkm - pke;
  const MonomialPoly one_minus_t({1.0, -1.0});
  const MonomialPoly lift = d.eps == 1 ? MonomialPoly({1.0, 1.0}) : MonomialPoly::constant(1.0);
  return c * (a * (one_minus_t * dn) - lift * nm) - capacity * (one_minus_t * dn);
}

// Divide by (t - 1); the remainder vanishes because every P_j(1) = 1.
MonomialPoly deflate_at_one(const MonomialPoly& p) {
  const int d = p.degree();
  std::vector<double> q(static_cast<std::size_t>(d), 0.0);
  double carry = 0.0;
  for (int i = d; i >= 1; --i) {
    carry = p[i] + carry;
    q[static_cast<std::size_t>(i - 1)] = carry;
  }
  double scale = 0.0;
  for (double c : p.coeffs()) scale = std::max(scale, std::abs(c));
  const double remainder = p[0] + carry;
  if (std::abs(remainder) > 1e-9 * std::max(scale, 1.0))
    throw NumericalError("cleared Levenshtein polynomial does not vanish at t = 1");
  return MonomialPoly(std::move(q));
}

std::vector<std::complex<double>> polynomial_roots(const MonomialPoly& p) {
  const int d = p.degree();
  if (d < 1) return {};
  const double lead = p[d];
  if (d == 1) return {std::complex<double>(-p[0] / lead, 0.0)};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -p[i] / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

double newton_polish(const MonomialPoly& p, double x) {
  const MonomialPoly dp = p.derivative();
  for (int it = 0; it < 8; ++it) {
    const double fx = p(x);
    const double dfx = dp(x);
    if (dfx == 0.0) break;
    const double step = fx / dfx;
    x -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace

std::vector<double> levenshtein_nodes(int n, int m, double s, double capacity) {
  require_degree(m);
  const auto d = DegreeSplit::from_degree(m);
  const std::size_t expected = static_cast<std::size_t>(d.k + d.eps);
  const MonomialPoly reduced = deflate_at_one(cleared_levenshtein(n, d, capacity));

  std::vector<double> nodes;
  for (const auto& z : polynomial_roots(reduced)) {
    if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z.real())))
      throw NumericalError("Levenshtein node equation has a complex root");
    nodes.push_back(newton_polish(reduced, z.real()));
  }
  if (nodes.size() != expected)
    throw NumericalError("expected " + std::to_string(expected) + " Levenshtein nodes, found " +
                         std::to_string(nodes.size()));
  std::sort(nodes.begin(), nodes.end());

  if (std::abs(nodes.back() - s) > 1e-8)
    throw NumericalError("largest Levenshtein node " + std::to_string(nodes.back()) + " does not match s = " +
                         std::to_string(s));
  nodes.back() = s;
  if (d.eps == 1) {
    if (std::abs(nodes.front() + 1.0) > 1e-8) throw NumericalError("-1 is not a node of an even-degree rule");
    nodes.front() = -1.0;
  }
  if (std::abs(nodes.front() + 1.0) <= 1e-9) nodes.front() = -1.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] < -1.0 - 1e-9) throw NumericalError("Levenshtein node below -1");
    if (i > 0 && !(nodes[i] - nodes[i - 1] > 1e-9)) throw NumericalError("repeated Levenshtein node");
  }
  return nodes;
}

std::vector<double> lagrange_weights(int n, std::span<const double> nodes, double capacity) {
  std::vector<double> w;
  w.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::vector<double> others;
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (j != i) others.push_back(nodes[j]);
    const MonomialPoly li = MonomialPoly::from_roots(others);
    w.push_back((mean_value(li, n) - li(1.0) / capacity) / li(nodes[i]));
  }
  return w;
}

double exactness_defect(const QuadratureRule& rule, int max_degree) {
  double worst = 0.0;
  std::vector<std::vector<double>> values;
  values.reserve(rule.nodes.size());
  for (double a : rule.nodes) values.push_back(gegenbauer_values(rule.n, max_degree, a));
  for (int j = 0; j <= max_degree; ++j) {
    double acc = 1.0 / rule.capacity;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * values[i][static_cast<std::size_t>(j)];
    worst = std::max(worst, std::abs(acc - (j == 0 ? 1.0 : 0.0)));
  }
  return worst;
}

namespace {

QuadratureRule assemble(int n, int m, std::vector<double> nodes, std::vector<double> weights, double capacity) {
  const auto d = DegreeSplit::from_degree(m);
  QuadratureRule r;
  r.n = n;
  r.m = m;
  r.k = d.k;
  r.eps = d.eps;
  r.s = nodes.back();
  r.nodes = std::move(nodes);
  r.weights = std::move(weights);
  r.capacity = capacity;
  return r;
}

void verify_rule(const QuadratureRule& r, bool require_positive) {
  if (require_positive) {
    for (double w : r.weights)
      if (!(w > 0.0)) throw NumericalError("quadrature weight is not positive");
  }
  const double defect = exactness_defect(r, r.m);
  if (defect > 1e-9)
    throw NumericalError("quadrature rule lost exactness up to degree " + std::to_string(r.m) +
                         " (defect " + std::to_string(defect) + ")");
}

}  // namespace

std::vector<double> compute_weights(int n, std::span<const double> nodes, double capacity) {
  if (nodes.empty()) throw DomainError("no quadrature nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i] >= -1.0 && nodes[i] < 1.0)) throw DomainError("quadrature nodes must lie in [-1, 1)");
    if (i > 0 && !(nodes[i] > nodes[i - 1])) throw DomainError("quadrature nodes must be distinct and ascending");
  }
  auto w = lagrange_weights(n, nodes, capacity);
  const int eps = nodes.front() == -1.0 ? 1 : 0;
  const int m = 2 * static_cast<int>(nodes.size()) - 1 - eps;
  verify_rule(assemble(n, m, std::vector<double>(nodes.begin(), nodes.end()), w, capacity), true);
  return w;
}

QuadratureRule solve_ulb_rule(int n, double capacity) {
  if (!(capacity > 2.0)) throw DomainError("capacity must exceed 2");
  const auto d = select_degree_from_capacity(n, capacity);
  require_degree(d.m);
  const auto [lo, hi] = validity_interval(n, d.m);

  double s;
  if (capacity == static_cast<double>(dgs_bound(n, d.m + 1))) {
    s = hi;
  } else {
    auto f = [&](double x) { return levenshtein_function(n, d.m, x, true) - capacity; };
    std::uintmax_t iters = 200;
    auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-14; };
    const double flo = f(lo);
    const double fhi = f(hi);
    if (!(flo < 0.0 && fhi >= 0.0)) throw NumericalError("L_m(n, s) - N_W does not change sign on the validity interval");
    const auto [r0, r1] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    s = 0.5 * (r0 + r1);
  }
  auto nodes = levenshtein_nodes(n, d.m, s, capacity);
  auto weights = lagrange_weights(n, nodes, capacity);
  QuadratureRule rule = assemble(n, d.m, std::move(nodes), std::move(weights), capacity);
  verify_rule(rule, true);
  return rule;
}

QuadratureRule levenshtein_rule(int n, int m, double s, bool allow_outside) {
  const double n1 = levenshtein_function(n, m, s, allow_outside);
  auto nodes = levenshtein_nodes(n, m, s, n1);
  auto weights = lagrange_weights(n, nodes, n1);
  QuadratureRule rule = assemble(n, m, std::move(nodes), std::move(weights), n1);
  verify_rule(rule, !allow_outside);
  return rule;
}

LevenshteinPolynomial levenshtein_polynomial(int n, int m, double s, bool allow_outside) {
  const auto d = DegreeSplit::from_degree(m);
  const double n1 = levenshtein_function(n, m, s, allow_outside);
  LevenshteinPolynomial f;
  f.n = n;
  f.m = m;
  f.s = s;
  f.roots = levenshtein_nodes(n, m, s, n1);
  const auto [lo, hi] = validity_interval(n, m);
  f.outside_validity = s < lo - kIntervalSlack || s > hi + kIntervalSlack;

  std::vector<double> factors;
  if (d.eps == 1) factors.push_back(-1.0);
  factors.push_back(s);
  for (std::size_t i = static_cast<std::size_t>(d.eps); i + 1 < f.roots.size(); ++i) {
    factors.push_back(f.roots[i]);
    factors.push_back(f.roots[i]);
  }
  f.monomial = MonomialPoly::from_roots(factors);
  f.gegenbauer = to_gegenbauer(f.monomial, n);
  return f;
}

}  // namespace spherelp
