#include "spherelp/codes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "spherelp/errors.hpp"
#include "spherelp/orthopoly.hpp"

namespace spherelp {

namespace {

double neumaier_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
  double sum = 0.0;
  double comp = 0.0;
  for (double x : terms) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

double clamped_dot(const Eigen::MatrixXd& p, int i, int j) {
  return std::clamp(p.row(i).dot(p.row(j)), -1.0, 1.0);
}

Eigen::VectorXd random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd x(n);
  do {
    for (int i = 0; i < n; ++i) x(i) = g(rng);
  } while (x.norm() < 1e-6);
  return x.normalized();
}

double double_factorial_odd(int k) {
  // (k-1)!! for even k >= 0
  double r = 1.0;
  for (int j = k - 1; j > 1; j -= 2) r *= j;
  return r;
}

int parse_int(std::string_view s, std::string_view what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(std::string(s), &used);
    if (used != s.size()) throw DomainError("");
    return v;
  } catch (const std::exception&) {
    throw DomainError("invalid " + std::string(what) + ": '" + std::string(s) + "'");
  }
}

Eigen::MatrixXd stack(const std::vector<Eigen::VectorXd>& rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].normalized().transpose();
  return m;
}

std::vector<Eigen::VectorXd> cyclic_signed(double a, double b) {
  std::vector<Eigen::VectorXd> out;
  for (double sa : {1.0, -1.0})
    for (double sb : {1.0, -1.0}) {
      const double u = sa * a;
      const double v = sb * b;
      out.push_back(Eigen::Vector3d(0.0, u, v));
      out.push_back(Eigen::Vector3d(u, v, 0.0));
      out.push_back(Eigen::Vector3d(v, 0.0, u));
    }
  return out;
}

std::vector<Eigen::VectorXd> icosahedron_points() {
  return cyclic_signed(1.0, std::numbers::phi);
}

std::vector<Eigen::VectorXd> dodecahedron_points() {
  std::vector<Eigen::VectorXd> out;
  for (double x : {1.0, -1.0})
    for (double y : {1.0, -1.0})
      for (double z : {1.0, -1.0}) out.push_back(Eigen::Vector3d(x, y, z));
  for (auto& v : cyclic_signed(std::numbers::phi, 1.0 / std::numbers::phi)) out.push_back(v);
  return out;
}

std::vector<Eigen::VectorXd> cross_points(int n) {
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i < n; ++i)
    for (double sgn : {1.0, -1.0}) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
      v(i) = sgn;
      out.push_back(v);
    }
  return out;
}

std::vector<Eigen::VectorXd> cube_points(int n) {
  if (n > 20) throw DomainError("cube dimension too large");
  std::vector<Eigen::VectorXd> out;
  for (long mask = 0; mask < (1L << n); ++mask) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = (mask >> i) & 1 ? -1.0 : 1.0;
    out.push_back(v);
  }
  return out;
}

std::pair<std::string_view, std::string_view> split_name(std::string_view name) {
  const auto colon = name.find(':');
  if (colon == std::string_view::npos) return {name, {}};
  return {name.substr(0, colon), name.substr(colon + 1)};
}

int cube_cross_dimension(std::string_view arg) {
  if (arg.empty()) throw DomainError("cube-cross needs a dimension, e.g. cube-cross:3");
  const int n = parse_int(arg, "dimension");
  if (n < 2 || n > 16) throw DomainError("cube-cross dimension must lie in [2, 16]");
  return n;
}

}  // namespace

WeightedCode::WeightedCode(Eigen::MatrixXd points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {}

WeightedCode WeightedCode::create(Eigen::MatrixXd points, std::vector<double> weights) {
  const auto N = points.rows();
  if (N < 1) throw DomainError("a code needs at least one point");
  if (points.cols() < 2) throw DomainError("dimension must be at least 2");
  if (static_cast<Eigen::Index>(weights.size()) != N) throw DomainError("number of weights differs from number of points");
  for (Eigen::Index i = 0; i < N; ++i) {
    if (std::abs(points.row(i).norm() - 1.0) > 1e-12)
      throw DomainError("point " + std::to_string(i) + " is not a unit vector");
  }
  double sum = 0.0;
  double sq = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw DomainError("weights must be positive");
    sum += w;
    sq += w * w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw DomainError("weights must sum to 1");
  double s = -1.0;
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = i + 1; j < N; ++j) {
      if ((points.row(i) - points.row(j)).norm() <= 1e-9) throw DomainError("points must be distinct");
      s = std::max(s, points.row(i).dot(points.row(j)));
    }
  WeightedCode c(std::move(points), std::move(weights));
  c.sw_ = sq;
  c.s_ = std::min(s, 1.0);
  return c;
}

WeightedCode WeightedCode::equal_weights(Eigen::MatrixXd points) {
  const auto N = static_cast<std::size_t>(points.rows());
  return create(std::move(points), std::vector<double>(N, 1.0 / static_cast<double>(N)));
}

double WeightedCode::variance() const {
  const double N = size();
  return sw_ / N - 1.0 / (N * N);
}

double energy(const WeightedCode& code, const Potential& h) {
  std::vector<double> terms;
  const int N = code.size();
  terms.reserve(static_cast<std::size_t>(N) * static_cast<std::size_t>(N - 1) / 2);
  const auto& w = code.weights();
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      terms.push_back(2.0 * w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)] *
                      h.value(clamped_dot(code.points(), i, j)));
  return neumaier_sum(std::move(terms));
}

namespace {

std::vector<double> moments_upto(const WeightedCode& code, int tau_max) {
  const int N = code.size();
  const auto& w = code.weights();
  std::vector<std::vector<double>> terms(static_cast<std::size_t>(tau_max));
  for (int i = 0; i < N; ++i) {
    const double wi = w[static_cast<std::size_t>(i)];
    for (int l = 1; l <= tau_max; ++l) terms[static_cast<std::size_t>(l - 1)].push_back(wi * wi);
    for (int j = i + 1; j < N; ++j) {
      const auto p = gegenbauer_values(code.dimension(), tau_max, clamped_dot(code.points(), i, j));
      const double ww = 2.0 * wi * w[static_cast<std::size_t>(j)];
      for (int l = 1; l <= tau_max; ++l) terms[static_cast<std::size_t>(l - 1)].push_back(ww * p[static_cast<std::size_t>(l)]);
    }
  }
  std::vector<double> out;
  for (auto& t : terms) out.push_back(neumaier_sum(std::move(t)));
  return out;
}

}  // namespace

double weighted_moment(const WeightedCode& code, int ell) {
  if (ell < 1) throw DomainError("moment order must be at least 1");
  return moments_upto(code, ell).back();
}

DesignCheckReport design_strength(const WeightedCode& code, int tau_max, double tol) {
  if (tau_max < 1) throw DomainError("tau_max must be at least 1");
  DesignCheckReport r;
  r.tol = tol;
  r.moments = moments_upto(code, tau_max);
  while (r.strength < tau_max && std::abs(r.moments[static_cast<std::size_t>(r.strength)]) <= tol) ++r.strength;
  return r;
}

double design_point_identity_check(const WeightedCode& code, int tau, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = code.dimension();
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> c(static_cast<std::size_t>(tau + 1));
    for (auto& x : c) x = u(rng);
    const MonomialPoly f(c);
    const Eigen::VectorXd x = random_unit(n, rng);
    std::vector<double> terms;
    for (int j = 0; j < code.size(); ++j) {
      const double dot = std::clamp(x.dot(code.point(j)), -1.0, 1.0);
      terms.push_back(code.weights()[static_cast<std::size_t>(j)] * f(dot));
    }
    worst = std::max(worst, std::abs(neumaier_sum(std::move(terms)) - mean_value(f, n)));
  }
  return worst;
}

double sphere_monomial_moment(const std::vector<int>& exponents) {
  const int n = static_cast<int>(exponents.size());
  int total = 0;
  double num = 1.0;
  for (int a : exponents) {
    if (a < 0) throw DomainError("negative exponent");
    if (a % 2 != 0) return 0.0;
    num *= double_factorial_odd(a);
    total += a;
  }
  double den = 1.0;
  for (int j = 0; j < total; j += 2) den *= n + j;
  return num / den;
}

double monomial_residual(const WeightedCode& code, const std::vector<int>& exponents) {
  if (static_cast<int>(exponents.size()) != code.dimension()) throw DomainError("exponent count differs from dimension");
  std::vector<double> terms;
  for (int i = 0; i < code.size(); ++i) {
    double v = code.weights()[static_cast<std::size_t>(i)];
    for (int d = 0; d < code.dimension(); ++d) v *= std::pow(code.points()(i, d), exponents[static_cast<std::size_t>(d)]);
    terms.push_back(v);
  }
  return std::abs(neumaier_sum(std::move(terms)) - sphere_monomial_moment(exponents));
}

double sphere_quadrature_check(const WeightedCode& code, int tau, int trials, std::uint64_t seed) {
  if (tau < 1) throw DomainError("tau must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(0, tau);
  std::uniform_int_distribution<int> var(0, code.dimension() - 1);
  constexpr int kTerms = 12;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    double signed_residual = 0.0;
    for (int term = 0; term < kTerms; ++term) {
      std::vector<int> e(static_cast<std::size_t>(code.dimension()), 0);
      const int d = deg(rng);
      for (int k = 0; k < d; ++k) ++e[static_cast<std::size_t>(var(rng))];
      const double c = u(rng);
      std::vector<double> terms;
      for (int i = 0; i < code.size(); ++i) {
        double v = code.weights()[static_cast<std::size_t>(i)];
        for (int dd = 0; dd < code.dimension(); ++dd) v *= std::pow(code.points()(i, dd), e[static_cast<std::size_t>(dd)]);
        terms.push_back(v);
      }
      signed_residual += c * (neumaier_sum(std::move(terms)) - sphere_monomial_moment(e));
    }
    worst = std::max(worst, std::abs(signed_residual));
  }
  return worst;
}

WeightedCode build_config(std::string_view name) {
  const auto [base, arg] = split_name(name);
  auto no_arg = [&] {
    if (!arg.empty()) throw DomainError("configuration '" + std::string(base) + "' takes no parameter");
  };
  if (base == "pentakis" || base == "pentakis-dodecahedron") {
    no_arg();
    auto pts = icosahedron_points();
    for (auto& v : dodecahedron_points()) pts.push_back(v);
    std::vector<double> w(12, 5.0 / 168.0);
    w.insert(w.end(), 20, 9.0 / 280.0);
    return WeightedCode::create(stack(pts), std::move(w));
  }
  if (base == "icosahedron") {
    no_arg();
    return WeightedCode::equal_weights(stack(icosahedron_points()));
  }
  if (base == "dodecahedron") {
    no_arg();
    return WeightedCode::equal_weights(stack(dodecahedron_points()));
  }
  if (base == "cube-cross") {
    const int n = cube_cross_dimension(arg);
    auto pts = cross_points(n);
    const auto cube = cube_points(n);
    pts.insert(pts.end(), cube.begin(), cube.end());
    const double wp = 1.0 / (2.0 * n + n * n);
    const double wc = n * n / (std::ldexp(1.0, n) * (2.0 * n + n * n));
    std::vector<double> w(static_cast<std::size_t>(2 * n), wp);
    w.insert(w.end(), cube.size(), wc);
    return WeightedCode::create(stack(pts), std::move(w));
  }
  if (base == "cube" || base == "cross") {
    if (arg.empty()) throw DomainError(std::string(base) + " needs a dimension, e.g. " + std::string(base) + ":3");
    const int n = parse_int(arg, "dimension");
    if (n < 2 || n > 16) throw DomainError("dimension must lie in [2, 16]");
    return WeightedCode::equal_weights(stack(base == "cube" ? cube_points(n) : cross_points(n)));
  }
  if (base == "ngon") {
    if (arg.empty()) throw DomainError("ngon needs a point count, e.g. ngon:8");
    const int N = parse_int(arg, "point count");
    if (N < 2) throw DomainError("ngon needs at least 2 points");
    std::vector<Eigen::VectorXd> pts;
    for (int k = 0; k < N; ++k) {
      const double a = 2.0 * std::numbers::pi * k / N;
      pts.push_back(Eigen::Vector2d(std::cos(a), std::sin(a)));
    }
    return WeightedCode::equal_weights(stack(pts));
  }
  if (base == "24-cell") {
    no_arg();
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        for (double si : {1.0, -1.0})
          for (double sj : {1.0, -1.0}) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(4);
            v(i) = si;
            v(j) = sj;
            pts.push_back(v);
          }
    return WeightedCode::equal_weights(stack(pts));
  }
  throw DomainError("unknown configuration '" + std::string(name) + "'");
}

double closed_form_energy(std::string_view name, const Potential& h) {
  const auto [base, arg] = split_name(name);
  if (base == "pentakis" || base == "pentakis-dodecahedron") {
    const double wi = 5.0 / 168.0;
    const double wd = 9.0 / 280.0;
    const double r5 = std::sqrt(5.0);
    const double a = std::sqrt(1.0 - 2.0 / r5) / std::sqrt(3.0);
    const double b = std::sqrt(1.0 + 2.0 / r5) / std::sqrt(3.0);
    return 12.0 * wi * wi * (h(-1.0) + 5.0 * h(-1.0 / r5) + 5.0 * h(1.0 / r5)) +
           120.0 * wi * wd * (h(a) + h(-a) + h(b) + h(-b)) +
           20.0 * wd * wd *
               (h(-1.0) + 6.0 * h(-1.0 / 3.0) + 6.0 * h(1.0 / 3.0) + 3.0 * h(-r5 / 3.0) + 3.0 * h(r5 / 3.0));
  }
  if (base == "cube-cross") {
    const int n = cube_cross_dimension(arg);
    const double wp = 1.0 / (2.0 * n + n * n);
    const double wc = n * n / (std::ldexp(1.0, n) * (2.0 * n + n * n));
    const double rn = 1.0 / std::sqrt(static_cast<double>(n));
    double cube = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= n - 1; ++k) {
      cube += binom * h(-1.0 + 2.0 * k / n);
      binom = binom * (n - k) / (k + 1);
    }
    return 2.0 * n * wp * wp * (h(-1.0) + (2.0 * n - 2.0) * h(0.0)) +
           std::ldexp(1.0, n + 1) * n * wp * wc * (h(rn) + h(-rn)) + std::ldexp(1.0, n) * wc * wc * cube;
  }
  throw DomainError("no closed-form energy for '" + std::string(name) + "'");
}

}  // namespace spherelp
