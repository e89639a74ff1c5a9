#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "spherelp/errors.hpp"
#include "spherelp/hermite.hpp"
#include "spherelp/quadrature.hpp"

using namespace spherelp;

TEST_CASE("node multiset validation") {
  CHECK_NOTHROW(NodeMultiset({{-1.0, 1}, {0.2, 2}, {0.5, 1}}));
  CHECK_THROWS_AS(NodeMultiset({{0.2, 1}, {0.5, 2}}), DomainError);
  CHECK_THROWS_AS(NodeMultiset({{0.5, 2}, {0.2, 2}}), DomainError);
  CHECK_THROWS_AS(NodeMultiset({{0.5, 2}, {1.0, 1}}), DomainError);
  CHECK_THROWS_AS(NodeMultiset({{0.5, 3}}), DomainError);
  const NodeMultiset t({{-1.0, 1}, {0.0, 2}, {0.4, 1}});
  CHECK(t.size() == 4);
  CHECK(t.expanded() == std::vector<double>{-1.0, 0.0, 0.0, 0.4});
}

TEST_CASE("reproduces polynomials exactly") {
  // newton(2) is the constant 1
  const auto r = hermite_interpolant(Potential::newton(2), NodeMultiset({{-0.5, 2}, {0.3, 2}}), 2);
  CHECK(std::abs(r.poly[0] - 1.0) < 1e-10);
  for (int i = 1; i <= r.poly.degree(); ++i) CHECK(std::abs(r.poly[i]) < 1e-10);
}

TEST_CASE("two simple nodes give the secant line") {
  const Potential h = Potential::riesz(1.0);
  for (double s : {-0.3, 0.2, 0.7}) {
    const auto r = hermite_interpolant(h, NodeMultiset({{-1.0, 1}, {s, 1}}), 3);
    const double slope = (h(s) - h(-1.0)) / (1.0 + s);
    const double icpt = (h(s) + s * h(-1.0)) / (1.0 + s);
    CHECK(r.poly[1] == doctest::Approx(slope).epsilon(1e-12));
    CHECK(r.poly[0] == doctest::Approx(icpt).epsilon(1e-12));
  }
}

TEST_CASE("a double node gives the tangent line") {
  const Potential h = Potential::gaussian(1.3);
  const double a = -0.37;
  const auto r = hermite_interpolant(h, NodeMultiset({{a, 2}}), 4);
  CHECK(r.poly.degree() == 1);
  CHECK(r.poly[1] == doctest::Approx(h.derivative(a)).epsilon(1e-13));
  CHECK(r.poly(a) == doctest::Approx(h(a)).epsilon(1e-13));
}

TEST_CASE("matches a confluent Vandermonde solve") {
  const Potential h = Potential::riesz(1.0);
  const std::vector<double> doubled = {-0.9, -0.2, 0.4};
  const double last = 0.7;
  const auto r = hermite_interpolant(h, NodeMultiset({{-0.9, 2}, {-0.2, 2}, {0.4, 2}, {last, 1}}), 3);
  const int q = 7;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(q, q);
  Eigen::VectorXd rhs(q);
  int row = 0;
  for (double x : doubled) {
    for (int j = 0; j < q; ++j) a(row, j) = std::pow(x, j);
    rhs(row++) = h(x);
    for (int j = 1; j < q; ++j) a(row, j) = j * std::pow(x, j - 1);
    rhs(row++) = h.derivative(x);
  }
  for (int j = 0; j < q; ++j) a(row, j) = std::pow(last, j);
  rhs(row) = h(last);
  const Eigen::VectorXd c = a.fullPivLu().solve(rhs);
  for (int j = 0; j < q; ++j) CHECK(std::abs(r.poly[j] - c(j)) < 1e-9 * (1.0 + std::abs(c(j))));
  CHECK(r.residual < 1e-10);
}

TEST_CASE("dominance of the ULB interpolant") {
  const QuadratureRule rule = solve_ulb_rule(3, 735.0 / 23.0);
  std::vector<NodeEntry> e;
  for (double a : rule.nodes) e.push_back({a, 2});
  const Potential h = Potential::riesz(1.0);
  const auto r = hermite_interpolant(h, NodeMultiset(e), 3);
  const auto ok = verify_dominance(r.poly, h, -1.0, 0.999, Side::below, rule.nodes);
  CHECK(ok.ok);
  CHECK(ok.max_violation < 1e-9);

  std::vector<double> c(r.poly.coeffs().begin(), r.poly.coeffs().end());
  c.back() += 1e-3;
  const auto bad = verify_dominance(MonomialPoly(c), h, -1.0, 0.999, Side::below, rule.nodes);
  CHECK_FALSE(bad.ok);

  const MonomialPoly zero_gap = MonomialPoly::constant(1.0);
  CHECK(verify_dominance(zero_gap, Potential::newton(2), -1.0, 0.99, Side::below).max_violation == 0.0);
  CHECK(verify_dominance(zero_gap, Potential::newton(2), -1.0, 0.99, Side::above).ok);
}

TEST_CASE("ULB interpolants are positive definite for absolutely monotone potentials") {
  const std::vector<Potential> hs = {Potential::riesz(1.0), Potential::riesz(3.0), Potential::gaussian(2.0),
                                     Potential::logarithmic()};
  std::mt19937_64 rng(23);
  for (int n = 2; n <= 8; ++n) {
    for (int m = 1; m <= 9; ++m) {
      const double lo = static_cast<double>(dgs_bound(n, m));
      const double hi = static_cast<double>(dgs_bound(n, m + 1));
      std::uniform_real_distribution<double> u(std::max(lo, 2.0) + 1e-6, hi);
      const QuadratureRule rule = solve_ulb_rule(n, u(rng));
      std::vector<NodeEntry> e;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) e.push_back({rule.nodes[i], (i == 0 && rule.eps == 1) ? 1 : 2});
      for (const auto& h : hs) {
        const auto r = hermite_interpolant(h, NodeMultiset(e), n);
        for (int i = 1; i <= r.gegenbauer.degree(); ++i) CHECK(r.gegenbauer[i] >= -1e-9);
      }
    }
  }
}
