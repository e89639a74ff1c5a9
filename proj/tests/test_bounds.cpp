#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spherelp/bounds.hpp"
#include "spherelp/codes.hpp"
#include "spherelp/errors.hpp"
#include "spherelp/hermite.hpp"

using namespace spherelp;

namespace {

const double kPentakisNw = 735.0 / 23.0;
const double kPentakisS = std::sqrt(1.0 + 2.0 / std::sqrt(5.0)) / std::sqrt(3.0);

}  // namespace

TEST_CASE("ULB values") {
  const BoundReport r = ulb(3, kPentakisNw, Potential::riesz(1.0));
  CHECK(r.feasible);
  CHECK(r.value == doctest::Approx(0.8047860574).epsilon(1e-9));
  CHECK(r.certificate[0] - r.certificate.at_one() / kPentakisNw == doctest::Approx(r.value).epsilon(1e-10));

  const BoundReport two = ulb(2, 8.0, Potential::newton(2));
  CHECK(two.value == doctest::Approx(0.875).epsilon(1e-12));
  CHECK(two.feasible);

  CHECK(std::abs(ulb(3, 13.95, Potential::newton(3)).value - 0.7058) < 5e-5);
}

TEST_CASE("ULB from weights") {
  const WeightedCode pk = build_config("pentakis");
  const BoundReport r = ulb_for_weights(pk.weights(), 3, Potential::riesz(1.0));
  CHECK(r.capacity == doctest::Approx(kPentakisNw).epsilon(1e-14));
  REQUIRE(r.weights.has_value());
  CHECK(r.weights->size == 32);
  CHECK(r.weights->variance > 0.0);

  const std::vector<double> eq(10, 0.1);
  const BoundReport e = ulb_for_weights(eq, 3, Potential::riesz(1.0));
  CHECK(e.capacity == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(std::abs(e.weights->variance) < 1e-17);

  const WeightedCode qp = build_config("cube-cross:4");
  CHECK(ulb_for_weights(qp.weights(), 4, Potential::newton(4)).capacity == doctest::Approx(24.0).epsilon(1e-13));
  const std::vector<double> bad = {0.5, 0.4};
  CHECK_THROWS_AS(ulb_for_weights(bad, 3, Potential::riesz(1.0)), DomainError);
}

TEST_CASE("UUB for the pentakis parameters") {
  const BoundReport u = uub(3, kPentakisNw, kPentakisS, Potential::riesz(1.0));
  CHECK(u.feasible);
  CHECK(u.m == 9);
  CHECK(u.value == doctest::Approx(0.8234053993).epsilon(1e-9));
  CHECK(u.lambda_star == doctest::Approx(7.479941398).epsilon(1e-8));
  CHECK(u.n1 == doctest::Approx(34.42681941).epsilon(1e-9));
  CHECK(std::abs(u.certificate[1]) < 1e-9);
  for (int i = 2; i <= 9; ++i) CHECK(u.certificate[i] < 0.0);
  const Potential h = Potential::riesz(1.0);
  for (double a : u.rule.nodes) CHECK(u.certificate_poly(a) == doctest::Approx(h(a)).epsilon(1e-9));
}

TEST_CASE("low-degree closed forms") {
  std::mt19937_64 rng(41);
  const std::vector<Potential> hs = {Potential::riesz(1.0), Potential::gaussian(1.5), Potential::logarithmic(),
                                     Potential::newton(5)};
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 6;
    const Potential& h = hs[static_cast<std::size_t>(trial) % hs.size()];
    // degree one
    {
      std::uniform_real_distribution<double> u(2.0 + 1e-6, n + 1.0);
      const double N = u(rng);
      const BoundReport r = ulb(n, N, h);
      REQUIRE(r.m == 1);
      CHECK(std::abs(r.value - (N - 1.0) / N * h(-1.0 / (N - 1.0))) < 1e-10);
      std::uniform_real_distribution<double> us(-1.0 + 1e-6, -1.0 / n);
      const double s = us(rng);
      const BoundReport up = uub(n, N, s, h);
      REQUIRE(up.m == 1);
      CHECK(up.lambda_star == 0.0);
      CHECK(std::abs(up.value - (1.0 - 1.0 / N) * h(s)) < 1e-10);
    }
    // degree two
    {
      std::uniform_real_distribution<double> u(n + 1.0 + 1e-6, 2.0 * n);
      const double N = u(rng);
      const BoundReport r = ulb(n, N, h);
      REQUIRE(r.m == 2);
      const double a1 = -(2.0 * n - N) / (n * (N - 2.0));
      const double closed = (N * (N - n - 1.0) * h(-1.0) + n * (N - 2.0) * (N - 2.0) * h(a1)) / (N * ((n + 1.0) * N - 4.0 * n));
      CHECK(std::abs(r.value - closed) < 1e-10);
      std::uniform_real_distribution<double> us(-1.0 / n + 1e-6, -1e-6);
      const double s = us(rng);
      const BoundReport up = uub(n, N, s, h);
      REQUIRE(up.m == 2);
      const double lam = (h(s) - h(-1.0)) / (1.0 - s * s);
      CHECK(std::abs(up.lambda_star - lam) < 1e-10 * (1.0 + lam));
      const double uclosed = ((n - 1.0) * h(s) + (1.0 - n * s * s) * h(-1.0)) / (n * (1.0 - s * s)) - h(-1.0) / N;
      CHECK(std::abs(up.value - uclosed) < 1e-10);
    }
  }
}

TEST_CASE("test functions") {
  const TestFunctionReport r = test_functions(3, kPentakisNw, 27);
  CHECK(r.m == 9);
  for (int j = 1; j <= 9; ++j) CHECK(std::abs(r.values[static_cast<std::size_t>(j - 1)]) < 1e-9);
  CHECK(r.values[9] >= -1e-9);
  CHECK(r.values[10] >= -1e-9);
  CHECK_THROWS_AS(test_functions(3, kPentakisNw, 0), DomainError);

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 3;
    std::uniform_real_distribution<double> u(3.0, 120.0);
    const TestFunctionReport t = test_functions(n, u(rng), 40);
    const auto m = static_cast<std::size_t>(t.m);
    for (std::size_t j = 0; j < m; ++j) CHECK(std::abs(t.values[j]) < 1e-9);
    CHECK(t.values[m] >= -1e-9);
    CHECK(t.values[m + 1] >= -1e-9);
    if (t.improvable_degree) CHECK(*t.improvable_degree >= t.m + 3);
  }
}

TEST_CASE("negative test functions are flagged") {
  bool found = false;
  for (int n = 3; n <= 8 && !found; ++n) {
    for (double N = 5.0; N < 400.0 && !found; N *= 1.13) {
      const TestFunctionReport t = test_functions(n, N, 60);
      if (t.improvable_degree) {
        found = true;
        CHECK(*t.improvable_degree >= t.m + 3);
        CHECK(t.note.find("improvable") != std::string::npos);
      }
    }
  }
  CHECK(found);
}

TEST_CASE("design ULB") {
  const BoundReport d = design_ulb(3, kPentakisNw, 9, Potential::riesz(1.0));
  CHECK(d.value == doctest::Approx(ulb(3, kPentakisNw, Potential::riesz(1.0)).value).epsilon(1e-14));
  const Check* pd = d.find("positive_definite");
  REQUIRE(pd != nullptr);
  CHECK(pd->informational);
  CHECK(pd->note == "not required");

  const BoundReport f = design_ulb(3, kPentakisNw, 9, Potential::fejes_toth());
  CHECK(std::isfinite(f.value));
  CHECK(f.feasible);
  const BoundReport fs = design_ulb(3, kPentakisNw, 9, Potential::shifted(Potential::fejes_toth(), 2.0));
  CHECK(std::abs(fs.value - (f.value + 2.0 * (1.0 - 1.0 / kPentakisNw))) < 1e-10);
  CHECK_THROWS_AS(design_ulb(3, kPentakisNw, 7, Potential::riesz(1.0)), HypothesisError);
}

TEST_CASE("design UUB") {
  CHECK(design_uub(3, kPentakisNw, kPentakisS, 9, Potential::riesz(1.0)).value == doctest::Approx(0.8058153063).epsilon(1e-9));
  const double nw3 = build_config("cube-cross:3").capacity();
  const BoundReport r3 = design_uub(3, nw3, 1.0 / std::sqrt(3.0), 5, Potential::newton(3));
  CHECK(r3.feasible);
  CHECK(std::abs(r3.value - 0.70893) < 5e-5);
  CHECK(std::abs(design_uub(4, 24.0, 0.5, 5, Potential::newton(4)).value - 0.58111) < 5e-5);
  CHECK_THROWS_AS(design_uub(4, 24.0, 0.5, 5, Potential::newton(4), 8), HypothesisError);
}

TEST_CASE("sandwich on built-in configurations") {
  struct Case {
    std::string name;
    Potential h;
  };
  const std::vector<Case> cases = {{"pentakis", Potential::riesz(1.0)},    {"cube-cross:3", Potential::newton(3)},
                                   {"cube-cross:4", Potential::newton(4)}, {"cube-cross:5", Potential::riesz(1.0)},
                                   {"ngon:8", Potential::riesz(1.0)},      {"icosahedron", Potential::gaussian(1.0)},
                                   {"24-cell", Potential::riesz(2.0)},     {"dodecahedron", Potential::logarithmic()}};
  for (const auto& c : cases) {
    const WeightedCode code = build_config(c.name);
    const double e = energy(code, c.h);
    const BoundReport lo = ulb(code.dimension(), code.capacity(), c.h);
    const BoundReport hi = uub(code.dimension(), code.capacity(), code.max_inner_product(), c.h);
    CHECK(lo.feasible);
    CHECK(hi.feasible);
    CHECK(lo.value <= e + 1e-9);
    CHECK(e <= hi.value + 1e-9);
  }
}

TEST_CASE("ULB certificate is optimal among degree-m perturbations") {
  const Potential h = Potential::riesz(1.0);
  for (double N : {9.5, 20.0, kPentakisNw}) {
    const BoundReport r = ulb(3, N, h);
    for (int j = 0; j <= r.m; ++j)
      for (double sign : {1.0, -1.0}) {
        std::vector<double> c(r.certificate.coeffs().begin(), r.certificate.coeffs().end());
        c[static_cast<std::size_t>(j)] += sign * 1e-3;
        const GegenbauerSeries g(3, c);
        bool pd = true;
        for (int i = 1; i <= g.degree(); ++i) pd = pd && g[i] >= -1e-12;
        const auto dom = verify_dominance(from_gegenbauer(g), h, -1.0, 0.999, Side::below, r.rule.nodes, 0.0);
        if (pd && dom.ok) CHECK(g[0] - g.at_one() / N <= r.value + 1e-9);
      }
  }
}

TEST_CASE("ULB increases with capacity") {
  double prev = -1.0;
  for (double N : {5.0, 8.0, 20.0, 100.0}) {
    const double v = ulb(3, N, Potential::riesz(1.0)).value;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("shift equivariance of ULB") {
  for (double c : {-1.5, 0.5, 2.0}) {
    for (double N : {6.0, 31.0}) {
      const double base = ulb(4, N, Potential::gaussian(1.0)).value;
      const double shifted = ulb(4, N, Potential::shifted(Potential::gaussian(1.0), c)).value;
      CHECK(std::abs(shifted - (base + c * (1.0 - 1.0 / N))) < 1e-10);
    }
  }
}

TEST_CASE("s outside the validity interval") {
  const double nw = build_config("cube-cross:3").capacity();
  CHECK_NOTHROW(uub(3, nw, 1.0 / std::sqrt(3.0), Potential::newton(3)));
  const BoundReport r = uub(3, nw, 1.0 / std::sqrt(3.0), Potential::newton(3), 5);
  const Check* c = r.find("s_in_validity_interval");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed);
  CHECK(c->informational);
  CHECK(r.value == doctest::Approx(0.73563325).epsilon(1e-8));
}
