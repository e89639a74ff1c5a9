#include "spherelp/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "spherelp/errors.hpp"
#include "spherelp/hermite.hpp"

namespace spherelp {

namespace {

constexpr double kCoeffTol = 1e-9;
constexpr double kValueTol = 1e-10;
constexpr double kLambdaThreshold = 1e-12;
constexpr double kUlbDominanceTop = 0.999;

void add(BoundReport& r, Check c) {
  if (!c.passed && !c.informational) r.feasible = false;
  r.diagnostics.push_back(std::move(c));
}

double weighted_sum(const QuadratureRule& rule, const Potential& h) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * h.value(rule.nodes[i]);
  return acc;
}

NodeMultiset ulb_multiset(const QuadratureRule& rule) {
  std::vector<NodeEntry> e;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    e.push_back({rule.nodes[i], (i == 0 && rule.eps == 1) ? 1 : 2});
  return NodeMultiset(std::move(e));
}

// (-1, 1) when eps = 1, interior nodes doubled, (s, 1).
NodeMultiset uub_multiset(const QuadratureRule& rule) {
  std::vector<NodeEntry> e;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const bool simple = (i == 0 && rule.eps == 1) || i + 1 == rule.nodes.size();
    e.push_back({rule.nodes[i], simple ? 1 : 2});
  }
  return NodeMultiset(std::move(e));
}

Check dominance_check(const std::string& name, const MonomialPoly& p, const Potential& h, double lo, double hi,
                      Side side, std::span<const double> focus) {
  const auto d = verify_dominance(p, h, lo, hi, side, focus);
  Check c{name, d.ok, d.max_violation, 1e-9, "", false};
  if (!d.ok) c.note = "worst at t = " + std::to_string(d.worst_t);
  return c;
}

Check hypothesis_check(const Potential& h, int order, const std::string& name) {
  const auto cls = classify(h);
  Check c{name, cls.derivatives_nonneg_from(order), static_cast<double>(cls.min_nonneg_derivative_order),
          static_cast<double>(order), "", false};
  if (!c.passed) c.note = "h^(" + std::to_string(order) + ") >= 0 is not certified for " + h.spec();
  return c;
}

Check rule_checks(BoundReport& r) {
  double sum = 0.0;
  for (double w : r.rule.weights) sum += w;
  const double dev = std::abs(sum - (1.0 - 1.0 / r.rule.capacity));
  return Check{"weight_sum", dev <= 1e-10, dev, 1e-10, "", false};
}

void ulb_core(BoundReport& r, const Potential& h, bool require_positive_definite) {
  r.value = weighted_sum(r.rule, h);
  add(r, rule_checks(r));
  const double defect = exactness_defect(r.rule, r.m);
  add(r, Check{"exactness", defect <= 1e-9, defect, 1e-9, "", false});

  InterpolantReport cert;
  try {
    cert = hermite_interpolant(h, ulb_multiset(r.rule), r.n);
  } catch (const NumericalError& e) {
    add(r, Check{"interpolation", false, 0.0, 1e-10, e.what(), false});
    return;
  }
  r.certificate_poly = cert.poly;
  r.certificate = cert.gegenbauer;
  add(r, Check{"interpolation", true, cert.residual, 1e-10, "", false});

  const double objective = r.certificate[0] - r.certificate.at_one() / r.capacity;
  const double gap = std::abs(objective - r.value);
  add(r, Check{"certificate_value", gap <= kValueTol * (1.0 + std::abs(r.value)), gap, kValueTol, "", false});

  add(r, dominance_check("dominance_below", r.certificate_poly, h, -1.0, kUlbDominanceTop, Side::below, r.rule.nodes));

  double worst = 0.0;
  for (int i = 1; i <= r.certificate.degree(); ++i) worst = std::min(worst, r.certificate[i]);
  Check pd{"positive_definite", worst >= -kCoeffTol, worst, -kCoeffTol, "", false};
  if (!require_positive_definite) {
    pd.informational = true;
    pd.note = "not required";
  }
  add(r, pd);
}

struct UubParts {
  InterpolantReport gt;
  LevenshteinPolynomial lev;
};

void uub_setup(BoundReport& r, double s, std::optional<int> m_override, bool allow_outside_always) {
  if (!(s >= -1.0 && s < 1.0)) throw DomainError("s must lie in [-1, 1)");
  int m = m_override ? *m_override : select_degree_from_s(r.n, s).m;
  if (m < 1 || m > kMaxRuleDegree) throw DomainError("degree m out of range");
  const auto [lo, hi] = validity_interval(r.n, m);
  const bool outside = s < lo - 1e-12 || s > hi + 1e-12;
  if (outside && !m_override && !allow_outside_always)
    throw ValidityError("s outside the validity interval of the selected degree");
  r.m = m;
  r.rule = levenshtein_rule(r.n, m, s, outside);
  r.n1 = r.rule.capacity;

  Check vi{"s_in_validity_interval", !outside, s, hi, "", true};
  if (outside)
    vi.note = "s outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "] of degree " + std::to_string(m);
  r.diagnostics.push_back(vi);

  const auto dlo = static_cast<double>(dgs_bound(r.n, m));
  const auto dhi = static_cast<double>(dgs_bound(r.n, m + 1));
  Check n1c{"n1_in_degree_interval", r.n1 > dlo && r.n1 <= dhi * (1.0 + 1e-12), r.n1, dhi, "", true};
  if (!n1c.passed)
    n1c.note = "N_1 outside (D(n,m), D(n,m+1)] = (" + std::to_string(dlo) + ", " + std::to_string(dhi) + "]";
  r.diagnostics.push_back(n1c);
  r.diagnostics.push_back(
      Check{"capacity_at_most_n1", r.capacity <= r.n1 * (1.0 + 1e-12), r.capacity, r.n1, "", true});
  r.diagnostics.push_back(rule_checks(r));
  if (!r.diagnostics.back().passed) r.feasible = false;
}

}  // namespace

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::ulb: return "ulb";
    case BoundKind::uub: return "uub";
    case BoundKind::design_ulb: return "design_ulb";
    case BoundKind::design_uub: return "design_uub";
  }
  return "?";
}

const Check* BoundReport::find(std::string_view name) const {
  for (const auto& c : diagnostics)
    if (c.name == name) return &c;
  return nullptr;
}

BoundReport ulb(int n, double capacity, const Potential& h) {
  BoundReport r;
  r.kind = BoundKind::ulb;
  r.n = n;
  r.capacity = capacity;
  r.potential = h.spec();
  r.rule = solve_ulb_rule(n, capacity);
  r.m = r.rule.m;
  const auto cls = classify(h);
  add(r, Check{"potential_class", cls.shift_absolutely_monotone, static_cast<double>(cls.min_nonneg_derivative_order),
               0.0, cls.shift_absolutely_monotone ? "" : "h is not (shift) absolutely monotone", false});
  add(r, hypothesis_check(h, r.m + 1, "derivative_sign"));
  ulb_core(r, h, true);
  return r;
}

BoundReport ulb_for_weights(std::span<const double> weights, int n, const Potential& h) {
  if (weights.empty()) throw DomainError("empty weight list");
  double sum = 0.0;
  double sq = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw DomainError("weights must be positive");
    sum += w;
    sq += w * w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw DomainError("weights must sum to 1");
  const double size = static_cast<double>(weights.size());
  BoundReport r = ulb(n, 1.0 / sq, h);
  r.weights = WeightSummary{static_cast<int>(weights.size()), sq, sq / size - 1.0 / (size * size)};
  return r;
}

BoundReport uub(int n, double capacity, double s, const Potential& h, std::optional<int> m_override) {
  if (!(capacity > 1.0)) throw DomainError("capacity must exceed 1");
  BoundReport r;
  r.kind = BoundKind::uub;
  r.n = n;
  r.capacity = capacity;
  r.potential = h.spec();
  uub_setup(r, s, m_override, false);
  add(r, hypothesis_check(h, r.m, "derivative_sign"));

  const LevenshteinPolynomial lev = levenshtein_polynomial(n, r.m, s, true);
  double fmin = lev.gegenbauer[0];
  for (int i = 0; i <= lev.gegenbauer.degree(); ++i) fmin = std::min(fmin, lev.gegenbauer[i]);
  add(r, Check{"levenshtein_positive", fmin > 0.0, fmin, 0.0, "", false});
  const double ratio = lev.gegenbauer.at_one() / lev.gegenbauer[0];
  const double rgap = std::abs(ratio - r.n1) / r.n1;
  add(r, Check{"levenshtein_ratio", rgap <= 1e-9, rgap, 1e-9, "", false});

  InterpolantReport gt;
  try {
    gt = hermite_interpolant(h, uub_multiset(r.rule), n);
  } catch (const NumericalError& e) {
    add(r, Check{"interpolation", false, 0.0, 1e-10, e.what(), false});
    return r;
  }
  add(r, Check{"interpolation", true, gt.residual, 1e-10, "", false});

  double lambda = 0.0;
  for (int i = 1; i <= r.m; ++i) {
    if (gt.gegenbauer[i] > kLambdaThreshold) lambda = std::max(lambda, gt.gegenbauer[i] / lev.gegenbauer[i]);
  }
  r.lambda_star = lambda;

  bool gt_pd = true;
  for (int i = 1; i <= gt.gegenbauer.degree(); ++i) gt_pd = gt_pd && gt.gegenbauer[i] >= -kCoeffTol;
  if (gt_pd && r.m > 1) {
    double shortcut = 0.0;
    for (int i = 1; i <= r.m - 1; ++i) shortcut = std::max(shortcut, gt.gegenbauer[i] / lev.gegenbauer[i]);
    const double gap = std::abs(shortcut - lambda);
    r.diagnostics.push_back(Check{"lambda_shortcut", gap <= 1e-9 * (1.0 + lambda), shortcut, lambda, "", true});
  }

  r.certificate_poly = (-lambda) * lev.monomial + gt.poly;
  std::vector<double> gc(static_cast<std::size_t>(r.m + 1), 0.0);
  for (int i = 0; i <= r.m; ++i) gc[static_cast<std::size_t>(i)] = -lambda * lev.gegenbauer[i] + gt.gegenbauer[i];
  r.certificate = GegenbauerSeries(n, gc);

  const double f0 = lev.gegenbauer[0];
  r.value = -lambda * f0 * (1.0 - r.n1 / capacity) + gt.gegenbauer[0] - gt.gegenbauer.at_one() / capacity;
  const double alt = (-lambda * f0 + gt.gegenbauer.at_one() / r.n1) * (1.0 - r.n1 / capacity) + weighted_sum(r.rule, h);
  const double agap = std::abs(alt - r.value);
  add(r, Check{"value_cross_check", agap <= 1e-9 * (1.0 + std::abs(r.value)), agap, 1e-9, "", false});

  double gmax = -INFINITY;
  for (int i = 1; i <= r.certificate.degree(); ++i) gmax = std::max(gmax, r.certificate[i]);
  if (r.certificate.degree() < 1) gmax = 0.0;
  add(r, Check{"coefficients_nonpositive", gmax <= kCoeffTol, gmax, kCoeffTol, "", false});
  add(r, dominance_check("dominance_above", r.certificate_poly, h, -1.0, s, Side::above, r.rule.nodes));
  return r;
}

BoundReport design_ulb(int n, double capacity, int tau, const Potential& h) {
  if (tau < 1) throw DomainError("tau must be at least 1");
  const auto lo = static_cast<double>(dgs_bound(n, tau));
  const auto hi = static_cast<double>(dgs_bound(n, tau + 1));
  if (!(capacity > lo && capacity <= hi))
    throw HypothesisError("N_W = " + std::to_string(capacity) + " outside (D(n,tau), D(n,tau+1)] = (" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
  BoundReport r;
  r.kind = BoundKind::design_ulb;
  r.n = n;
  r.capacity = capacity;
  r.potential = h.spec();
  r.rule = solve_ulb_rule(n, capacity);
  r.m = r.rule.m;
  add(r, hypothesis_check(h, tau + 1, "derivative_sign"));
  ulb_core(r, h, false);
  return r;
}

BoundReport design_uub(int n, double capacity, double s, int tau, const Potential& h, std::optional<int> m_override) {
  if (tau < 1) throw DomainError("tau must be at least 1");
  if (!(capacity > 1.0)) throw DomainError("capacity must exceed 1");
  const int m = m_override ? *m_override : tau;
  if (m - 1 > tau) throw HypothesisError("certificate degree m - 1 exceeds the design strength");
  BoundReport r;
  r.kind = BoundKind::design_uub;
  r.n = n;
  r.capacity = capacity;
  r.potential = h.spec();
  uub_setup(r, s, m, true);
  add(r, hypothesis_check(h, std::min(m, tau), "derivative_sign"));

  InterpolantReport gt;
  try {
    gt = hermite_interpolant(h, uub_multiset(r.rule), n);
  } catch (const NumericalError& e) {
    add(r, Check{"interpolation", false, 0.0, 1e-10, e.what(), false});
    return r;
  }
  add(r, Check{"interpolation", true, gt.residual, 1e-10, "", false});
  r.certificate_poly = gt.poly;
  r.certificate = gt.gegenbauer;
  r.value = gt.gegenbauer[0] - gt.gegenbauer.at_one() / capacity;
  const double alt = (capacity - r.n1) * gt.gegenbauer.at_one() / (capacity * r.n1) + weighted_sum(r.rule, h);
  const double agap = std::abs(alt - r.value);
  add(r, Check{"value_cross_check", agap <= 1e-9 * (1.0 + std::abs(r.value)), agap, 1e-9, "", false});
  add(r, dominance_check("dominance_above", r.certificate_poly, h, -1.0, s, Side::above, r.rule.nodes));
  return r;
}

TestFunctionReport test_functions(int n, double capacity, int j_max, double tol) {
  if (j_max < 1) throw DomainError("j_max must be at least 1");
  TestFunctionReport out;
  out.n = n;
  out.rule = solve_ulb_rule(n, capacity);
  out.m = out.rule.m;
  std::vector<std::vector<double>> values;
  for (double a : out.rule.nodes) values.push_back(gegenbauer_values(n, j_max, a));
  for (int j = 1; j <= j_max; ++j) {
    double q = 1.0 / capacity;
    for (std::size_t i = 0; i < out.rule.nodes.size(); ++i) q += out.rule.weights[i] * values[i][static_cast<std::size_t>(j)];
    out.values.push_back(q);
    TestSign sign = std::abs(q) <= tol ? TestSign::zero : (q > 0.0 ? TestSign::positive : TestSign::negative);
    out.signs.push_back(sign);
    if (sign == TestSign::negative && !out.improvable_degree) out.improvable_degree = j;
  }
  if (out.improvable_degree) {
    out.note = "ULB improvable, degree >= m+3 (first negative Q_j at j = " + std::to_string(*out.improvable_degree) + ")";
  } else {
    out.note = "no negative Q_j for j <= " + std::to_string(j_max) + "; larger j not examined";
  }
  return out;
}

}  // namespace spherelp
