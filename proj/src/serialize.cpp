#include "spherelp/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spherelp/errors.hpp"

namespace spherelp {

namespace {

Json rounded(std::span<const double> xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(round_significant(x));
  return a;
}

std::string sign_name(TestSign s) {
  switch (s) {
    case TestSign::zero: return "zero";
    case TestSign::positive: return "nonneg";
    case TestSign::negative: return "neg";
  }
  return "?";
}

}  // namespace

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return std::strtod(buf, nullptr);
}

Json code_to_json(const WeightedCode& code) {
  Json j;
  j["n"] = code.dimension();
  Json pts = Json::array();
  for (int i = 0; i < code.size(); ++i) {
    Json row = Json::array();
    for (int d = 0; d < code.dimension(); ++d) row.push_back(code.points()(i, d));
    pts.push_back(std::move(row));
  }
  j["points"] = std::move(pts);
  j["weights"] = code.weights();
  return j;
}

WeightedCode code_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    const auto& pts = j.at("points");
    if (!pts.is_array() || pts.empty()) throw DomainError("code file needs a non-empty 'points' array");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(pts.size()), n);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!pts[i].is_array() || static_cast<int>(pts[i].size()) != n)
        throw DomainError("point " + std::to_string(i) + " does not have " + std::to_string(n) + " coordinates");
      for (int d = 0; d < n; ++d) m(static_cast<Eigen::Index>(i), d) = pts[i][static_cast<std::size_t>(d)].get<double>();
    }
    return WeightedCode::create(std::move(m), j.at("weights").get<std::vector<double>>());
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed code JSON: ") + e.what());
  }
}

WeightedCode load_code(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw DomainError("'" + path + "' is not valid JSON: " + e.what());
  }
  return code_from_json(j);
}

Json to_json(const QuadratureRule& rule) {
  Json j;
  j["m"] = rule.m;
  j["k"] = rule.k;
  j["eps"] = rule.eps;
  j["capacity"] = round_significant(rule.capacity);
  j["s"] = round_significant(rule.s);
  j["nodes"] = rounded(rule.nodes);
  j["weights"] = rounded(rule.weights);
  return j;
}

Json to_json(const BoundReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = to_string(r.kind);
  j["n"] = r.n;
  j["m"] = r.m;
  j["capacity"] = round_significant(r.capacity);
  j["potential"] = r.potential;
  j["value"] = round_significant(r.value);
  j["feasible"] = r.feasible;
  if (r.kind == BoundKind::uub || r.kind == BoundKind::design_uub) {
    j["lambda_star"] = round_significant(r.lambda_star);
    j["n1"] = round_significant(r.n1);
  }
  if (r.weights) {
    j["code_size"] = r.weights->size;
    j["sum_of_squares"] = round_significant(r.weights->sum_of_squares);
    j["variance"] = round_significant(r.weights->variance);
  }
  j["rule"] = to_json(r.rule);
  j["certificate"] = {{"gegenbauer", rounded(r.certificate.coeffs())}, {"monomial", rounded(r.certificate_poly.coeffs())}};
  Json diags = Json::array();
  for (const auto& c : r.diagnostics) {
    Json d;
    d["name"] = c.name;
    d["passed"] = c.passed;
    d["value"] = round_significant(c.value);
    d["threshold"] = round_significant(c.threshold);
    if (c.informational) d["informational"] = true;
    if (!c.note.empty()) d["note"] = c.note;
    diags.push_back(std::move(d));
  }
  j["diagnostics"] = std::move(diags);
  return j;
}

Json to_json(const TestFunctionReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "test_functions";
  j["n"] = r.n;
  j["m"] = r.m;
  j["rule"] = to_json(r.rule);
  Json vals = Json::array();
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    vals.push_back({{"j", static_cast<int>(i) + 1}, {"q", round_significant(r.values[i])}, {"sign", sign_name(r.signs[i])}});
  }
  j["values"] = std::move(vals);
  j["improvable_degree"] = r.improvable_degree ? Json(*r.improvable_degree) : Json(nullptr);
  j["note"] = r.note;
  return j;
}

Json to_json(const DesignCheckReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "design_check";
  j["strength"] = r.strength;
  j["tol"] = r.tol;
  j["moments"] = rounded(r.moments);
  return j;
}

std::string rule_csv(const QuadratureRule& rule) {
  std::ostringstream out;
  out << "i,alpha_i,rho_i\n";
  char buf[96];
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g\n", i, rule.nodes[i], rule.weights[i]);
    out << buf;
  }
  return out.str();
}

}  // namespace spherelp
