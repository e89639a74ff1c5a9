#pragma once

// JSON and CSV forms of codes, rules and reports.

#include <string>

#include <json.hpp>

#include "spherelp/bounds.hpp"
#include "spherelp/codes.hpp"

namespace spherelp {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr int kReportDigits = 12;

/// x rounded to `digits` significant decimal digits.
double round_significant(double x, int digits = kReportDigits);

/// {n, points, weights} at full precision.
Json code_to_json(const WeightedCode& code);
/// Inverse of code_to_json; validation as in WeightedCode::create.
WeightedCode code_from_json(const Json& j);
WeightedCode load_code(const std::string& path);

Json to_json(const QuadratureRule& rule);
Json to_json(const BoundReport& report);
Json to_json(const TestFunctionReport& report);
Json to_json(const DesignCheckReport& report);

/// Header `i,alpha_i,rho_i` then one row per node.
std::string rule_csv(const QuadratureRule& rule);

}  // namespace spherelp
