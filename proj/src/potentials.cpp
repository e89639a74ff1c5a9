#include "spherelp/potentials.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "spherelp/errors.hpp"

namespace spherelp {

namespace {

void require_below_one(double t) {
  if (!(t < 1.0)) throw DomainError("potential evaluated at t >= 1 (coincident points)");
}

double parse_number(std::string_view s, std::string_view what) {
  try {
    std::size_t used = 0;
    const std::string str(s);
    const double v = std::stod(str, &used);
    if (used != str.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw DomainError("invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double riesz_exponent(PotentialKind kind, double param) {
  return kind == PotentialKind::newton ? param - 2.0 : param;
}

}  // namespace

Potential Potential::riesz(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("Riesz exponent must be positive");
  return Potential(PotentialKind::riesz, alpha);
}

Potential Potential::newton(int n) {
  if (n < 2) throw DomainError("Newton potential needs dimension at least 2");
  return Potential(PotentialKind::newton, static_cast<double>(n));
}

Potential Potential::gaussian(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("Gaussian parameter must be positive");
  return Potential(PotentialKind::gaussian, alpha);
}

Potential Potential::logarithmic() { return Potential(PotentialKind::logarithmic, 0.0); }

Potential Potential::fejes_toth() { return Potential(PotentialKind::fejes_toth, 0.0); }

Potential Potential::shifted(const Potential& base, double c) {
  Potential p = base;
  p.shifted_ = true;
  p.shift_ += c;
  return p;
}

double Potential::value(double t) const {
  require_below_one(t);
  const double d = 2.0 * (1.0 - t);
  double v = 0.0;
  switch (kind_) {
    case PotentialKind::riesz:
    case PotentialKind::newton:
      v = std::pow(d, -0.5 * riesz_exponent(kind_, param_));
      break;
    case PotentialKind::gaussian:
      v = std::exp(-param_ * (1.0 - t));
      break;
    case PotentialKind::logarithmic:
      v = -std::log(d);
      break;
    case PotentialKind::fejes_toth:
      v = -std::sqrt(d);
      break;
  }
  return v + shift_;
}

double Potential::derivative(double t) const {
  require_below_one(t);
  const double d = 2.0 * (1.0 - t);
  switch (kind_) {
    case PotentialKind::riesz:
    case PotentialKind::newton: {
      const double a = riesz_exponent(kind_, param_);
      return a == 0.0 ? 0.0 : a * std::pow(d, -0.5 * a - 1.0);
    }
    case PotentialKind::gaussian:
      return param_ * std::exp(-param_ * (1.0 - t));
    case PotentialKind::logarithmic:
      return 1.0 / (1.0 - t);
    case PotentialKind::fejes_toth:
      return 1.0 / std::sqrt(d);
  }
  return 0.0;
}

std::string Potential::spec() const {
  std::string base;
  switch (kind_) {
    case PotentialKind::riesz: base = "riesz:" + format_number(param_); break;
    case PotentialKind::newton: base = "newton:" + std::to_string(static_cast<int>(param_)); break;
    case PotentialKind::gaussian: base = "gaussian:" + format_number(param_); break;
    case PotentialKind::logarithmic: base = "log"; break;
    case PotentialKind::fejes_toth: base = "fejes-toth"; break;
  }
  return shifted_ ? "shift:" + format_number(shift_) + ":" + base : base;
}

Potential Potential::parse(std::string_view spec, int dimension) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = spec.find(':', start);
    parts.push_back(spec.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  const std::string_view head = parts.front();
  auto arity = [&](std::size_t want) {
    if (parts.size() != want) throw DomainError("malformed potential '" + std::string(spec) + "'");
  };
  if (head == "shift") {
    if (parts.size() < 3) throw DomainError("malformed potential '" + std::string(spec) + "'");
    const double c = parse_number(parts[1], "shift");
    const auto rest = spec.substr(static_cast<std::size_t>(parts[2].data() - spec.data()));
    return shifted(parse(rest, dimension), c);
  }
  if (head == "riesz") {
    arity(2);
    return riesz(parse_number(parts[1], "Riesz exponent"));
  }
  if (head == "gaussian") {
    arity(2);
    return gaussian(parse_number(parts[1], "Gaussian parameter"));
  }
  if (head == "newton") {
    if (parts.size() == 1) {
      if (dimension < 2) throw DomainError("bare 'newton' needs a dimension");
      return newton(dimension);
    }
    arity(2);
    const double n = parse_number(parts[1], "Newton dimension");
    if (n != std::floor(n)) throw DomainError("Newton dimension must be an integer");
    return newton(static_cast<int>(n));
  }
  if (head == "log") {
    arity(1);
    return logarithmic();
  }
  if (head == "fejes-toth") {
    arity(1);
    return fejes_toth();
  }
  throw DomainError("unknown potential '" + std::string(spec) + "'");
}

namespace {

MonotonicityClass closed_form_class(const Potential& h) {
  MonotonicityClass c;
  const bool constant = h.kind() == PotentialKind::newton && h.parameter() == 2.0;
  switch (h.kind()) {
    case PotentialKind::riesz:
    case PotentialKind::newton:
    case PotentialKind::gaussian:
      c.absolutely_monotone = true;
      // A non-strict absolutely monotone function is a polynomial.
      c.strictly_absolutely_monotone = !constant;
      c.min_nonneg_derivative_order = 0;
      break;
    case PotentialKind::logarithmic:
      // Listed among the absolutely monotone potentials; h itself is negative
      // near -1, which only shifts f_0 and never enters a certificate test.
      c.absolutely_monotone = true;
      c.strictly_absolutely_monotone = true;
      c.min_nonneg_derivative_order = 1;
      break;
    case PotentialKind::fejes_toth:
      // 2 + h is absolutely monotone.
      c.min_nonneg_derivative_order = 1;
      break;
  }
  c.shift_absolutely_monotone = true;
  if (h.is_shifted() && h.kind() != PotentialKind::logarithmic) {
    const bool nonneg_at_left = h.value(-1.0) >= 0.0;
    c.absolutely_monotone = nonneg_at_left && c.min_nonneg_derivative_order <= 1;
    c.strictly_absolutely_monotone = c.absolutely_monotone && !constant;
    c.min_nonneg_derivative_order = nonneg_at_left ? 0 : std::max(c.min_nonneg_derivative_order, 1);
  }
  return c;
}

// Sign of h^{(order)} at t from central differences of the closed-form h'.
bool sampled_derivative_nonneg(const Potential& h, int order, double t) {
  const double step = 1e-2;
  const int points = order;  // stencil for the (order-1)-th difference of h'
  const double left = t - 0.5 * (points - 1) * step;
  const double right = t + 0.5 * (points - 1) * step;
  if (left < -1.0 || right > 1.0 - 1e-3) return true;
  double diff = 0.0;
  double scale = 0.0;
  double binom = 1.0;
  for (int i = 0; i < points; ++i) {
    const double sign = ((points - 1 - i) % 2 == 0) ? 1.0 : -1.0;
    const double v = h.derivative(left + i * step);
    diff += sign * binom * v;
    scale += binom * std::abs(v);
    binom = binom * (points - 1 - i) / (i + 1);
  }
  return diff >= -1e-9 * std::max(scale, 1.0);
}

}  // namespace

MonotonicityClass classify(const Potential& h, int max_order, std::span<const double> sample_grid) {
  MonotonicityClass c = closed_form_class(h);
  for (double t : sample_grid) {
    if (!(t >= -1.0 && t < 1.0)) throw DomainError("classification grid must lie in [-1, 1)");
    if (c.min_nonneg_derivative_order == 0 && h.value(t) < 0.0) c.sampling_consistent = false;
    for (int order = 1; order <= max_order; ++order) {
      if (order >= c.min_nonneg_derivative_order && !sampled_derivative_nonneg(h, order, t))
        c.sampling_consistent = false;
    }
  }
  return c;
}

MonotonicityClass classify(const Potential& h) { return closed_form_class(h); }

}  // namespace spherelp
