#include "spherelp/hermite.hpp"

#include <algorithm>
#include <cmath>

#include "spherelp/errors.hpp"

namespace spherelp {

NodeMultiset::NodeMultiset(std::vector<NodeEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DomainError("empty node multiset");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (!(e.node >= -1.0 && e.node < 1.0)) throw DomainError("interpolation nodes must lie in [-1, 1)");
    if (e.multiplicity != 1 && e.multiplicity != 2) throw DomainError("multiplicity must be 1 or 2");
    if (i > 0 && !(e.node > entries_[i - 1].node)) throw DomainError("interpolation nodes must be ascending");
    if (e.multiplicity == 1) {
      const bool first_at_minus_one = i == 0 && e.node == -1.0;
      const bool last = i + 1 == entries_.size();
      if (!first_at_minus_one && !last) throw DomainError("simple node only allowed at -1 or at the end");
    }
  }
}

int NodeMultiset::size() const {
  int s = 0;
  for (const auto& e : entries_) s += e.multiplicity;
  return s;
}

std::vector<double> NodeMultiset::expanded() const {
  std::vector<double> z;
  for (const auto& e : entries_)
    for (int r = 0; r < e.multiplicity; ++r) z.push_back(e.node);
  return z;
}

InterpolantReport hermite_interpolant(const Potential& h, const NodeMultiset& nodes, int n) {
  const std::vector<double> z = nodes.expanded();
  const std::size_t q = z.size();
  if (static_cast<int>(q) - 1 > kMaxPolyDegree) throw DomainError("too many interpolation conditions");

  // Confluent divided differences computed in place.
  std::vector<double> dd(q);
  for (std::size_t i = 0; i < q; ++i) dd[i] = h.value(z[i]);
  std::vector<double> newton_coeffs{dd[0]};
  for (std::size_t level = 1; level < q; ++level) {
    for (std::size_t i = q - 1; i >= level; --i) {
      const double span = z[i] - z[i - level];
      if (span == 0.0) {
        dd[i] = h.derivative(z[i]);
      } else {
        dd[i] = (dd[i] - dd[i - 1]) / span;
      }
    }
    newton_coeffs.push_back(dd[level]);
  }

  MonomialPoly poly = MonomialPoly::constant(newton_coeffs.back());
  for (std::size_t i = q - 1; i-- > 0;) {
    poly = poly * MonomialPoly({-z[i], 1.0}) + MonomialPoly::constant(newton_coeffs[i]);
  }

  InterpolantReport rep;
  const MonomialPoly dp = poly.derivative();
  for (const auto& e : nodes.entries()) {
    const double hv = h.value(e.node);
    rep.residual = std::max(rep.residual, std::abs(poly(e.node) - hv) / (1.0 + std::abs(hv)));
    if (e.multiplicity == 2) {
      const double hd = h.derivative(e.node);
      rep.residual = std::max(rep.residual, std::abs(dp(e.node) - hd) / (1.0 + std::abs(hd)));
    }
  }
  if (rep.residual > 1e-10)
    throw NumericalError("Hermite interpolation conditions violated (residual " + std::to_string(rep.residual) + ")");
  rep.gegenbauer = to_gegenbauer(poly, n);
  rep.poly = std::move(poly);
  return rep;
}

DominanceCheck verify_dominance(const MonomialPoly& p, const Potential& h, double lo, double hi, Side side,
                                std::span<const double> focus, double slack) {
  if (!(lo <= hi)) throw DomainError("empty dominance interval");
  std::vector<double> ts;
  constexpr int kGrid = 4001;
  for (int i = 0; i < kGrid; ++i) ts.push_back(lo + (hi - lo) * i / (kGrid - 1));
  for (double a : focus) {
    for (double off = 1e-2; off >= 1e-6; off /= 10.0) {
      for (double t : {a - off, a + off})
        if (t >= lo && t <= hi) ts.push_back(t);
    }
  }
  DominanceCheck out;
  for (double t : ts) {
    const double hv = h.value(t);
    const double gap = side == Side::below ? p(t) - hv : hv - p(t);
    const double excess = gap - slack * (1.0 + std::abs(hv));
    if (gap > out.max_violation) {
      out.max_violation = gap;
      out.worst_t = t;
    }
    if (excess > 0.0) out.ok = false;
  }
  return out;
}

}  // namespace spherelp
