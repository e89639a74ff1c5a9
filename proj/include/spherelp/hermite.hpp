#pragma once

// Hermite interpolation of a potential at a multiset of nodes, and checks that
// the interpolant stays on one side of the potential.

#include <span>
#include <utility>
#include <vector>

#include "spherelp/orthopoly.hpp"
#include "spherelp/potentials.hpp"

namespace spherelp {

struct NodeEntry {
  double node = 0.0;
  int multiplicity = 2;
};

/// Ascending nodes in [-1, 1) with multiplicity 1 or 2. A simple node is only
/// allowed as the first entry at -1 or as the last entry.
class NodeMultiset {
 public:
  explicit NodeMultiset(std::vector<NodeEntry> entries);

  std::span<const NodeEntry> entries() const { return entries_; }
  /// Sum of multiplicities.
  int size() const;
  /// Expanded nodes, each repeated by its multiplicity.
  std::vector<double> expanded() const;

 private:
  std::vector<NodeEntry> entries_;
};

struct InterpolantReport {
  MonomialPoly poly;
  GegenbauerSeries gegenbauer{3, {0.0}};
  /// Largest relative mismatch of value or derivative at the nodes.
  double residual = 0.0;
};

/// The polynomial of degree < |T| agreeing with h (and h' at double nodes) on T.
/// Throws NumericalError when the interpolation conditions are not met to 1e-10.
InterpolantReport hermite_interpolant(const Potential& h, const NodeMultiset& nodes, int n);

enum class Side { below, above };

struct DominanceCheck {
  bool ok = true;
  /// Largest amount by which the polynomial crosses to the wrong side.
  double max_violation = 0.0;
  double worst_t = 0.0;
};

/// Samples p - h on [lo, hi] (a uniform grid refined around `focus`) and checks
/// p <= h (below) or p >= h (above) up to `slack` (1 + |h|).
DominanceCheck verify_dominance(const MonomialPoly& p, const Potential& h, double lo, double hi, Side side,
                                std::span<const double> focus = {}, double slack = 1e-9);

}  // namespace spherelp
