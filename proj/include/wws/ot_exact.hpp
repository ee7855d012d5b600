#pragma once

#include <cstddef>
#include <vector>

#include "wws/measures.hpp"

namespace wws {

struct PlanEntry {
  std::size_t source = 0;
  std::size_t target = 0;
  double mass = 0.0;
};

/// Optimal coupling between two discrete measures. Indices refer to the
/// atoms of the measures passed to exact_ws; zero-mass entries are omitted.
struct TransportPlan {
  std::vector<PlanEntry> entries;
  double total_cost = 0.0;
};

enum class PivotRule {
  /// First improving arc in index order (Bland). Guaranteed termination,
  /// many more pivots.
  bland,
  /// Most negative reduced cost within a rotating block of ~sqrt(mn) arcs.
  block_search,
};

struct ExactResult {
  double cost = 0.0;
  TransportPlan plan;
};

/// Exact min sum_ij gamma_ij |x_i - y_j|^s over couplings of mu and nu,
/// computed by the transportation (bipartite network) simplex method.
/// Throws InvalidExponent for s outside (0, 1] and UnbalancedMarginals when
/// either weight vector does not sum to one within 1e-9.
ExactResult exact_ws(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double s,
                     PivotRule rule = PivotRule::block_search);

/// W1 on the line as the area between the two cumulative distribution
/// functions, evaluated exactly on the merged support.
double w1_cdf(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace wws
