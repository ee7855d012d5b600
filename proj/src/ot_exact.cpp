#include "wws/ot_exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "wws/error.hpp"

namespace wws {

namespace {

constexpr double kBalanceTolerance = 1e-9;
// Orden's perturbation: every supply gains eps and the last demand gains
// m * eps, which makes every basic flow strictly positive.
constexpr double kPerturbation = 1e-12;

// Transportation problem as a network simplex on the complete bipartite
// graph. Nodes 0..m-1 are sources, m..m+n-1 sinks; arc id a = i * n + j.
// The basis is a spanning tree stored as m + n - 1 arc slots.
class TransportationSimplex {
 public:
  TransportationSimplex(std::vector<double> supply, std::vector<double> demand,
                        std::vector<double> cost, PivotRule rule)
      : m_(supply.size()),
        n_(demand.size()),
        supply_(std::move(supply)),
        demand_(std::move(demand)),
        cost_(std::move(cost)),
        rule_(rule) {
    double max_cost = 0.0;
    for (double c : cost_) max_cost = std::max(max_cost, c);
    tolerance_ = 1e-12 * std::max(1.0, max_cost);
  }

  void solve() {
    std::vector<double> supply = supply_;
    std::vector<double> demand = demand_;
    for (double& a : supply) a += kPerturbation;
    demand.back() += static_cast<double>(m_) * kPerturbation;

    northwest_corner(supply, demand);
    rebuild_tree();
    compute_flows(supply, demand);

    const std::uint64_t max_pivots = 20'000'000;
    const std::uint64_t refresh_interval = m_ + n_;
    for (std::uint64_t pivots = 0;; ++pivots) {
      if (pivots >= max_pivots) {
        throw Error(ErrorCode::SolverFailure, "transportation simplex exceeded the pivot limit");
      }
      const std::int64_t entering = rule_ == PivotRule::bland ? price_bland() : price_block();
      if (entering < 0) break;
      pivot(entering);
      if ((pivots + 1) % refresh_interval == 0) {
        rebuild_tree();
        compute_flows(supply, demand);
      }
    }

    rebuild_tree();
    // Drop the perturbation: the optimal basis stays dual feasible and its
    // flows for the true marginals are nonnegative up to rounding.
    compute_flows(supply_, demand_);
    for (double& f : flow_) f = std::max(f, 0.0);
  }

  std::size_t basis_size() const { return arcs_.size(); }
  std::size_t source_of(std::size_t slot) const { return static_cast<std::size_t>(arcs_[slot]) / n_; }
  std::size_t target_of(std::size_t slot) const { return static_cast<std::size_t>(arcs_[slot]) % n_; }
  double flow(std::size_t slot) const { return flow_[slot]; }
  double cost(std::size_t slot) const { return cost_[static_cast<std::size_t>(arcs_[slot])]; }

 private:
  bool is_source(std::size_t node) const { return node < m_; }

  void northwest_corner(std::vector<double> supply, std::vector<double> demand) {
    const std::size_t nodes = m_ + n_;
    adjacency_.assign(nodes, {});
    arcs_.clear();
    arcs_.reserve(nodes - 1);
    std::size_t i = 0;
    std::size_t j = 0;
    while (arcs_.size() < nodes - 1) {
      add_slot(static_cast<std::int64_t>(i * n_ + j));
      const double moved = std::min(supply[i], demand[j]);
      supply[i] -= moved;
      demand[j] -= moved;
      if (i == m_ - 1) {
        ++j;
      } else if (j == n_ - 1) {
        ++i;
      } else if (supply[i] <= demand[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  void add_slot(std::int64_t arc) {
    const std::size_t slot = arcs_.size();
    arcs_.push_back(arc);
    attach(slot);
  }

  void attach(std::size_t slot) {
    const auto arc = static_cast<std::size_t>(arcs_[slot]);
    adjacency_[arc / n_].push_back(slot);
    adjacency_[m_ + arc % n_].push_back(slot);
  }

  void detach(std::size_t slot) {
    const auto arc = static_cast<std::size_t>(arcs_[slot]);
    for (std::size_t node : {arc / n_, m_ + arc % n_}) {
      auto& list = adjacency_[node];
      list.erase(std::find(list.begin(), list.end(), slot));
    }
  }

  std::size_t other_end(std::size_t slot, std::size_t node) const {
    const auto arc = static_cast<std::size_t>(arcs_[slot]);
    const std::size_t src = arc / n_;
    const std::size_t dst = m_ + arc % n_;
    return node == src ? dst : src;
  }

  // Breadth-first pass from source 0: parent links, depths, node potentials
  // (u_i + v_j = c_ij on every tree arc, u_0 = 0).
  void rebuild_tree() {
    const std::size_t nodes = m_ + n_;
    parent_.assign(nodes, kNone);
    parent_slot_.assign(nodes, kNone);
    depth_.assign(nodes, 0);
    potential_.assign(nodes, 0.0);
    order_.clear();
    order_.reserve(nodes);
    order_.push_back(0);
    parent_[0] = 0;
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const std::size_t node = order_[head];
      for (std::size_t slot : adjacency_[node]) {
        const std::size_t next = other_end(slot, node);
        if (parent_[next] != kNone) continue;
        parent_[next] = node;
        parent_slot_[next] = slot;
        depth_[next] = depth_[node] + 1;
        potential_[next] = cost_[static_cast<std::size_t>(arcs_[slot])] - potential_[node];
        order_.push_back(next);
      }
    }
    parent_[0] = kNone;
    if (order_.size() != nodes) {
      throw Error(ErrorCode::SolverFailure, "basis is not a spanning tree");
    }
  }

  void compute_flows(const std::vector<double>& supply, const std::vector<double>& demand) {
    flow_.assign(arcs_.size(), 0.0);
    net_.resize(m_ + n_);
    for (std::size_t i = 0; i < m_; ++i) net_[i] = supply[i];
    for (std::size_t j = 0; j < n_; ++j) net_[m_ + j] = -demand[j];
    for (std::size_t idx = order_.size(); idx-- > 1;) {
      const std::size_t node = order_[idx];
      flow_[parent_slot_[node]] = is_source(node) ? net_[node] : -net_[node];
      net_[parent_[node]] += net_[node];
    }
  }

  std::int64_t price_bland() const {
    const double* v = potential_.data() + m_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double* row = cost_.data() + i * n_;
      const double u = potential_[i];
      for (std::size_t j = 0; j < n_; ++j) {
        if (row[j] - u - v[j] < -tolerance_) return static_cast<std::int64_t>(i * n_ + j);
      }
    }
    return -1;
  }

  // Scans rows from the cursor in blocks of about sqrt(mn) arcs and returns
  // the most negative reduced cost of the first block that has one.
  std::int64_t price_block() {
    const std::size_t arcs = m_ * n_;
    const std::size_t block =
        std::max<std::size_t>(16, static_cast<std::size_t>(std::sqrt(static_cast<double>(arcs))));
    const double* v = potential_.data() + m_;
    std::int64_t best = -1;
    double best_value = -tolerance_;
    std::size_t i = cursor_ / n_;
    std::size_t j = cursor_ % n_;
    std::size_t scanned = 0;
    std::size_t in_block = 0;
    while (scanned < arcs) {
      const double* row = cost_.data() + i * n_;
      const double u = potential_[i];
      const std::size_t start = j;
      const std::size_t stop = std::min({n_, j + (block - in_block), j + (arcs - scanned)});
      for (; j < stop; ++j) {
        const double rc = row[j] - u - v[j];
        if (rc < best_value) {
          best_value = rc;
          best = static_cast<std::int64_t>(i * n_ + j);
        }
      }
      scanned += stop - start;
      in_block += stop - start;
      if (j == n_) {
        j = 0;
        i = i + 1 == m_ ? 0 : i + 1;
      }
      if (in_block == block) {
        if (best >= 0) break;
        in_block = 0;
      }
    }
    cursor_ = i * n_ + j;
    return best;
  }

  void pivot(std::int64_t entering) {
    const auto arc = static_cast<std::size_t>(entering);
    const std::size_t source = arc / n_;
    const std::size_t sink = m_ + arc % n_;
    std::size_t a = source;
    std::size_t b = sink;
    std::size_t leaving = kNone;
    bool leaving_on_source_side = false;
    double theta = std::numeric_limits<double>::infinity();
    cycle_.clear();
    auto consider = [&](std::size_t slot, bool source_side) {
      const double f = flow_[slot];
      if (f < theta || (f == theta && arcs_[slot] < arcs_[leaving])) {
        theta = f;
        leaving = slot;
        leaving_on_source_side = source_side;
      }
    };
    // The cycle runs source -> sink over the new arc, then back through the
    // tree. Arcs crossed from sink to source lose flow.
    while (a != b) {
      if (depth_[a] >= depth_[b]) {
        const bool loses = is_source(a);
        cycle_.push_back({parent_slot_[a], loses});
        if (loses) consider(parent_slot_[a], true);
        a = parent_[a];
      } else {
        const bool loses = !is_source(b);
        cycle_.push_back({parent_slot_[b], loses});
        if (loses) consider(parent_slot_[b], false);
        b = parent_[b];
      }
    }
    if (leaving == kNone) throw Error(ErrorCode::SolverFailure, "unbounded pivot");
    for (const auto& [slot, loses] : cycle_) flow_[slot] += loses ? -theta : theta;

    // Removing the leaving arc cuts off the subtree holding one end of the
    // entering arc; that subtree is re-hung from the entering arc.
    const std::size_t root = leaving_on_source_side ? source : sink;
    const std::size_t anchor = leaving_on_source_side ? sink : source;
    detach(leaving);
    arcs_[leaving] = entering;
    attach(leaving);
    flow_[leaving] = theta;

    parent_[root] = anchor;
    parent_slot_[root] = leaving;
    depth_[root] = depth_[anchor] + 1;
    potential_[root] = cost_[arc] - potential_[anchor];
    queue_.clear();
    queue_.push_back(root);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const std::size_t node = queue_[head];
      for (std::size_t slot : adjacency_[node]) {
        if (slot == parent_slot_[node]) continue;
        const std::size_t next = other_end(slot, node);
        parent_[next] = node;
        parent_slot_[next] = slot;
        depth_[next] = depth_[node] + 1;
        potential_[next] = cost_[static_cast<std::size_t>(arcs_[slot])] - potential_[node];
        queue_.push_back(next);
      }
    }
  }

  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::size_t m_;
  std::size_t n_;
  std::vector<double> supply_;
  std::vector<double> demand_;
  std::vector<double> cost_;
  PivotRule rule_;
  double tolerance_ = 0.0;

  std::vector<std::int64_t> arcs_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> parent_slot_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> order_;
  std::vector<double> potential_;
  std::vector<double> flow_;
  std::vector<double> net_;
  std::vector<std::pair<std::size_t, bool>> cycle_;
  std::vector<std::size_t> queue_;
  std::size_t cursor_ = 0;
};

void check_balanced(const DiscreteMeasure& measure, const char* which) {
  if (measure.positions.empty() || measure.positions.size() != measure.weights.size()) {
    throw Error(ErrorCode::UnbalancedMarginals, std::string(which) + " has no atoms");
  }
  double total = 0.0;
  for (double w : measure.weights) {
    if (!(w >= 0.0)) {
      throw Error(ErrorCode::UnbalancedMarginals, std::string(which) + " has a negative weight");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kBalanceTolerance) {
    throw Error(ErrorCode::UnbalancedMarginals,
                std::string(which) + " weights sum to " + std::to_string(total));
  }
}

std::vector<std::size_t> nonzero_atoms(const DiscreteMeasure& measure) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < measure.weights.size(); ++i) {
    if (measure.weights[i] > 0.0) kept.push_back(i);
  }
  return kept;
}

}  // namespace

ExactResult exact_ws(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double s,
                     PivotRule rule) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::InvalidExponent, "s must lie in (0, 1], got " + std::to_string(s));
  }
  check_balanced(mu, "source measure");
  check_balanced(nu, "target measure");

  const auto rows = nonzero_atoms(mu);
  const auto cols = nonzero_atoms(nu);
  const std::size_t m = rows.size();
  const std::size_t n = cols.size();

  std::vector<double> supply(m);
  std::vector<double> demand(n);
  for (std::size_t i = 0; i < m; ++i) supply[i] = mu.weights[rows[i]];
  for (std::size_t j = 0; j < n; ++j) demand[j] = nu.weights[cols[j]];

  std::vector<double> cost(m * n);
  const auto total = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static) if (total * static_cast<std::int64_t>(n) > 65536)
  for (std::int64_t i = 0; i < total; ++i) {
    const double x = mu.positions[rows[static_cast<std::size_t>(i)]];
    double* row = cost.data() + static_cast<std::size_t>(i) * n;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::abs(x - nu.positions[cols[j]]);
      row[j] = s == 1.0 ? d : std::pow(d, s);
    }
  }

  TransportationSimplex solver(std::move(supply), std::move(demand), std::move(cost), rule);
  solver.solve();

  ExactResult result;
  for (std::size_t slot = 0; slot < solver.basis_size(); ++slot) {
    const double mass = solver.flow(slot);
    if (mass <= 0.0) continue;
    result.plan.entries.push_back({rows[solver.source_of(slot)], cols[solver.target_of(slot)], mass});
    result.cost += mass * solver.cost(slot);
  }
  std::sort(result.plan.entries.begin(), result.plan.entries.end(),
            [](const PlanEntry& a, const PlanEntry& b) {
              return a.source != b.source ? a.source < b.source : a.target < b.target;
            });
  result.plan.total_cost = result.cost;
  return result;
}

double w1_cdf(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  check_balanced(mu, "source measure");
  check_balanced(nu, "target measure");
  std::size_t i = 0;
  std::size_t j = 0;
  double cdf_mu = 0.0;
  double cdf_nu = 0.0;
  double area = 0.0;
  double previous = std::min(mu.positions.front(), nu.positions.front());
  while (i < mu.size() || j < nu.size()) {
    const double x_mu = i < mu.size() ? mu.positions[i] : std::numeric_limits<double>::infinity();
    const double x_nu = j < nu.size() ? nu.positions[j] : std::numeric_limits<double>::infinity();
    const double x = std::min(x_mu, x_nu);
    area += std::abs(cdf_mu - cdf_nu) * (x - previous);
    previous = x;
    if (x_mu == x) cdf_mu += mu.weights[i++];
    if (x_nu == x) cdf_nu += nu.weights[j++];
  }
  return area;
}

}  // namespace wws
