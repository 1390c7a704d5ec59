#pragma once

#include <optional>
#include <span>
#include <vector>

#include "survrel/cost.hpp"
#include "survrel/network.hpp"

namespace survrel {

// Realized cost of every directed edge, indexed by EdgeIndex.
using CostAssignment = std::vector<Cost>;

CostAssignment assign_costs(const SurveillanceNetwork& network, CostModel model, double rho,
                            const FailureSample& sample);

// Single-source Dijkstra. `via[v]` is the last edge on the chosen path to v
// (absent for the origin and for unreachable nodes).
struct ShortestPathTree {
  NodeIndex origin = 0;
  std::vector<Cost> cost;
  std::vector<std::optional<EdgeIndex>> via;
};

// Minimum summed cost from `origin` to every node; Infinite when no path of
// finite-cost edges exists. Throws Error(unknown_node) for a bad origin and
// Error(invalid_attribute) for negative or mis-sized costs.
std::vector<Cost> min_cost_from(const SurveillanceNetwork& network, std::span<const Cost> costs,
                                NodeIndex origin);

ShortestPathTree shortest_path_tree(const SurveillanceNetwork& network, std::span<const Cost> costs,
                                    NodeIndex origin);

struct PathResult {
  NodeIndex origin = 0;
  NodeIndex destination = 0;
  Cost min_cost = Cost::infinite();
  std::optional<std::vector<EdgeIndex>> path;
};

PathResult cheapest_path(const SurveillanceNetwork& network, std::span<const Cost> costs, NodeIndex origin,
                         NodeIndex destination);

// Strict: a path costing exactly the budget is out of reach.
constexpr bool reachable(Cost min_cost, double budget) {
  return min_cost.is_finite() && min_cost.bits() < budget;
}

// Row-major node_count x node_count matrix of minimum costs.
std::vector<Cost> all_pairs_min_cost(const SurveillanceNetwork& network, std::span<const Cost> costs);

// Demand-weighted share of reachable (o, d) pairs, o != d, given a min-cost
// matrix from all_pairs_min_cost. Throws Error(zero_total_demand).
double unaffected_demand(std::span<const Cost> min_costs, const DemandMatrix& demand,
                         const BudgetPolicy& budgets);

double unaffected_demand(const SurveillanceNetwork& network, std::span<const Cost> costs,
                         const DemandMatrix& demand, const BudgetPolicy& budgets);

}  // namespace survrel
