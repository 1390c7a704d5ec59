#include "survrel/paths.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <utility>

#include "survrel/error.hpp"

namespace survrel {

CostAssignment assign_costs(const SurveillanceNetwork& network, CostModel model, double rho,
                            const FailureSample& sample) {
  CostAssignment costs;
  costs.reserve(network.edge_count());
  for (const Edge& e : network.edges()) costs.push_back(edge_cost(model, e, rho, sample));
  return costs;
}

namespace {

void check_inputs(const SurveillanceNetwork& network, std::span<const Cost> costs, NodeIndex origin) {
  if (origin >= network.node_count()) {
    throw Error(ErrorCode::unknown_node, "origin index " + std::to_string(origin) + " out of range");
  }
  if (costs.size() != network.edge_count()) {
    throw Error(ErrorCode::invalid_attribute, "cost assignment must cover every directed edge exactly once");
  }
  for (const Cost& c : costs) {
    if (!(c.bits() >= 0.0)) throw Error(ErrorCode::invalid_attribute, "edge costs must be non-negative");
  }
}

template <bool TrackPath>
void dijkstra(const SurveillanceNetwork& network, std::span<const Cost> costs, NodeIndex origin,
              std::vector<Cost>& dist, std::vector<std::optional<EdgeIndex>>* via) {
  const std::size_t n = network.node_count();
  dist.assign(n, Cost::infinite());
  if constexpr (TrackPath) via->assign(n, std::nullopt);

  using Entry = std::pair<double, NodeIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[origin] = Cost::finite(0.0);
  heap.emplace(0.0, origin);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u].bits()) continue;
    for (EdgeIndex e : network.out_edges(u)) {
      const Cost c = costs[e];
      if (!c.is_finite()) continue;
      const NodeIndex v = network.edges()[e].to;
      const Cost candidate = dist[u] + c;
      if (candidate < dist[v]) {
        dist[v] = candidate;
        if constexpr (TrackPath) (*via)[v] = e;
        heap.emplace(candidate.bits(), v);
      }
    }
  }
}

}  // namespace

std::vector<Cost> min_cost_from(const SurveillanceNetwork& network, std::span<const Cost> costs,
                                NodeIndex origin) {
  check_inputs(network, costs, origin);
  std::vector<Cost> dist;
  dijkstra<false>(network, costs, origin, dist, nullptr);
  return dist;
}

ShortestPathTree shortest_path_tree(const SurveillanceNetwork& network, std::span<const Cost> costs,
                                    NodeIndex origin) {
  check_inputs(network, costs, origin);
  ShortestPathTree tree;
  tree.origin = origin;
  dijkstra<true>(network, costs, origin, tree.cost, &tree.via);
  return tree;
}

PathResult cheapest_path(const SurveillanceNetwork& network, std::span<const Cost> costs, NodeIndex origin,
                         NodeIndex destination) {
  if (destination >= network.node_count()) {
    throw Error(ErrorCode::unknown_node, "destination index " + std::to_string(destination) + " out of range");
  }
  const ShortestPathTree tree = shortest_path_tree(network, costs, origin);
  PathResult result{origin, destination, tree.cost[destination], std::nullopt};
  if (!result.min_cost.is_finite()) return result;

  std::vector<EdgeIndex> path;
  for (NodeIndex v = destination; v != origin;) {
    const EdgeIndex e = *tree.via[v];
    path.push_back(e);
    v = network.edges()[e].from;
  }
  std::reverse(path.begin(), path.end());
  result.path = std::move(path);
  return result;
}

std::vector<Cost> all_pairs_min_cost(const SurveillanceNetwork& network, std::span<const Cost> costs) {
  const std::size_t n = network.node_count();
  std::vector<Cost> matrix;
  matrix.reserve(n * n);
  std::vector<Cost> row;
  if (n > 0) check_inputs(network, costs, 0);
  for (NodeIndex o = 0; o < n; ++o) {
    dijkstra<false>(network, costs, o, row, nullptr);
    matrix.insert(matrix.end(), row.begin(), row.end());
  }
  return matrix;
}

double unaffected_demand(std::span<const Cost> min_costs, const DemandMatrix& demand,
                         const BudgetPolicy& budgets) {
  const std::size_t n = demand.node_count();
  if (min_costs.size() != n * n) {
    throw Error(ErrorCode::invalid_attribute, "min-cost matrix does not match demand matrix size");
  }
  double served = 0.0;
  double total = 0.0;
  for (NodeIndex o = 0; o < n; ++o) {
    for (NodeIndex d = 0; d < n; ++d) {
      const double w = demand(o, d);
      if (o == d || w <= 0.0) continue;
      total += w;
      if (reachable(min_costs[static_cast<std::size_t>(o) * n + d], budgets(o, d))) served += w;
    }
  }
  if (!(total > 0.0)) {
    throw Error(ErrorCode::zero_total_demand, "demand has no positive weight between distinct nodes");
  }
  return served / total;
}

double unaffected_demand(const SurveillanceNetwork& network, std::span<const Cost> costs,
                         const DemandMatrix& demand, const BudgetPolicy& budgets) {
  if (demand.node_count() != network.node_count()) {
    throw Error(ErrorCode::invalid_attribute, "demand matrix size does not match the network");
  }
  return unaffected_demand(all_pairs_min_cost(network, costs), demand, budgets);
}

}  // namespace survrel
