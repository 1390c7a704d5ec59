#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "survrel/error.hpp"
#include "survrel/paths.hpp"

using namespace survrel;

namespace {

constexpr Cost inf = Cost::infinite();
constexpr Cost fin(double b) { return Cost::finite(b); }

std::vector<std::string> labels(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("n" + std::to_string(i));
  return out;
}

SurveillanceNetwork net_from(int n, const std::vector<oracle::Arc>& arcs) {
  const auto names = labels(n);
  std::vector<EdgeSpec> specs;
  for (const auto& a : arcs) specs.push_back({.from = names[a.from], .to = names[a.to]});
  return build_network(names, specs);
}

CostAssignment costs_from(const std::vector<oracle::Arc>& arcs) {
  CostAssignment c;
  for (const auto& a : arcs) c.push_back(std::isinf(a.cost) ? inf : fin(a.cost));
  return c;
}

}  // namespace

TEST_CASE("chain") {
  const auto net = net_from(3, {{0, 1, 0}, {1, 2, 0}});
  const auto c = min_cost_from(net, CostAssignment{fin(1), fin(2)}, 0);
  CHECK(c[2] == fin(3));
  CHECK(c[0] == fin(0));
}

TEST_CASE("diamond") {
  const auto net = net_from(4, {{0, 1, 0}, {1, 3, 0}, {0, 2, 0}, {2, 3, 0}});
  const CostAssignment c{fin(1), fin(5), fin(2), fin(0)};
  CHECK(min_cost_from(net, c, 0)[3] == fin(2));
  const auto r = cheapest_path(net, c, 0, 3);
  REQUIRE(r.path.has_value());
  CHECK(*r.path == std::vector<EdgeIndex>{2, 3});
}

TEST_CASE("unreachable and bad origin") {
  const auto net = net_from(3, {{0, 1, 0}});
  CHECK(min_cost_from(net, CostAssignment{fin(0)}, 0)[2] == inf);
  CHECK(min_cost_from(net, CostAssignment{inf}, 0)[1] == inf);
  CHECK_THROWS_AS(min_cost_from(net, CostAssignment{fin(0)}, 7), Error);
  CHECK_THROWS_AS(min_cost_from(net, CostAssignment{fin(-1)}, 0), Error);
  CHECK_THROWS_AS(min_cost_from(net, CostAssignment{}, 0), Error);
  const auto r = cheapest_path(net, CostAssignment{fin(0)}, 0, 2);
  CHECK(r.min_cost == inf);
  CHECK_FALSE(r.path.has_value());
  const auto self = cheapest_path(net, CostAssignment{fin(0)}, 1, 1);
  CHECK(self.min_cost == fin(0));
  CHECK(self.path->empty());
}

TEST_CASE("random graphs against exhaustive enumeration") {
  std::mt19937_64 rng(20240611);
  int instances = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int m = 1 + static_cast<int>(rng() % 12);
    const auto arcs = oracle::random_arcs(rng, n, m);
    const auto net = net_from(n, arcs);
    const auto costs = costs_from(arcs);
    for (int o = 0; o < n; ++o) {
      const auto got = min_cost_from(net, costs, static_cast<NodeIndex>(o));
      const auto want = oracle::min_cost_by_enumeration(n, arcs, o);
      for (int v = 0; v < n; ++v) CHECK(got[v].bits() == want[v]);

      // The returned path realizes the returned cost.
      const auto tree = shortest_path_tree(net, costs, static_cast<NodeIndex>(o));
      for (int v = 0; v < n; ++v) {
        const auto r = cheapest_path(net, costs, static_cast<NodeIndex>(o), static_cast<NodeIndex>(v));
        CHECK(r.path.has_value() == r.min_cost.is_finite());
        if (!r.path) continue;
        Cost sum = fin(0);
        NodeIndex at = static_cast<NodeIndex>(o);
        for (EdgeIndex e : *r.path) {
          CHECK(net.edge(e).from == at);
          at = net.edge(e).to;
          sum = sum + costs[e];
        }
        CHECK(at == static_cast<NodeIndex>(v));
        CHECK(sum == r.min_cost);
        CHECK(tree.cost[v] == r.min_cost);
      }
    }
    ++instances;
  }
  CHECK(instances >= 100);
}

TEST_CASE("cost never exceeds a direct edge, and cheaper edges never hurt") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    auto arcs = oracle::random_arcs(rng, n, 1 + static_cast<int>(rng() % 12));
    const auto net = net_from(n, arcs);
    const auto costs = costs_from(arcs);
    const auto all = all_pairs_min_cost(net, costs);
    for (std::size_t e = 0; e < arcs.size(); ++e) {
      CHECK(all[arcs[e].from * n + arcs[e].to] <= costs[e]);
    }
    auto lowered = costs;
    const auto pick = rng() % lowered.size();
    lowered[pick] = fin(0);
    const auto after = all_pairs_min_cost(net, lowered);
    for (std::size_t k = 0; k < all.size(); ++k) CHECK(after[k] <= all[k]);
  }
}

TEST_CASE("reachability is strict") {
  CHECK(reachable(fin(0), 1.0));
  CHECK_FALSE(reachable(fin(10), 10.0));
  CHECK(reachable(fin(10), 10.5));
  CHECK_FALSE(reachable(inf, unlimited_budget));
  CHECK(reachable(fin(1e12), unlimited_budget));
}

TEST_CASE("unaffected demand") {
  const auto pair = net_from(2, {{0, 1, 0}, {1, 0, 0}});
  const DemandMatrix d(2);
  const BudgetPolicy b(1.0);
  CHECK(unaffected_demand(pair, CostAssignment{fin(0), fin(0)}, d, b) == 1.0);
  CHECK(unaffected_demand(pair, CostAssignment{inf, inf}, d, b) == 0.0);
  CHECK(unaffected_demand(pair, CostAssignment{fin(0), inf}, d, b) == 0.5);

  // Line a-b-c with only b-c passable in both directions.
  const auto line = net_from(3, {{0, 1, 0}, {1, 0, 0}, {1, 2, 0}, {2, 1, 0}});
  const DemandMatrix d3(3);
  CHECK(unaffected_demand(line, CostAssignment{inf, inf, fin(0), fin(0)}, d3, BudgetPolicy(1.0)) ==
        doctest::Approx(2.0 / 6.0));
  CHECK(unaffected_demand(line, CostAssignment{fin(0), fin(0), fin(0), fin(0)}, d3, BudgetPolicy(1.0)) ==
        doctest::Approx(1.0));

  // Only the weighted pair matters.
  DemandMatrix one(3, 0.0);
  one.set(0, 2, 5.0);
  CHECK(unaffected_demand(line, CostAssignment{fin(0), fin(0), fin(0), fin(0)}, one, BudgetPolicy(1.0)) == 1.0);
  CHECK(unaffected_demand(line, CostAssignment{fin(2), fin(0), fin(0), fin(0)}, one, BudgetPolicy(1.0)) == 0.0);

  CHECK_THROWS_AS(unaffected_demand(line, CostAssignment(4, fin(0)), DemandMatrix(3, 0.0), BudgetPolicy(1.0)),
                  Error);
}
