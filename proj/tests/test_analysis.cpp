#include <doctest.h>

#include <cmath>
#include <random>

#include "demo.hpp"
#include "oracles.hpp"
#include "survrel/analysis.hpp"
#include "survrel/error.hpp"

using namespace survrel;

namespace {

SurveillanceNetwork single_edge(double q, double m = 0.0, double f = 0.0) {
  return build_network({"A", "B"},
                       {{.from = "A", .to = "B", .quality = q, .monitor_bits = m, .sensor_failure_prob = f}});
}

DemandMatrix only(std::size_t n, NodeIndex o, NodeIndex d) {
  DemandMatrix dm(n, 0.0);
  dm.set(o, d, 1.0);
  return dm;
}

AnalysisConfig config_for(CostModel model, std::size_t replicates, double budget) {
  AnalysisConfig c;
  c.model = model;
  c.replicates = replicates;
  c.budgets = BudgetPolicy(budget);
  return c;
}

}  // namespace

TEST_CASE("grid and trapezoid") {
  const auto g = uniform_grid(101);
  REQUIRE(g.size() == 101);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[50] == 0.5);
  CHECK(trapezoid(g, std::vector<double>(101, 1.0)) == doctest::Approx(1.0));
  std::vector<double> y;
  for (double x : g) y.push_back(x);
  CHECK(trapezoid(g, y) == doctest::Approx(0.5));
}

TEST_CASE("config validation") {
  const auto net = single_edge(1.0);
  const DemandMatrix d(2);
  AnalysisConfig c;
  c.replicates = 0;
  CHECK_THROWS_AS(compute_alpha(net, d, c), Error);
  c = AnalysisConfig{};
  c.rho_grid = {0.0, 0.5, 0.4, 1.0};
  CHECK_THROWS_AS(compute_alpha(net, d, c), Error);
  c.rho_grid = {0.0, 1.5};
  CHECK_THROWS_AS(compute_alpha(net, d, c), Error);
  CHECK_THROWS_AS(compute_alpha(net, DemandMatrix(2, 0.0), AnalysisConfig{}), Error);
  CHECK_THROWS_AS(compute_alpha(net, DemandMatrix(3), AnalysisConfig{}), Error);
}

TEST_CASE("alpha of closed-form networks") {
  // Fully open link: UD is 1 except at rho = 1.
  auto c = config_for(CostModel::access, 1, 1.0);
  const auto open = single_edge(1.0);
  CHECK(compute_alpha(open, only(2, 0, 1), c).alpha == doctest::Approx(0.995));

  // No edges at all.
  const auto isolated = build_network({"A", "B"}, {});
  CHECK(compute_alpha(isolated, DemandMatrix(2), c).alpha == 0.0);

  // Step at q.
  c.rho_grid = uniform_grid(1001);
  const auto r = compute_alpha(single_edge(0.5), only(2, 0, 1), c);
  CHECK(std::abs(r.alpha - 0.5) <= 0.01);
  CHECK(r.ud_curve.size() == 1001);
  for (const auto& p : r.ud_curve) CHECK(p.std_error == 0.0);
}

TEST_CASE("expected UD against closed-form probabilities") {
  SUBCASE("bernoulli single edge") {
    const auto c = config_for(CostModel::bernoulli, 10000, 1.0);
    const auto e = expected_ud(single_edge(1.0), only(2, 0, 1), c, 0.5);
    CHECK(std::abs(e.mean - 0.5) <= 3 * e.std_error);
  }
  SUBCASE("failed camera is the only way through the budget") {
    const auto c = config_for(CostModel::failure, 10000, 5.0);
    const auto e = expected_ud(single_edge(1.0, 10.0, 0.25), only(2, 0, 1), c, 0.5);
    CHECK(e.std_error > 0.0);
    CHECK(std::abs(e.mean - 0.25) <= 3 * e.std_error);
  }
  SUBCASE("fail-open reader") {
    const auto net = build_network({"A", "B"}, {{.from = "A", .to = "B", .quality = 0.25,
                                                 .access_failure_prob = 0.4,
                                                 .access_failure_mode = FailureMode::fail_open}});
    const auto c = config_for(CostModel::failure_access_faults, 10000, 1.0);
    const auto e = expected_ud(net, only(2, 0, 1), c, 0.5);
    CHECK(std::abs(e.mean - 0.4) <= 3 * e.std_error);
  }
}

TEST_CASE("bernoulli lattice corner connection") {
  const auto net = lattice_network(2);
  const auto demand = only(4, net.index_of("v_1_1"), net.index_of("v_2_2"));
  const auto c = config_for(CostModel::bernoulli, 4000, 1.0);
  for (double rho : {0.25, 0.5, 0.75}) {
    const auto e = expected_ud(net, demand, c, rho);
    CHECK(std::abs(e.mean - oracle::lattice2_corner_connection(rho)) <= 3 * e.std_error);
  }
}

TEST_CASE("per-replicate UD never rises with rho") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<EdgeSpec> specs;
  const auto base = lattice_network(4);
  for (const Edge& e : base.edges()) {
    specs.push_back({.from = base.label(e.from), .to = base.label(e.to), .quality = u(rng),
                     .monitor_bits = std::floor(4 * u(rng)), .sensor_failure_prob = u(rng),
                     .access_failure_prob = 0.3 * u(rng),
                     .access_failure_mode = u(rng) < 0.5 ? FailureMode::fail_open : FailureMode::fail_closed,
                     .pair = base.pair_labels()[e.pair]});
  }
  const auto net = build_network(base.labels(), specs);
  const DemandMatrix demand(net.node_count());
  const auto grid = uniform_grid(51);
  const std::vector<BudgetPolicy> policies{BudgetPolicy(1.0), BudgetPolicy(3.0), BudgetPolicy(unlimited_budget)};
  for (CostModel m : {CostModel::access, CostModel::monitoring, CostModel::failure,
                      CostModel::failure_access_faults}) {
    for (std::uint64_t r = 0; r < 20; ++r) {
      const auto rows = replicate_ud_curves(net, demand, m, grid, policies, 8, r);
      for (std::size_t p = 0; p < rows.size(); ++p) {
        for (std::size_t i = 1; i < grid.size(); ++i) CHECK(rows[p][i] <= rows[p][i - 1]);
        if (p > 0) {
          for (std::size_t i = 0; i < grid.size(); ++i) CHECK(rows[p][i] >= rows[p - 1][i]);
        }
      }
    }
  }
}

TEST_CASE("budget sweep on the demo building") {
  const auto net = testdata::demo_network();
  const DemandMatrix demand(net.node_count());
  AnalysisConfig c;
  c.replicates = 100;
  c.budget_sweep = {1, 5, 9.9, 10, 10.5, 100, unlimited_budget};
  const auto sweep = budget_sweep(net, demand, c);
  REQUIRE(sweep.size() == 7);
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    CHECK(sweep[i].alpha >= 0.0);
    CHECK(sweep[i].alpha <= 1.0);
    if (i > 0) CHECK(sweep[i].alpha >= sweep[i - 1].alpha);
  }
  CHECK(sweep[4].alpha - sweep[2].alpha > 0.1);

  // The report carries the same sweep.
  const auto report = compute_alpha(net, demand, c);
  CHECK(report.sweep.size() == 7);
  CHECK(report.sweep[3].alpha == sweep[3].alpha);
}

TEST_CASE("results do not depend on the worker count") {
  const auto net = testdata::demo_network();
  const DemandMatrix demand(net.node_count());
  AnalysisConfig c;
  c.replicates = 600;
  c.budget_sweep = {5, 11};
  c.workers = 1;
  const auto one = compute_alpha(net, demand, c);
  c.workers = 4;
  const auto four = compute_alpha(net, demand, c);
  c.workers = 7;
  const auto seven = compute_alpha(net, demand, c);
  CHECK(one == four);
  CHECK(one == seven);
}

TEST_CASE("access alpha ignores monitoring and failure attributes") {
  const auto net = testdata::demo_network();
  const DemandMatrix demand(net.node_count());
  auto c = config_for(CostModel::access, 50, 1.0);
  const double a = compute_alpha(net, demand, c).alpha;
  std::vector<EdgeSpec> plain;
  for (const Edge& e : net.edges()) {
    plain.push_back({.from = net.label(e.from), .to = net.label(e.to), .quality = e.quality,
                     .pair = net.pair_labels()[e.pair]});
  }
  const auto stripped = build_network(net.labels(), plain);
  CHECK(compute_alpha(stripped, demand, c).alpha == a);
  c.budgets = BudgetPolicy(0.001);
  CHECK(compute_alpha(net, demand, c).alpha == a);
}

TEST_CASE("standard error shrinks with the square root of the replicate count") {
  const auto net = single_edge(1.0, 10.0, 0.5);
  const auto demand = only(2, 0, 1);
  double ratio2 = 0.0, ratio4 = 0.0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    auto c = config_for(CostModel::failure, 400, 5.0);
    c.seed = static_cast<std::uint64_t>(t);
    const double s1 = expected_ud(net, demand, c, 0.5).std_error;
    c.replicates = 800;
    const double s2 = expected_ud(net, demand, c, 0.5).std_error;
    c.replicates = 1600;
    const double s4 = expected_ud(net, demand, c, 0.5).std_error;
    ratio2 += s1 / s2;
    ratio4 += s1 / s4;
  }
  CHECK(ratio2 / trials == doctest::Approx(std::sqrt(2.0)).epsilon(0.3));
  CHECK(ratio4 / trials == doctest::Approx(2.0).epsilon(0.3));
}

TEST_CASE("edge criticality") {
  SUBCASE("a camera on the only route") {
    const auto net = single_edge(1.0, 10.0, 0.0);
    auto c = config_for(CostModel::failure, 1, 5.0);
    const auto rows = edge_criticality(net, only(2, 0, 1), c);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].alpha_base == 0.0);
    CHECK(rows[0].alpha_without == doctest::Approx(0.995));
    CHECK(rows[0].delta == doctest::Approx(0.995));
  }
  SUBCASE("an unmonitored link changes nothing") {
    const auto net = single_edge(1.0);
    const auto rows = edge_criticality(net, only(2, 0, 1), config_for(CostModel::failure, 10, 5.0));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].delta == 0.0);
  }
  SUBCASE("one row per link and budget") {
    const auto net = testdata::demo_network();
    AnalysisConfig c;
    c.replicates = 20;
    c.budget_sweep = {1, 11};
    const auto rows = edge_criticality(net, DemandMatrix(net.node_count()), c);
    CHECK(rows.size() == net.pair_count() * 2);
    for (const auto& r : rows) CHECK(r.delta >= -1e-12);
  }
}
