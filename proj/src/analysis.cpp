#include "survrel/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "survrel/error.hpp"
#include "survrel/paths.hpp"
#include "survrel/sampling.hpp"

namespace survrel {

std::vector<double> uniform_grid(std::size_t points) {
  if (points < 2) throw Error(ErrorCode::invalid_config, "rho grid needs at least 2 points");
  std::vector<double> grid(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = static_cast<double>(i) / last;
  return grid;
}

void validate(const AnalysisConfig& config) {
  const auto& g = config.rho_grid;
  if (g.size() < 2 || g.front() != 0.0 || g.back() != 1.0) {
    throw Error(ErrorCode::invalid_config, "rho grid must start at 0, end at 1 and hold at least 2 points");
  }
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (!(g[i] > g[i - 1])) throw Error(ErrorCode::invalid_config, "rho grid must be strictly increasing");
  }
  if (config.replicates < 1) throw Error(ErrorCode::invalid_config, "replicates must be >= 1");
  for (double b : config.budget_sweep) {
    if (!(b > 0.0)) throw Error(ErrorCode::invalid_config, "swept budgets must be > 0");
  }
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RELIABILITY_THREADS")) {
    unsigned value = 0;
    const char* end = env + std::char_traits<char>::length(env);
    if (auto [ptr, ec] = std::from_chars(env, end, value); ec == std::errc() && ptr == end && value > 0) {
      return value;
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  double area = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) area += (x[i] - x[i - 1]) * (y[i] + y[i - 1]) * 0.5;
  return area;
}

std::vector<std::vector<double>> replicate_ud_curves(const SurveillanceNetwork& network,
                                                     const DemandMatrix& demand, CostModel model,
                                                     std::span<const double> rho_grid,
                                                     std::span<const BudgetPolicy> policies,
                                                     std::uint64_t seed, std::uint64_t replicate) {
  const FailureSample sample =
      is_deterministic(model) ? FailureSample{} : draw_sample(network, seed, replicate);
  std::vector<std::vector<double>> curves(policies.size(), std::vector<double>(rho_grid.size()));
  for (std::size_t i = 0; i < rho_grid.size(); ++i) {
    const CostAssignment costs = assign_costs(network, model, rho_grid[i], sample);
    const std::vector<Cost> min_costs = all_pairs_min_cost(network, costs);
    for (std::size_t p = 0; p < policies.size(); ++p) {
      curves[p][i] = unaffected_demand(min_costs, demand, policies[p]);
    }
  }
#ifndef NDEBUG
  if (closes_with_rho(model)) {
    for (const auto& curve : curves) assert(std::is_sorted(curve.rbegin(), curve.rend()));
  }
#endif
  return curves;
}

namespace {

// Running mean and variance, fed in replicate order.
struct Welford {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  double std_error() const {
    if (n < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
  }
};

// Estimates indexed [policy][rho].
using Estimates = std::vector<std::vector<Welford>>;

Estimates run_replicates(const SurveillanceNetwork& network, const DemandMatrix& demand,
                         const AnalysisConfig& config, std::span<const double> rho_grid,
                         std::span<const BudgetPolicy> policies) {
  if (demand.node_count() != network.node_count()) {
    throw Error(ErrorCode::invalid_attribute, "demand matrix size does not match the network");
  }
  if (!(demand.total() > 0.0)) {
    throw Error(ErrorCode::zero_total_demand, "demand has no positive weight between distinct nodes");
  }
  // A deterministic model gives the same curve for every replicate.
  const std::size_t replicates = is_deterministic(config.model) ? 1 : config.replicates;
  const unsigned workers = std::min<std::size_t>(resolve_workers(config.workers), replicates);

  Estimates est(policies.size(), std::vector<Welford>(rho_grid.size()));
  constexpr std::size_t kBatch = 256;
  std::vector<std::vector<std::vector<double>>> batch;

  for (std::size_t start = 0; start < replicates; start += kBatch) {
    const std::size_t count = std::min(kBatch, replicates - start);
    batch.assign(count, {});
    auto work = [&](std::size_t k) {
      batch[k] = replicate_ud_curves(network, demand, config.model, rho_grid, policies, config.seed, start + k);
    };
    if (workers <= 1) {
      for (std::size_t k = 0; k < count; ++k) work(k);
    } else {
      std::atomic<std::size_t> next{0};
      std::exception_ptr failure;
      std::atomic<bool> failed{false};
      {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
          pool.emplace_back([&] {
            for (std::size_t k; !failed && (k = next++) < count;) {
              try {
                work(k);
              } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
              }
            }
          });
        }
      }
      if (failure) std::rethrow_exception(failure);
    }
    for (const auto& curves : batch) {
      for (std::size_t p = 0; p < policies.size(); ++p)
        for (std::size_t i = 0; i < rho_grid.size(); ++i) est[p][i].add(curves[p][i]);
    }
  }
  return est;
}

double alpha_of(const std::vector<Welford>& curve, std::span<const double> rho_grid) {
  std::vector<double> means;
  means.reserve(curve.size());
  for (const Welford& w : curve) means.push_back(w.mean);
  return std::clamp(trapezoid(rho_grid, means), 0.0, 1.0);
}

std::vector<BudgetPolicy> sweep_policies(const AnalysisConfig& config) {
  std::vector<BudgetPolicy> policies;
  for (double b : config.budget_sweep) policies.push_back(config.budgets.with_default(b));
  return policies;
}

}  // namespace

UdEstimate expected_ud(const SurveillanceNetwork& network, const DemandMatrix& demand,
                       const AnalysisConfig& config, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw Error(ErrorCode::invalid_config, "rho must lie in [0, 1]");
  if (config.replicates < 1) throw Error(ErrorCode::invalid_config, "replicates must be >= 1");
  const double grid[] = {rho};
  const BudgetPolicy policies[] = {config.budgets};
  const Estimates est = run_replicates(network, demand, config, grid, policies);
  return {est[0][0].mean, est[0][0].std_error()};
}

ReliabilityReport compute_alpha(const SurveillanceNetwork& network, const DemandMatrix& demand,
                                const AnalysisConfig& config) {
  validate(config);
  std::vector<BudgetPolicy> policies{config.budgets};
  for (BudgetPolicy& p : sweep_policies(config)) policies.push_back(std::move(p));
  const Estimates est = run_replicates(network, demand, config, config.rho_grid, policies);

  ReliabilityReport report;
  report.model = config.model;
  report.seed = config.seed;
  report.replicates = config.replicates;
  report.budget = config.budgets.default_budget();
  for (std::size_t i = 0; i < config.rho_grid.size(); ++i) {
    report.ud_curve.push_back({config.rho_grid[i], est[0][i].mean, est[0][i].std_error()});
  }
  report.alpha = alpha_of(est[0], config.rho_grid);
  for (std::size_t k = 0; k < config.budget_sweep.size(); ++k) {
    report.sweep.push_back({config.budget_sweep[k], alpha_of(est[k + 1], config.rho_grid)});
  }
  return report;
}

std::vector<SweepPoint> budget_sweep(const SurveillanceNetwork& network, const DemandMatrix& demand,
                                     const AnalysisConfig& config) {
  validate(config);
  if (config.budget_sweep.empty()) throw Error(ErrorCode::invalid_config, "budget sweep list is empty");
  const std::vector<BudgetPolicy> policies = sweep_policies(config);
  const Estimates est = run_replicates(network, demand, config, config.rho_grid, policies);
  std::vector<SweepPoint> out;
  for (std::size_t k = 0; k < policies.size(); ++k) {
    out.push_back({config.budget_sweep[k], alpha_of(est[k], config.rho_grid)});
  }
  return out;
}

std::vector<EdgeCriticality> edge_criticality(const SurveillanceNetwork& network, const DemandMatrix& demand,
                                              const AnalysisConfig& config) {
  validate(config);
  std::vector<BudgetPolicy> policies = sweep_policies(config);
  if (policies.empty()) policies.push_back(config.budgets);

  auto alphas = [&](const SurveillanceNetwork& net) {
    const Estimates est = run_replicates(net, demand, config, config.rho_grid, policies);
    std::vector<double> out;
    for (const auto& curve : est) out.push_back(alpha_of(curve, config.rho_grid));
    return out;
  };
  const std::vector<double> base = alphas(network);

  std::vector<bool> monitored(network.pair_count(), false);
  for (const Edge& e : network.edges()) {
    if (e.monitor_bits > 0.0) monitored[e.pair] = true;
  }

  std::vector<EdgeCriticality> out;
  for (PairIndex pair = 0; pair < network.pair_count(); ++pair) {
    // Zeroing an unmonitored link changes nothing.
    const std::vector<double> without = monitored[pair] ? alphas(network.without_monitoring(pair)) : base;
    for (std::size_t k = 0; k < policies.size(); ++k) {
      out.push_back({pair, network.pair_labels()[pair], policies[k].default_budget(), base[k], without[k],
                     without[k] - base[k]});
    }
  }
  return out;
}

}  // namespace survrel
