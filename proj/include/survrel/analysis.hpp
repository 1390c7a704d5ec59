#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "survrel/cost.hpp"
#include "survrel/network.hpp"

namespace survrel {

// `points` evenly spaced values from 0 to 1 inclusive.
std::vector<double> uniform_grid(std::size_t points);

struct AnalysisConfig {
  std::vector<double> rho_grid = uniform_grid(101);
  std::size_t replicates = 200;
  std::uint64_t seed = 0;
  CostModel model = CostModel::failure_access_faults;
  BudgetPolicy budgets{1.0};
  // Default budgets to sweep; overrides in `budgets` stay in force.
  std::vector<double> budget_sweep;
  // 0 picks RELIABILITY_THREADS, else the hardware concurrency. Results do
  // not depend on this value.
  unsigned workers = 0;
};

// Throws Error(invalid_config).
void validate(const AnalysisConfig& config);

unsigned resolve_workers(unsigned requested);

struct UdEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct UdPoint {
  double rho = 0.0;
  double mean = 0.0;
  double std_error = 0.0;

  friend bool operator==(const UdPoint&, const UdPoint&) = default;
};

struct SweepPoint {
  double budget = 0.0;
  double alpha = 0.0;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

struct ReliabilityReport {
  CostModel model = CostModel::failure_access_faults;
  std::uint64_t seed = 0;
  std::size_t replicates = 0;
  double budget = 1.0;
  std::vector<UdPoint> ud_curve;
  double alpha = 0.0;
  // One entry per budget when the config asks for a sweep.
  std::vector<SweepPoint> sweep;

  friend bool operator==(const ReliabilityReport&, const ReliabilityReport&) = default;
};

// Trapezoidal area under y(x).
double trapezoid(std::span<const double> x, std::span<const double> y);

// Mean and standard error of UD at one rho over the configured replicates.
UdEstimate expected_ud(const SurveillanceNetwork& network, const DemandMatrix& demand,
                       const AnalysisConfig& config, double rho);

// UD curve over the rho grid and its integral, the reliability index alpha.
ReliabilityReport compute_alpha(const SurveillanceNetwork& network, const DemandMatrix& demand,
                                const AnalysisConfig& config);

// Alpha per swept budget. Every budget sees the same failure samples, so
// alpha is exactly non-decreasing in the budget.
std::vector<SweepPoint> budget_sweep(const SurveillanceNetwork& network, const DemandMatrix& demand,
                                     const AnalysisConfig& config);

struct EdgeCriticality {
  PairIndex pair = 0;
  std::string label;
  double budget = 0.0;
  double alpha_base = 0.0;
  double alpha_without = 0.0;
  double delta = 0.0;  // alpha_without - alpha_base
};

// For each physical link and each budget (the sweep list, or the default
// budget), the change in alpha when the link's sensors reveal nothing.
// Ordered by pair, then budget.
std::vector<EdgeCriticality> edge_criticality(const SurveillanceNetwork& network, const DemandMatrix& demand,
                                              const AnalysisConfig& config);

// UD of a single replicate, indexed [policy][rho]. For models where raising
// rho only closes links each row is non-increasing.
std::vector<std::vector<double>> replicate_ud_curves(const SurveillanceNetwork& network,
                                                     const DemandMatrix& demand, CostModel model,
                                                     std::span<const double> rho_grid,
                                                     std::span<const BudgetPolicy> policies,
                                                     std::uint64_t seed, std::uint64_t replicate);

}  // namespace survrel
