#pragma once

#include <compare>
#include <limits>
#include <optional>
#include <string_view>

#include "survrel/network.hpp"
#include "survrel/sampling.hpp"

namespace survrel {

// Traversal cost in bits of entropy, or Infinite for a blocked link.
// Infinite is stored as IEEE +inf; it is never a large finite stand-in.
class Cost {
 public:
  constexpr Cost() = default;

  static constexpr Cost finite(double bits) { return Cost(bits); }
  static constexpr Cost infinite() { return Cost(std::numeric_limits<double>::infinity()); }

  constexpr bool is_finite() const { return bits_ != std::numeric_limits<double>::infinity(); }
  constexpr double bits() const { return bits_; }

  friend constexpr Cost operator+(Cost a, Cost b) { return Cost(a.bits_ + b.bits_); }
  friend constexpr bool operator==(Cost a, Cost b) { return a.bits_ == b.bits_; }
  friend constexpr std::weak_ordering operator<=>(Cost a, Cost b) {
    if (a.bits_ < b.bits_) return std::weak_ordering::less;
    if (b.bits_ < a.bits_) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }

 private:
  constexpr explicit Cost(double bits) : bits_(bits) {}
  double bits_ = 0.0;
};

// Open with probability rho: Finite(0) if z < rho.
constexpr Cost bernoulli_cost(double z, double rho) {
  return z < rho ? Cost::finite(0.0) : Cost::infinite();
}

// Passable only for link quality strictly above the intruder's restriction.
constexpr Cost access_cost(double quality, double rho) {
  return quality > rho ? Cost::finite(0.0) : Cost::infinite();
}

constexpr Cost monitoring_cost(double quality, double rho, double bits) {
  return quality > rho ? Cost::finite(bits) : Cost::infinite();
}

// A failed sensor (z < failure_prob) reveals nothing.
constexpr Cost failure_cost(double quality, double rho, double bits, double failure_prob, double z) {
  if (!(quality > rho)) return Cost::infinite();
  return z < failure_prob ? Cost::finite(0.0) : Cost::finite(bits);
}

// failure_cost plus a possibly faulty access reader. A reader that has
// failed open admits everyone, one that has failed closed admits no one.
Cost failure_with_access_faults_cost(const Edge& edge, double rho, const PairDraws& draws);

enum class CostModel { bernoulli, access, monitoring, failure, failure_access_faults };

std::string_view to_string(CostModel model);
// Accepts "bernoulli", "access", "monitoring", "failure", "failure+access-faults".
std::optional<CostModel> parse_cost_model(std::string_view text);

// True when the model never consumes random draws.
constexpr bool is_deterministic(CostModel model) {
  return model == CostModel::access || model == CostModel::monitoring;
}

// True when raising rho can only close links. Bernoulli runs the other way:
// there rho is the probability that a link is open.
constexpr bool closes_with_rho(CostModel model) { return model != CostModel::bernoulli; }

// Cost of one directed edge under a model. Multi-sensor edges sum the bits
// of the sensors that are working in this sample.
Cost edge_cost(CostModel model, const Edge& edge, double rho, const FailureSample& sample);

}  // namespace survrel
