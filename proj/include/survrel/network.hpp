#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace survrel {

using NodeIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;
// A pair index identifies one physical link (a door). Both directed edges of
// a door share it, and with it their random draws.
using PairIndex = std::uint32_t;

enum class FailureMode { fail_open, fail_closed };

std::string_view to_string(FailureMode mode);
std::optional<FailureMode> parse_failure_mode(std::string_view text);

// One monitoring device on a link. Used when a link carries several
// independently failing sensors; a single sensor is folded into the edge's
// scalar monitor_bits / sensor_failure_prob.
struct Sensor {
  double bits = 0.0;
  double failure_prob = 0.0;

  friend bool operator==(const Sensor&, const Sensor&) = default;
};

// Edge as supplied by a caller, endpoints by label.
struct EdgeSpec {
  std::string from;
  std::string to;
  double quality = 1.0;
  double monitor_bits = 0.0;
  double sensor_failure_prob = 0.0;
  double access_failure_prob = 0.0;
  FailureMode access_failure_mode = FailureMode::fail_closed;
  // Directed edges with the same pair label are the two directions of one
  // physical link. Unlabelled edges are their own physical link.
  std::optional<std::string> pair;
  // Two or more sensors; when present they determine monitor_bits and
  // sensor_failure_prob.
  std::vector<Sensor> sensors;
};

struct Edge {
  NodeIndex from = 0;
  NodeIndex to = 0;
  double quality = 1.0;
  double monitor_bits = 0.0;
  // For multi-sensor edges, the probability that every sensor is down.
  double sensor_failure_prob = 0.0;
  double access_failure_prob = 0.0;
  FailureMode access_failure_mode = FailureMode::fail_closed;
  PairIndex pair = 0;
  // Empty unless the edge carries two or more sensors.
  std::vector<Sensor> sensors;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Compressed outgoing-edge index.
struct Adjacency {
  std::vector<std::uint32_t> offsets;  // size node_count + 1
  std::vector<EdgeIndex> edges;

  friend bool operator==(const Adjacency&, const Adjacency&) = default;
};

Adjacency build_adjacency(std::size_t node_count, std::span<const Edge> edges);

// Immutable after construction; safe to share across threads.
class SurveillanceNetwork {
 public:
  SurveillanceNetwork() = default;

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t pair_count() const noexcept { return pair_labels_.size(); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(NodeIndex node) const { return labels_.at(node); }
  std::optional<NodeIndex> find(std::string_view label) const;
  // Throws Error(unknown_node).
  NodeIndex index_of(std::string_view label) const;

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  std::span<const EdgeIndex> out_edges(NodeIndex node) const;
  const Adjacency& adjacency() const noexcept { return adjacency_; }

  // Physical-link names, indexed by PairIndex.
  const std::vector<std::string>& pair_labels() const noexcept { return pair_labels_; }
  // Largest sensor count among the directed edges of each pair (at least 1).
  std::uint32_t sensors_on_pair(PairIndex pair) const { return pair_sensors_.at(pair); }

  // Copy with every sensor on one physical link zeroed (bits = 0).
  SurveillanceNetwork without_monitoring(PairIndex pair) const;

  friend bool operator==(const SurveillanceNetwork& a, const SurveillanceNetwork& b) {
    return a.labels_ == b.labels_ && a.edges_ == b.edges_ && a.pair_labels_ == b.pair_labels_;
  }

 private:
  friend SurveillanceNetwork build_network(std::vector<std::string>, std::vector<EdgeSpec>);

  std::vector<std::string> labels_;
  std::map<std::string, NodeIndex, std::less<>> index_;
  std::vector<Edge> edges_;
  Adjacency adjacency_;
  std::vector<std::string> pair_labels_;
  std::vector<std::uint32_t> pair_sensors_;
};

// Validates and indexes a network. Throws Error with duplicate_node,
// unknown_endpoint, invalid_attribute or self_loop.
SurveillanceNetwork build_network(std::vector<std::string> nodes, std::vector<EdgeSpec> edges);

// n x n square lattice with nodes "v_<row>_<col>" (1-based). Every bond is a
// physical link with two directed edges. Throws Error(invalid_size) if n < 2.
SurveillanceNetwork lattice_network(std::size_t n);

// Origin-destination demand weights. Self pairs (o == d) never count.
class DemandMatrix {
 public:
  DemandMatrix() = default;
  explicit DemandMatrix(std::size_t node_count, double default_weight = 1.0);

  std::size_t node_count() const noexcept { return n_; }
  double default_weight() const noexcept { return default_weight_; }
  double operator()(NodeIndex origin, NodeIndex destination) const {
    return weights_[static_cast<std::size_t>(origin) * n_ + destination];
  }
  void set(NodeIndex origin, NodeIndex destination, double weight);
  const std::map<std::pair<NodeIndex, NodeIndex>, double>& overrides() const noexcept {
    return overrides_;
  }
  // Sum of weights over o != d.
  double total() const;

  friend bool operator==(const DemandMatrix& a, const DemandMatrix& b) {
    return a.n_ == b.n_ && a.default_weight_ == b.default_weight_ && a.overrides_ == b.overrides_;
  }

 private:
  std::size_t n_ = 0;
  double default_weight_ = 1.0;
  std::vector<double> weights_;
  std::map<std::pair<NodeIndex, NodeIndex>, double> overrides_;
};

inline constexpr double unlimited_budget = std::numeric_limits<double>::infinity();

// Privacy budget per (origin, destination), in bits. Infinity is allowed.
class BudgetPolicy {
 public:
  explicit BudgetPolicy(double default_budget = 1.0);

  double default_budget() const noexcept { return default_; }
  double operator()(NodeIndex origin, NodeIndex destination) const;
  void set(NodeIndex origin, NodeIndex destination, double budget);
  const std::map<std::pair<NodeIndex, NodeIndex>, double>& overrides() const noexcept {
    return overrides_;
  }
  // Same overrides, different default.
  BudgetPolicy with_default(double default_budget) const;

  friend bool operator==(const BudgetPolicy&, const BudgetPolicy&) = default;

 private:
  double default_;
  std::map<std::pair<NodeIndex, NodeIndex>, double> overrides_;
};

// Everything a network file carries.
struct AnalysisInput {
  SurveillanceNetwork network;
  DemandMatrix demand;
  BudgetPolicy budgets;

  friend bool operator==(const AnalysisInput&, const AnalysisInput&) = default;
};

}  // namespace survrel
