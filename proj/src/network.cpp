#include "survrel/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "survrel/error.hpp"

namespace survrel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::duplicate_node: return "DuplicateNode";
    case ErrorCode::unknown_endpoint: return "UnknownEndpoint";
    case ErrorCode::invalid_attribute: return "InvalidAttribute";
    case ErrorCode::self_loop: return "SelfLoop";
    case ErrorCode::invalid_size: return "InvalidSize";
    case ErrorCode::unknown_node: return "UnknownNode";
    case ErrorCode::zero_total_demand: return "ZeroTotalDemand";
    case ErrorCode::invalid_config: return "InvalidConfig";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::schema_error: return "SchemaError";
    case ErrorCode::dangling_reference: return "DanglingReference";
    case ErrorCode::range_error: return "RangeError";
  }
  return "Error";
}

std::string_view to_string(FailureMode mode) {
  return mode == FailureMode::fail_open ? "failopen" : "failclosed";
}

std::optional<FailureMode> parse_failure_mode(std::string_view text) {
  if (text == "failopen") return FailureMode::fail_open;
  if (text == "failclosed") return FailureMode::fail_closed;
  return std::nullopt;
}

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

void check_edge_attributes(const EdgeSpec& spec, std::size_t i) {
  const std::string where = "edge " + std::to_string(i) + " (" + spec.from + " -> " + spec.to + ")";
  const std::string ptr = "/edges/" + std::to_string(i);
  if (!is_probability(spec.quality)) {
    throw Error(ErrorCode::invalid_attribute, where + ": quality must lie in [0, 1]", ptr + "/quality");
  }
  if (!std::isfinite(spec.monitor_bits) || spec.monitor_bits < 0.0) {
    throw Error(ErrorCode::invalid_attribute, where + ": monitor_bits must be >= 0",
                ptr + "/monitor_bits");
  }
  if (!is_probability(spec.sensor_failure_prob)) {
    throw Error(ErrorCode::invalid_attribute, where + ": sensor_failure_prob must lie in [0, 1]",
                ptr + "/sensor_failure_prob");
  }
  if (!is_probability(spec.access_failure_prob)) {
    throw Error(ErrorCode::invalid_attribute, where + ": access_failure_prob must lie in [0, 1]",
                ptr + "/access_failure_prob");
  }
  for (std::size_t k = 0; k < spec.sensors.size(); ++k) {
    const Sensor& s = spec.sensors[k];
    if (!std::isfinite(s.bits) || s.bits < 0.0 || !is_probability(s.failure_prob)) {
      throw Error(ErrorCode::invalid_attribute, where + ": sensor " + std::to_string(k) + " out of range",
                  ptr + "/sensors/" + std::to_string(k));
    }
  }
}

}  // namespace

Adjacency build_adjacency(std::size_t node_count, std::span<const Edge> edges) {
  Adjacency adj;
  adj.offsets.assign(node_count + 1, 0);
  for (const Edge& e : edges) ++adj.offsets[e.from + 1];
  for (std::size_t v = 0; v < node_count; ++v) adj.offsets[v + 1] += adj.offsets[v];
  adj.edges.resize(edges.size());
  std::vector<std::uint32_t> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
  for (EdgeIndex e = 0; e < edges.size(); ++e) adj.edges[cursor[edges[e].from]++] = e;
  return adj;
}

std::optional<NodeIndex> SurveillanceNetwork::find(std::string_view label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex SurveillanceNetwork::index_of(std::string_view label) const {
  if (auto idx = find(label)) return *idx;
  throw Error(ErrorCode::unknown_node, "unknown node '" + std::string(label) + "'");
}

std::span<const EdgeIndex> SurveillanceNetwork::out_edges(NodeIndex node) const {
  if (node >= node_count()) {
    throw Error(ErrorCode::unknown_node, "node index " + std::to_string(node) + " out of range");
  }
  const auto begin = adjacency_.offsets[node];
  const auto end = adjacency_.offsets[node + 1];
  return std::span<const EdgeIndex>(adjacency_.edges).subspan(begin, end - begin);
}

SurveillanceNetwork SurveillanceNetwork::without_monitoring(PairIndex pair) const {
  SurveillanceNetwork copy = *this;
  for (Edge& e : copy.edges_) {
    if (e.pair != pair) continue;
    e.monitor_bits = 0.0;
    for (Sensor& s : e.sensors) s.bits = 0.0;
  }
  return copy;
}

SurveillanceNetwork build_network(std::vector<std::string> nodes, std::vector<EdgeSpec> edges) {
  SurveillanceNetwork net;
  net.labels_ = std::move(nodes);
  for (NodeIndex i = 0; i < net.labels_.size(); ++i) {
    const auto [it, inserted] = net.index_.emplace(net.labels_[i], i);
    if (!inserted) {
      throw Error(ErrorCode::duplicate_node, "duplicate node '" + net.labels_[i] + "'",
                  "/nodes/" + std::to_string(i));
    }
  }

  std::map<std::string, PairIndex, std::less<>> pair_index;
  std::vector<std::vector<EdgeIndex>> pair_members;
  std::set<std::string, std::less<>> explicit_pairs;
  for (const EdgeSpec& spec : edges) {
    if (spec.pair) explicit_pairs.insert(*spec.pair);
  }

  net.edges_.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    EdgeSpec& spec = edges[i];
    const std::string ptr = "/edges/" + std::to_string(i);
    const auto from = net.find(spec.from);
    if (!from) {
      throw Error(ErrorCode::unknown_endpoint, "edge " + std::to_string(i) + " references unknown node '" +
                                                   spec.from + "'",
                  ptr + "/from");
    }
    const auto to = net.find(spec.to);
    if (!to) {
      throw Error(ErrorCode::unknown_endpoint, "edge " + std::to_string(i) + " references unknown node '" +
                                                   spec.to + "'",
                  ptr + "/to");
    }
    if (*from == *to) {
      throw Error(ErrorCode::self_loop, "edge " + std::to_string(i) + " is a self-loop on '" + spec.from + "'",
                  ptr);
    }
    check_edge_attributes(spec, i);

    Edge e;
    e.from = *from;
    e.to = *to;
    e.quality = spec.quality;
    e.access_failure_prob = spec.access_failure_prob;
    e.access_failure_mode = spec.access_failure_mode;
    if (spec.sensors.size() == 1) {
      e.monitor_bits = spec.sensors.front().bits;
      e.sensor_failure_prob = spec.sensors.front().failure_prob;
    } else if (spec.sensors.size() > 1) {
      e.sensors = std::move(spec.sensors);
      e.monitor_bits = 0.0;
      e.sensor_failure_prob = 1.0;
      for (const Sensor& s : e.sensors) {
        e.monitor_bits += s.bits;
        e.sensor_failure_prob *= s.failure_prob;
      }
    } else {
      e.monitor_bits = spec.monitor_bits;
      e.sensor_failure_prob = spec.sensor_failure_prob;
    }

    std::string label;
    if (spec.pair) {
      label = *spec.pair;
    } else {
      label = spec.from + "->" + spec.to;
      for (int k = 2; explicit_pairs.contains(label) || pair_index.contains(label); ++k) {
        label = spec.from + "->" + spec.to + "#" + std::to_string(k);
      }
    }
    auto [it, inserted] = pair_index.emplace(label, static_cast<PairIndex>(net.pair_labels_.size()));
    if (inserted) {
      net.pair_labels_.push_back(label);
      pair_members.emplace_back();
    }
    auto& members = pair_members[it->second];
    if (!members.empty()) {
      const Edge& other = net.edges_[members.front()];
      if (members.size() >= 2 || other.from != e.to || other.to != e.from) {
        throw Error(ErrorCode::invalid_attribute,
                    "pair '" + label + "' must hold at most two opposite directed edges", ptr + "/pair");
      }
    }
    e.pair = it->second;
    members.push_back(static_cast<EdgeIndex>(net.edges_.size()));
    net.edges_.push_back(std::move(e));
  }

  net.pair_sensors_.assign(net.pair_labels_.size(), 1);
  for (const Edge& e : net.edges_) {
    net.pair_sensors_[e.pair] =
        std::max<std::uint32_t>(net.pair_sensors_[e.pair], static_cast<std::uint32_t>(e.sensors.size()));
  }
  net.adjacency_ = build_adjacency(net.labels_.size(), net.edges_);
  return net;
}

SurveillanceNetwork lattice_network(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::invalid_size, "lattice size must be at least 2");
  auto name = [](std::size_t r, std::size_t c) {
    return "v_" + std::to_string(r + 1) + "_" + std::to_string(c + 1);
  };
  std::vector<std::string> nodes;
  nodes.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) nodes.push_back(name(r, c));

  std::vector<EdgeSpec> edges;
  edges.reserve(4 * n * (n - 1));
  auto bond = [&](std::size_t r0, std::size_t c0, std::size_t r1, std::size_t c1) {
    const std::string a = name(r0, c0);
    const std::string b = name(r1, c1);
    const std::string pair = "e_" + a.substr(2) + "-" + b.substr(2);
    EdgeSpec fwd{.from = a, .to = b, .pair = pair, .sensors = {}};
    EdgeSpec rev{.from = b, .to = a, .pair = pair, .sensors = {}};
    edges.push_back(std::move(fwd));
    edges.push_back(std::move(rev));
  };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c + 1 < n) bond(r, c, r, c + 1);
      if (r + 1 < n) bond(r, c, r + 1, c);
    }
  }
  return build_network(std::move(nodes), std::move(edges));
}

DemandMatrix::DemandMatrix(std::size_t node_count, double default_weight)
    : n_(node_count), default_weight_(default_weight), weights_(node_count * node_count, default_weight) {
  if (!std::isfinite(default_weight) || default_weight < 0.0) {
    throw Error(ErrorCode::invalid_attribute, "default demand weight must be finite and >= 0",
                "/default_weight");
  }
}

void DemandMatrix::set(NodeIndex origin, NodeIndex destination, double weight) {
  if (origin >= n_ || destination >= n_) {
    throw Error(ErrorCode::unknown_node, "demand pair references a node out of range");
  }
  if (!std::isfinite(weight) || weight < 0.0) {
    throw Error(ErrorCode::invalid_attribute, "demand weight must be finite and >= 0");
  }
  weights_[static_cast<std::size_t>(origin) * n_ + destination] = weight;
  overrides_[{origin, destination}] = weight;
}

double DemandMatrix::total() const {
  double sum = 0.0;
  for (std::size_t o = 0; o < n_; ++o)
    for (std::size_t d = 0; d < n_; ++d)
      if (o != d) sum += weights_[o * n_ + d];
  return sum;
}

namespace {

void check_budget(double b) {
  // NaN fails the comparison as well.
  if (!(b > 0.0)) throw Error(ErrorCode::invalid_attribute, "budgets must be > 0");
}

}  // namespace

BudgetPolicy::BudgetPolicy(double default_budget) : default_(default_budget) { check_budget(default_budget); }

double BudgetPolicy::operator()(NodeIndex origin, NodeIndex destination) const {
  if (overrides_.empty()) return default_;
  auto it = overrides_.find({origin, destination});
  return it == overrides_.end() ? default_ : it->second;
}

void BudgetPolicy::set(NodeIndex origin, NodeIndex destination, double budget) {
  check_budget(budget);
  overrides_[{origin, destination}] = budget;
}

BudgetPolicy BudgetPolicy::with_default(double default_budget) const {
  BudgetPolicy copy = *this;
  check_budget(default_budget);
  copy.default_ = default_budget;
  return copy;
}

}  // namespace survrel
