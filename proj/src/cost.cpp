#include "survrel/cost.hpp"

namespace survrel {

std::string_view to_string(CostModel model) {
  switch (model) {
    case CostModel::bernoulli: return "bernoulli";
    case CostModel::access: return "access";
    case CostModel::monitoring: return "monitoring";
    case CostModel::failure: return "failure";
    case CostModel::failure_access_faults: return "failure+access-faults";
  }
  return "unknown";
}

std::optional<CostModel> parse_cost_model(std::string_view text) {
  for (CostModel m : {CostModel::bernoulli, CostModel::access, CostModel::monitoring, CostModel::failure,
                      CostModel::failure_access_faults}) {
    if (text == to_string(m)) return m;
  }
  return std::nullopt;
}

namespace {

bool accessible(const Edge& edge, double rho, double z_access) {
  if (z_access < edge.access_failure_prob) return edge.access_failure_mode == FailureMode::fail_open;
  return edge.quality > rho;
}

// Bits revealed by an accessible edge given which sensors are down.
double revealed_bits(const Edge& edge, const FailureSample& sample) {
  if (edge.sensors.empty()) {
    return sample[edge.pair].z_sensor < edge.sensor_failure_prob ? 0.0 : edge.monitor_bits;
  }
  const auto z = sample.sensor_draws(edge.pair);
  double bits = 0.0;
  for (std::size_t k = 0; k < edge.sensors.size(); ++k) {
    if (!(z[k] < edge.sensors[k].failure_prob)) bits += edge.sensors[k].bits;
  }
  return bits;
}

}  // namespace

Cost failure_with_access_faults_cost(const Edge& edge, double rho, const PairDraws& draws) {
  if (!accessible(edge, rho, draws.z_access)) return Cost::infinite();
  return draws.z_sensor < edge.sensor_failure_prob ? Cost::finite(0.0) : Cost::finite(edge.monitor_bits);
}

Cost edge_cost(CostModel model, const Edge& edge, double rho, const FailureSample& sample) {
  switch (model) {
    case CostModel::bernoulli:
      return bernoulli_cost(sample[edge.pair].z_sensor, rho);
    case CostModel::access:
      return access_cost(edge.quality, rho);
    case CostModel::monitoring:
      return monitoring_cost(edge.quality, rho, edge.monitor_bits);
    case CostModel::failure:
      if (!(edge.quality > rho)) return Cost::infinite();
      return Cost::finite(revealed_bits(edge, sample));
    case CostModel::failure_access_faults:
      if (!accessible(edge, rho, sample[edge.pair].z_access)) return Cost::infinite();
      return Cost::finite(revealed_bits(edge, sample));
  }
  return Cost::infinite();
}

}  // namespace survrel
