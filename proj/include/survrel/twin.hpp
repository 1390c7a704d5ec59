#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "survrel/network.hpp"

namespace survrel {

inline constexpr std::string_view twin_schema = "surveillance-twin/1";

struct Space {
  std::string id;
  std::string name;
  std::string kind;
};

struct Door {
  std::string id;
  std::string from_space;
  std::string to_space;
  bool one_way = false;
};

enum class AssetKind { camera, access_reader };

std::string_view to_string(AssetKind kind);

struct Asset {
  std::string id;
  std::string serves_door;
  AssetKind kind = AssetKind::camera;
  double availability = 1.0;
  double privacy_cost_bits = 0.0;  // cameras
  double access_level = 1.0;       // readers, in (0, 1]
  FailureMode failure_mode = FailureMode::fail_closed;
};

struct TwinDocument {
  std::vector<Space> spaces;
  std::vector<Door> doors;
  std::vector<Asset> assets;
};

// Throws Error with parse_error, schema_error, dangling_reference or
// range_error; the error's pointer names the offending field.
TwinDocument parse_twin(std::string_view text);

struct ExtractionPolicy {
  // Doors not marked one_way can also be crossed backwards.
  bool reverse_traversal = true;
  // Backward crossings need the same card as forward ones (otherwise egress
  // is free, as for fire exits).
  bool reverse_requires_access = false;
  // Sensors see intruders crossing in either direction.
  bool sensors_bidirectional = true;
};

// One node per space and one or two directed edges per door, sharing the
// door id as their physical link. Throws the network validation errors.
SurveillanceNetwork extract_network(const TwinDocument& twin, const ExtractionPolicy& policy = {});

}  // namespace survrel
