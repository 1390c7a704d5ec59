#include "survrel/twin.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json_util.hpp"

namespace survrel {

using namespace detail;

std::string_view to_string(AssetKind kind) { return kind == AssetKind::camera ? "camera" : "access_reader"; }

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

void check_unique(std::set<std::string>& seen, const std::string& id, const std::string& ptr) {
  if (!seen.insert(id).second) throw Error(ErrorCode::schema_error, "duplicate id '" + id + "'", ptr + "/id");
}

}  // namespace

TwinDocument parse_twin(std::string_view text) {
  const json root = parse_json(text);
  require_object(root, "");
  if (auto schema = optional_string(root, "schema", ""); schema && *schema != twin_schema) {
    throw Error(ErrorCode::schema_error, "unsupported twin schema '" + *schema + "'", "/schema");
  }

  TwinDocument twin;
  std::set<std::string> ids;

  const json& spaces = require_array(root, "spaces", "");
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const std::string ptr = child("/spaces", i);
    require_object(spaces[i], ptr);
    Space s;
    s.id = require_string(spaces[i], "id", ptr);
    s.name = optional_string(spaces[i], "name", ptr).value_or(s.id);
    s.kind = optional_string(spaces[i], "kind", ptr).value_or("Space");
    check_unique(ids, s.id, ptr);
    twin.spaces.push_back(std::move(s));
  }
  std::set<std::string> space_ids;
  for (const Space& s : twin.spaces) space_ids.insert(s.id);

  const json& doors = require_array(root, "doors", "");
  for (std::size_t i = 0; i < doors.size(); ++i) {
    const std::string ptr = child("/doors", i);
    require_object(doors[i], ptr);
    Door d;
    d.id = require_string(doors[i], "id", ptr);
    d.from_space = require_string(doors[i], "from_space", ptr);
    d.to_space = require_string(doors[i], "to_space", ptr);
    d.one_way = bool_or(doors[i], "one_way", false, ptr);
    check_unique(ids, d.id, ptr);
    for (const auto& [key, ref] : {std::pair{"from_space", &d.from_space}, std::pair{"to_space", &d.to_space}}) {
      if (!space_ids.contains(*ref)) {
        throw Error(ErrorCode::dangling_reference, "door '" + d.id + "' references unknown space '" + *ref + "'",
                    child(ptr, key));
      }
    }
    if (d.from_space == d.to_space) {
      throw Error(ErrorCode::self_loop, "door '" + d.id + "' connects space '" + d.from_space + "' to itself",
                  ptr);
    }
    twin.doors.push_back(std::move(d));
  }
  std::set<std::string> door_ids;
  for (const Door& d : twin.doors) door_ids.insert(d.id);

  const json& assets = require_array(root, "assets", "");
  for (std::size_t i = 0; i < assets.size(); ++i) {
    const std::string ptr = child("/assets", i);
    const json& a = assets[i];
    require_object(a, ptr);
    Asset asset;
    asset.id = require_string(a, "id", ptr);
    check_unique(ids, asset.id, ptr);
    asset.serves_door = require_string(a, "serves_door", ptr);
    if (!door_ids.contains(asset.serves_door)) {
      throw Error(ErrorCode::dangling_reference,
                  "asset '" + asset.id + "' serves unknown door '" + asset.serves_door + "'",
                  child(ptr, "serves_door"));
    }
    const std::string kind = require_string(a, "kind", ptr);
    if (kind == "camera") {
      asset.kind = AssetKind::camera;
    } else if (kind == "access_reader") {
      asset.kind = AssetKind::access_reader;
    } else {
      throw Error(ErrorCode::schema_error, "unknown asset kind '" + kind + "'", child(ptr, "kind"));
    }
    asset.availability = number_or(a, "availability", 1.0, ptr);
    if (!is_probability(asset.availability)) {
      throw Error(ErrorCode::range_error, "asset '" + asset.id + "': availability must lie in [0, 1]",
                  child(ptr, "availability"));
    }
    asset.privacy_cost_bits = number_or(a, "privacy_cost_bits", 0.0, ptr);
    if (!std::isfinite(asset.privacy_cost_bits) || asset.privacy_cost_bits < 0.0) {
      throw Error(ErrorCode::range_error, "asset '" + asset.id + "': privacy_cost_bits must be >= 0",
                  child(ptr, "privacy_cost_bits"));
    }
    asset.access_level = number_or(a, "access_level", 1.0, ptr);
    if (!(asset.access_level > 0.0 && asset.access_level <= 1.0)) {
      throw Error(ErrorCode::range_error, "asset '" + asset.id + "': access_level must lie in (0, 1]",
                  child(ptr, "access_level"));
    }
    if (auto mode = optional_string(a, "failure_mode", ptr)) {
      auto parsed = parse_failure_mode(*mode);
      if (!parsed) {
        throw Error(ErrorCode::schema_error, "failure_mode must be 'failopen' or 'failclosed'",
                    child(ptr, "failure_mode"));
      }
      asset.failure_mode = *parsed;
    }
    twin.assets.push_back(std::move(asset));
  }
  return twin;
}

SurveillanceNetwork extract_network(const TwinDocument& twin, const ExtractionPolicy& policy) {
  std::vector<std::string> nodes;
  nodes.reserve(twin.spaces.size());
  for (const Space& s : twin.spaces) nodes.push_back(s.id);

  std::map<std::string, std::vector<const Asset*>> served;
  for (const Asset& a : twin.assets) served[a.serves_door].push_back(&a);

  std::vector<EdgeSpec> edges;
  for (const Door& door : twin.doors) {
    EdgeSpec fwd{.from = door.from_space, .to = door.to_space, .pair = door.id, .sensors = {}};

    // The most restrictive reader controls passage.
    const Asset* reader = nullptr;
    for (const Asset* a : served[door.id]) {
      if (a->kind == AssetKind::camera) {
        fwd.sensors.push_back({a->privacy_cost_bits, 1.0 - a->availability});
      } else if (!reader || a->access_level < reader->access_level) {
        reader = a;
      }
    }
    if (reader) {
      fwd.quality = reader->access_level;
      fwd.access_failure_prob = 1.0 - reader->availability;
      fwd.access_failure_mode = reader->failure_mode;
    }

    if (policy.reverse_traversal && !door.one_way) {
      EdgeSpec rev{.from = door.to_space, .to = door.from_space, .pair = door.id, .sensors = {}};
      if (policy.reverse_requires_access) {
        rev.quality = fwd.quality;
        rev.access_failure_prob = fwd.access_failure_prob;
        rev.access_failure_mode = fwd.access_failure_mode;
      }
      if (policy.sensors_bidirectional) rev.sensors = fwd.sensors;
      edges.push_back(std::move(fwd));
      edges.push_back(std::move(rev));
    } else {
      edges.push_back(std::move(fwd));
    }
  }
  return build_network(std::move(nodes), std::move(edges));
}

}  // namespace survrel
