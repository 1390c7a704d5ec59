#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "survrel/twin.hpp"

namespace testdata {

inline std::string path(const std::string& name) { return std::string(SURVREL_DATA_DIR) + "/" + name; }

inline std::string read(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline survrel::TwinDocument demo_twin() { return survrel::parse_twin(read(path("demo_building.twin.json"))); }

inline survrel::SurveillanceNetwork demo_network() { return survrel::extract_network(demo_twin()); }

}  // namespace testdata
