#pragma once

// Field access on nlohmann::json with errors that carry a JSON pointer.

#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>

#include "survrel/error.hpp"

namespace survrel::detail {

using nlohmann::json;

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based; keep it in the pointer slot as "@<offset>".
    throw Error(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what(),
                "@" + std::to_string(e.byte == 0 ? 0 : e.byte - 1));
  }
}

inline std::string child(const std::string& ptr, std::string_view key) {
  std::string out = ptr + "/";
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}
inline std::string child(const std::string& ptr, std::size_t index) {
  return ptr + "/" + std::to_string(index);
}

inline const json& require_array(const json& obj, std::string_view key, const std::string& ptr) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_array()) {
    throw Error(ErrorCode::schema_error, "'" + std::string(key) + "' must be an array", child(ptr, key));
  }
  return *it;
}

inline void require_object(const json& value, const std::string& ptr) {
  if (!value.is_object()) throw Error(ErrorCode::schema_error, "expected an object", ptr.empty() ? "" : ptr);
}

inline std::string require_string(const json& obj, std::string_view key, const std::string& ptr) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorCode::schema_error, "missing field '" + std::string(key) + "'", ptr);
  }
  if (!it->is_string()) {
    throw Error(ErrorCode::schema_error, "'" + std::string(key) + "' must be a string", child(ptr, key));
  }
  return it->get<std::string>();
}

inline std::optional<std::string> optional_string(const json& obj, std::string_view key, const std::string& ptr) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  if (!it->is_string()) {
    throw Error(ErrorCode::schema_error, "'" + std::string(key) + "' must be a string", child(ptr, key));
  }
  return it->get<std::string>();
}

inline double number_or(const json& obj, std::string_view key, double fallback, const std::string& ptr) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) {
    throw Error(ErrorCode::schema_error, "'" + std::string(key) + "' must be a number", child(ptr, key));
  }
  return it->get<double>();
}

inline bool bool_or(const json& obj, std::string_view key, bool fallback, const std::string& ptr) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) {
    throw Error(ErrorCode::schema_error, "'" + std::string(key) + "' must be a boolean", child(ptr, key));
  }
  return it->get<bool>();
}

}  // namespace survrel::detail
