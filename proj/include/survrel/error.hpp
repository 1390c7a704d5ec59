#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace survrel {

enum class ErrorCode {
  duplicate_node,
  unknown_endpoint,
  invalid_attribute,
  self_loop,
  invalid_size,
  unknown_node,
  zero_total_demand,
  invalid_config,
  parse_error,
  schema_error,
  dangling_reference,
  range_error,
};

std::string_view to_string(ErrorCode code);

// Carries an optional JSON pointer (e.g. "/assets/2/availability") so that
// front ends can anchor the diagnostic to a location in the input document.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string pointer = {})
      : std::runtime_error(message), code_(code), pointer_(std::move(pointer)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  ErrorCode code_;
  std::string pointer_;
};

}  // namespace survrel
