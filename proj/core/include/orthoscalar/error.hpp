#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orthoscalar {

enum class ErrorCode {
  invalid_input,
  singular_input,
  unsupported_shape,
  inconsistent_input,
  numerical_degeneracy,
  // rescaling instances
  precondition_zero_line,
  precondition_lengths,
  precondition_relation,
  rigidity_violation,
  stage_failure,
  // projection systems
  invalid_projection,
  infeasible,
  infeasible_sign,
  not_in_k,
  not_a_morphism,
  // synthesis
  infeasible_balance,
  infeasible_dims,
  // documents
  parse_error,
  version_error,
};

/// Stable kebab-case name, used in reports and CLI output.
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orthoscalar
