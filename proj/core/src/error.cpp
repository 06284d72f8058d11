#include "orthoscalar/error.hpp"

namespace orthoscalar {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::singular_input: return "singular-input";
    case ErrorCode::unsupported_shape: return "unsupported-shape";
    case ErrorCode::inconsistent_input: return "inconsistent-input";
    case ErrorCode::numerical_degeneracy: return "numerical-degeneracy";
    case ErrorCode::precondition_zero_line: return "precondition-zero-line";
    case ErrorCode::precondition_lengths: return "precondition-lengths";
    case ErrorCode::precondition_relation: return "precondition-relation";
    case ErrorCode::rigidity_violation: return "rigidity-violation";
    case ErrorCode::stage_failure: return "stage-failure";
    case ErrorCode::invalid_projection: return "invalid-projection";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::infeasible_sign: return "infeasible-sign";
    case ErrorCode::not_in_k: return "not-in-K";
    case ErrorCode::not_a_morphism: return "not-a-morphism";
    case ErrorCode::infeasible_balance: return "infeasible-balance";
    case ErrorCode::infeasible_dims: return "infeasible-dims";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::version_error: return "version-error";
  }
  return "unknown";
}

}  // namespace orthoscalar
