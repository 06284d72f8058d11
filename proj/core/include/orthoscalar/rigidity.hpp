#pragma once

// Rescaling rigidity: if A Z = W B with positive diagonal A, B and Z, W have
// no zero rows or columns and equal corresponding row and column lengths,
// then Z = W. lemma1_certify replays the inductive argument entry by entry and
// records every matched scalar; theorem1_trace runs the full reduction of a
// plain endomorphism of an orthoscalar representation to scalars.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orthoscalar/morphisms.hpp"
#include "orthoscalar/numeric.hpp"
#include "orthoscalar/representation.hpp"

namespace orthoscalar {

struct RescalingInstance {
  Matrix z;
  Matrix w;
  RealVector a;  // one positive scalar per row
  RealVector b;  // one positive scalar per column
};

/// Checks shapes, positivity, then in order: no zero line
/// (precondition-zero-line), equal row/column lengths (precondition-lengths),
/// and diag(a) Z = W diag(b) (precondition-relation). Returns the instance.
const RescalingInstance& check_instance(const RescalingInstance& inst, const TolerancePolicy& tol = {});

enum class StepRule {
  single_row,     // m = 1: every entry of the row matches the row scalar
  single_column,  // n = 1
  one_per_line,   // K = max(m, n): each longer-side line holds one entry
  inductive,      // smallest scalar row (or column) against its first partner
};

std::string_view to_string(StepRule rule);

struct CertificateStep {
  std::size_t row = 0;  // original indices
  std::size_t col = 0;
  double a = 0.0;
  double b = 0.0;
  Complex z;
  Complex w;
  // State (m, n, K) before the entry was removed.
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  StepRule rule = StepRule::inductive;
};

struct RigidityCertificate {
  std::vector<CertificateStep> steps;
  std::size_t nonzero_count = 0;
  double max_scalar_deviation = 0.0;  // max |a_i - b_j| over steps
  double max_entry_deviation = 0.0;   // max |z_ij - w_ij| over the whole matrices
  bool equal = false;                 // Z = W within residual_abs_tol
};

/// Matched scalars must agree within sqrt(rank_rel_tol) relative; otherwise
/// throws rigidity-violation. Entries below residual_abs_tol * max|entry| are
/// treated as zero.
RigidityCertificate lemma1_certify(const RescalingInstance& inst, const TolerancePolicy& tol = {});

/// (m1, n1, k1) < (m2, n2, k2) in the order used by the induction.
bool triple_less(std::size_t m1, std::size_t n1, std::size_t k1, std::size_t m2, std::size_t n2, std::size_t k2);

struct TraceStage {
  std::string id;
  std::string identity;
  double residual = 0.0;
};

struct TraceReport {
  std::vector<TraceStage> stages;
  Complex shift = 0.0;  // scalar added to A and B to make them invertible
  RigidityCertificate certificate;
  std::size_t star_end_dimension = 0;
  bool unitary_scalar = false;
  bool positive_scalar = false;
  bool verdict_scalar = false;
  Complex scalar = 0.0;  // A = B = scalar * I when verdict_scalar
  double max_residual = 0.0;
};

/// Replays the reduction A = XU, B = VY, X = U1^* X~ U1, Y = V1 Y~ V1^*,
/// X~ (U1 U T V1) = (U1 T V V1) Y~, rigidity, UT = TV, then XT = TY. `endo`
/// must be a plain endomorphism of the orthoscalar `rep` on a separated single
/// quiver (invalid-input otherwise). A stage whose residual exceeds
/// sqrt(rank_rel_tol) throws stage-failure naming the stage.
TraceReport theorem1_trace(const Representation& rep, const Morphism& endo, std::uint64_t seed,
                           const TolerancePolicy& tol = {});

struct Remark6Report {
  Representation rep;
  Matrix gram_sum;           // T T^* + T^* T
  double gram_residual = 0.0;  // ||T T^* + T^* T - 3 I||
  Matrix endo;               // [[3,1],[0,1]]
  Matrix endo_times_t;
  Matrix t_times_endo;
  std::size_t plain_end_dimension = 0;
  std::size_t star_end_dimension = 0;
  double span_residual = 0.0;  // distance of endo / |endo| from the plain End span
  bool endo_invertible = false;
  bool endo_scalar = true;
  bool holds = false;  // every claim checked above
};

/// The loop counterexample: orthoscalar and star-indecomposable, yet with a
/// non-scalar invertible plain endomorphism.
Remark6Report remark6_demo(const TolerancePolicy& tol = {});

}  // namespace orthoscalar
