#pragma once

// Systems of n orthogonal projections in one Hilbert space, and the
// equivalence between them and representations of the star quiver whose leaf
// maps are scaled isometries.

#include <cstdint>
#include <optional>
#include <vector>

#include "orthoscalar/morphisms.hpp"
#include "orthoscalar/numeric.hpp"
#include "orthoscalar/representation.hpp"

namespace orthoscalar {

struct ProjectionSystem {
  std::size_t ambient_dim = 0;
  std::vector<Matrix> projections;
  /// Positive alpha with sum alpha_i P_i = I, when the system is orthoscalar.
  std::optional<std::vector<double>> weights;
  /// Leaf Gram scalars T(g_i)^* T(g_i) = s_i I of the representation the
  /// system came from. Lets the inverse functor restore the original scale.
  std::optional<std::vector<double>> leaf_scales;

  std::size_t size() const { return projections.size(); }
};

struct SystemReport {
  std::vector<double> idempotency_residuals;    // ||P^2 - P||
  std::vector<double> self_adjoint_residuals;   // ||P - P^*||
  std::vector<std::size_t> subspace_dims;       // numerical ranks
  std::optional<double> weight_residual;        // ||sum alpha P - I||, when weighted
};

/// Throws invalid-projection (naming the index) when a projection is off by
/// more than residual_abs_tol * (1 + |P|), invalid-input on shape errors, and
/// infeasible when attached weights miss the identity by more than
/// rank_rel_tol * (1 + sqrt(dim)).
SystemReport validate_system(const ProjectionSystem& system, const TolerancePolicy& tol = {});

struct WeightSolution {
  std::vector<double> weights;
  double residual = 0.0;
  /// false when the vectorized projections are linearly dependent, so the
  /// returned weights are the minimum-norm choice among many.
  bool unique = true;
};

/// Real least squares for sum alpha_i P_i = I. Throws infeasible when the
/// residual exceeds rank_rel_tol * (1 + sqrt(dim)) and infeasible-sign when
/// some alpha_i <= 0.
WeightSolution solve_weights(const ProjectionSystem& system, const TolerancePolicy& tol = {});

/// Copy of `system` with weights attached, or the solver's error.
ProjectionSystem with_weights(const ProjectionSystem& system, const TolerancePolicy& tol = {});

/// Column-orthonormal Gamma with Gamma Gamma^* = P, from the SVD of P.
Matrix embedding_of(const Matrix& projection);

/// Checks that `rep` lives on a star quiver (one odd centre, every arrow a
/// distinct even leaf -> centre) and returns the arrow order as leaf order.
/// Throws unsupported-shape otherwise.
void require_star_shape(const Representation& rep);

/// F: leaf maps are normalized to isometries Gamma_i (the unitary polar factor
/// of T(g_i)) and P_i = Gamma_i Gamma_i^*. Throws not-in-K when some leaf Gram
/// is not a nonzero scalar within rank_rel_tol. If the centre is orthoscalar
/// with character chi_0, weights s_i / chi_0 are attached.
ProjectionSystem functor_F(const Representation& rep, const TolerancePolicy& tol = {});

/// G: T(g_i) = sqrt(c_i) Gamma_i with c = leaf_scales when present, else the
/// weights. Throws invalid-input when neither is available.
Representation functor_G(const ProjectionSystem& system, const TolerancePolicy& tol = {});

struct ProjectionHomSpace {
  std::vector<Matrix> basis;  // maps C_0: H_0 -> H~_0, orthonormal

  std::size_t dimension() const { return basis.size(); }
};

/// Maps with C_0 P_i = P~_i C_0 P_i for every i.
ProjectionHomSpace hom_space_P(const ProjectionSystem& source, const ProjectionSystem& target,
                               const TolerancePolicy& tol = {});

/// max_i ||C_0 P_i - P~_i C_0 P_i|| / (1 + |C_0|).
double projection_hom_residual(const Matrix& c0, const ProjectionSystem& source, const ProjectionSystem& target);

/// Lifts C_0 to the star-quiver morphism G(S) -> G(S~) with
/// C_i = sqrt(c_i / c~_i) Gamma~_i^* C_0 Gamma_i. Throws not-a-morphism when
/// C_0 violates the projection relations.
Morphism transport_morphism(const Matrix& c0, const ProjectionSystem& source, const ProjectionSystem& target,
                            const TolerancePolicy& tol = {});

struct Theorem2Report {
  std::size_t orthoscalar_end_dimension = 0;  // End of G(S) in the star category
  std::size_t subspace_end_dimension = 0;     // End of S under the projection relations
  bool indecomposable = false;
  bool holds = false;  // indecomposable implies subspace_end_dimension == 1
};

Theorem2Report theorem2_verify(const ProjectionSystem& system, const TolerancePolicy& tol = {});

}  // namespace orthoscalar
