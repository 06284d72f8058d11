#pragma once

// Manufactures orthoscalar representations for a prescribed dimension vector
// and character by alternating normalization of row strips and column strips
// to scaled partial isometries.

#include <cstdint>
#include <optional>
#include <vector>

#include "orthoscalar/quiver.hpp"
#include "orthoscalar/representation.hpp"
#include "orthoscalar/subspaces.hpp"

namespace orthoscalar {

struct SynthesisOptions {
  std::size_t max_iterations = 10000;
  double residual_target = 1e-9;
  std::uint64_t seed = 0;
};

/// Non-convergence is a value: `converged` is false and `representation` is
/// the best iterate seen.
struct SynthesisResult {
  Representation representation;
  bool converged = false;
  double residual = 0.0;  // best residual, max over vertices of ||G_v - chi_v I|| / (1 + chi_v)
  std::size_t iterations = 0;
};

/// max over support vertices of ||G_v - chi_v I|| / (1 + chi_v) against the
/// requested character.
double synthesis_residual(const Representation& rep, const Character& chi);

/// Preconditions, checked in order: separated single quiver
/// (unsupported-shape), balance (infeasible-balance), and every vertex no
/// larger than the sum over its neighbours (infeasible-dims).
SynthesisResult synthesize(const Quiver& quiver, const DimensionVector& dims, const Character& chi,
                           const SynthesisOptions& opts = {}, const TolerancePolicy& tol = {});

struct ProjectionSynthesisResult {
  std::optional<ProjectionSystem> system;  // present when converged
  SynthesisResult synthesis;
};

/// Star-quiver synthesis followed by F. chi_0 = 1 and, unless given,
/// chi_i = ambient_dim / sum(leaf_dims) for every leaf.
ProjectionSynthesisResult synthesize_projection_system(std::size_t n, std::size_t ambient_dim,
                                                       const std::vector<std::size_t>& leaf_dims, std::uint64_t seed,
                                                       std::optional<std::vector<double>> leaf_chi = std::nullopt,
                                                       const SynthesisOptions& opts = {},
                                                       const TolerancePolicy& tol = {});

}  // namespace orthoscalar
