#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "orthoscalar/numeric.hpp"
#include "orthoscalar/random.hpp"
#include "orthoscalar/representation.hpp"

namespace orthoscalar {

/// plain: C_head T_a = T~_a C_tail for every arrow.
/// star:  additionally C_tail T_a^* = T~_a^* C_head.
enum class Category { plain, star };

std::string_view to_string(Category category);

/// One linear map per vertex, maps[v] of shape target.dim(v) x source.dim(v).
/// On a separated quiver the odd-vertex maps form the block-diagonal A and the
/// even-vertex maps the block-diagonal B, so that A T = T~ B.
struct Morphism {
  std::vector<Matrix> maps;

  Morphism adjoint() const;
  double norm() const;
};

Morphism identity_morphism(const Representation& rep);
Morphism scaled(const Morphism& c, Complex factor);
Morphism operator+(const Morphism& a, const Morphism& b);

struct HomSpace {
  Representation source;
  Representation target;
  Category category = Category::plain;
  std::vector<Morphism> basis;  // orthonormal under the entrywise inner product

  std::size_t dimension() const { return basis.size(); }
};

/// The stacked homogeneous system whose kernel is Hom(source, target) in the
/// given category, acting on the column-major vectorizations of the vertex
/// maps laid out vertex by vertex.
Matrix intertwiner_system(const Representation& source, const Representation& target, Category category);

HomSpace hom_space(const Representation& source, const Representation& target, Category category,
                   const TolerancePolicy& tol = {});

/// Largest defining-equation defect, relative to 1 + |C| * max|T_a|.
double hom_residual(const Morphism& c, const Representation& source, const Representation& target,
                    Category category);

/// Random complex Gaussian combination of the basis.
Morphism random_element(const HomSpace& space, Rng& rng);

/// End(T) is one-dimensional. When it is, the spanning element is checked to
/// be a common scalar at every vertex; a non-scalar spanning element throws
/// numerical-degeneracy.
bool is_schur(const Representation& rep, Category category, const TolerancePolicy& tol = {});

/// In the star category End(T) is a finite-dimensional C*-algebra, so T is
/// indecomposable exactly when it is Schur.
bool is_indecomposable_star(const Representation& rep, const TolerancePolicy& tol = {});

/// Vertexwise conjugate transpose of a star morphism source -> target. Throws
/// inconsistent-input if the result is not a star morphism target -> source.
Morphism adjoint(const Morphism& c, const Representation& source, const Representation& target,
                 const TolerancePolicy& tol = {});

struct DecompositionResult {
  std::vector<Representation> summands;
  /// isometries[s][v]: column-orthonormal embedding of summand s at vertex v,
  /// of shape rep.dim(v) x summands[s].dim(v).
  std::vector<std::vector<Matrix>> isometries;
  /// max_v ||[E_1 ... E_k]^* [E_1 ... E_k] - I||
  double orthogonality_residual = 0.0;
  /// max_a ||U_head^* T_a U_tail - (S_1 + ... + S_k)_a|| / (1 + ||T_a||)
  double reassembly_residual = 0.0;
};

/// Splits T into star-indecomposable summands by spectral projections of a
/// random self-adjoint element of End_star(T), recursively. Throws
/// numerical-degeneracy if a non-Schur piece cannot be split after 8 draws.
DecompositionResult decompose(const Representation& rep, std::uint64_t seed, const TolerancePolicy& tol = {});

enum class EquivalenceStatus { equivalent, not_equivalent, equivalent_without_witness };

struct EquivalenceResult {
  EquivalenceStatus status = EquivalenceStatus::not_equivalent;
  /// Per-vertex unitaries U with T~_a = U_head T_a U_tail^*.
  std::optional<std::vector<Matrix>> witness;
  double witness_residual = 0.0;

  bool equivalent() const { return status != EquivalenceStatus::not_equivalent; }
};

/// Unitary equivalence test. Samples invertible star morphisms and takes
/// their unitary polar factors as the witness.
EquivalenceResult are_equivalent_star(const Representation& a, const Representation& b, std::uint64_t seed,
                                      const TolerancePolicy& tol = {});

/// max_a ||U_head T_a - T~_a U_tail|| / (1 + ||T_a||).
double unitary_equivalence_residual(const Representation& a, const Representation& b,
                                    const std::vector<Matrix>& unitaries);

}  // namespace orthoscalar
