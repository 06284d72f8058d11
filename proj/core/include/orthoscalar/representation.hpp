#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "orthoscalar/numeric.hpp"
#include "orthoscalar/quiver.hpp"
#include "orthoscalar/random.hpp"

namespace orthoscalar {

/// A representation: one space per vertex (given by its dimension) and one
/// matrix per arrow of shape dims[head] x dims[tail]. Zero-dimensional
/// vertices are allowed.
class Representation {
 public:
  Representation() = default;
  /// Throws invalid-input on shape mismatch or non-finite entries.
  Representation(Quiver quiver, DimensionVector dims, std::vector<Matrix> blocks);

  static Representation zero(Quiver quiver, DimensionVector dims);

  const Quiver& quiver() const { return quiver_; }
  const DimensionVector& dims() const { return dims_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(std::size_t arrow) const { return blocks_.at(arrow); }
  Eigen::Index dim(std::size_t vertex) const { return static_cast<Eigen::Index>(dims_.at(vertex)); }

  /// Total dimension over all vertices.
  std::size_t total_dim() const;

 private:
  Quiver quiver_;
  DimensionVector dims_;
  std::vector<Matrix> blocks_;
};

/// The block matrix with odd vertices as block rows and even vertices as
/// block columns, both in quiver order. Missing arrows give zero blocks.
/// Throws unsupported-shape unless the quiver is separated and single.
Matrix assemble_total(const Representation& rep);

/// Horizontal concatenation of the blocks ending at odd vertex `vertex`.
Matrix row_strip(const Representation& rep, std::size_t vertex);
/// Vertical concatenation of the blocks starting at even vertex `vertex`.
Matrix column_strip(const Representation& rep, std::size_t vertex);

/// sum_{a: head = v} T_a T_a^* + sum_{a: tail = v} T_a^* T_a. On a separated
/// quiver this is the row-strip Gram at odd vertices and the column-strip
/// Gram at even ones.
Matrix vertex_gram(const Representation& rep, std::size_t vertex);

struct OrthoscalarReport {
  bool is_orthoscalar = false;
  Character character;                        // absent outside the support
  double worst_residual = 0.0;
  std::vector<std::optional<double>> residuals;  // per vertex, absent outside the support
};

/// Fits chi(v) = trace(G_v) / d(v) and measures ||G_v - chi I|| / (1 + chi).
/// The threshold is tol.rank_rel_tol. Supports separated single quivers and
/// the single loop; anything else is unsupported-shape.
OrthoscalarReport orthoscalar_check(const Representation& rep, const TolerancePolicy& tol = {});

/// Blockwise diagonal sum. Throws invalid-input on quiver mismatch.
Representation direct_sum(const Representation& a, const Representation& b);
Representation direct_sum(const std::vector<Representation>& parts);

std::vector<std::size_t> support(const Representation& rep);
bool is_faithful(const Representation& rep);

Representation random_representation(const Quiver& quiver, const DimensionVector& dims,
                                     std::uint64_t seed);

/// T~_a = U_head T_a U_tail^*, one matrix per vertex.
Representation conjugate(const Representation& rep, const std::vector<Matrix>& unitaries);

std::vector<Matrix> random_vertex_unitaries(const DimensionVector& dims, Rng& rng);

}  // namespace orthoscalar
