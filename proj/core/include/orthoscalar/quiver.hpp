#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orthoscalar/numeric.hpp"

namespace orthoscalar {

/// Even vertices are arrow tails, odd vertices are arrow heads in a
/// separated quiver. Parity is stored explicitly so that quivers which are
/// not separated (a loop, a doubled quiver) remain representable.
enum class Parity { even, odd };

struct Vertex {
  std::string id;
  Parity parity = Parity::even;

  bool operator==(const Vertex&) const = default;
};

struct Arrow {
  std::string id;
  std::size_t tail = 0;  // vertex index
  std::size_t head = 0;  // vertex index

  bool operator==(const Arrow&) const = default;
};

struct StructureReport {
  bool is_separated = false;
  bool is_single = false;
  bool is_single_loop = false;
};

/// Finite quiver with vertex parities. Vertices and arrows are addressed by
/// position; ids are kept for serialization and must be unique.
class Quiver {
 public:
  Quiver() = default;

  std::size_t add_vertex(std::string id, Parity parity);
  /// Throws invalid-input when an endpoint id is unknown or the id is taken.
  std::size_t add_arrow(std::string id, const std::string& tail_id, const std::string& head_id);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }

  std::optional<std::size_t> find_vertex(const std::string& id) const;
  std::optional<std::size_t> find_arrow(const std::string& id) const;
  std::size_t vertex_index(const std::string& id) const;

  /// Vertex indices of the given parity, in insertion order. This order fixes
  /// the block layout of the total matrix.
  std::vector<std::size_t> vertices_of(Parity parity) const;

  StructureReport structure() const;
  bool is_separated() const { return structure().is_separated; }

  bool operator==(const Quiver&) const = default;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Arrow> arrows_;
};

/// Throws invalid-input on dangling arrow endpoints or duplicate ids.
StructureReport validate(const Quiver& quiver);

/// One odd centre "0" and even leaves "1".."n" with arrows g<i>: i -> 0.
Quiver star_quiver(std::size_t n);

/// The A2 quiver: even "j" -> odd "i".
Quiver a2_quiver();

/// One vertex with one loop.
Quiver loop_quiver();

struct DoubledQuiver {
  Quiver quiver;
  /// involution[a] is the partner of arrow a. The first arrow_count()/2
  /// arrows are the originals, in their original order.
  std::vector<std::size_t> involution;

  Quiver original() const;
};

/// Adds a reversed partner a* : head -> tail for every arrow a.
DoubledQuiver double_quiver(const Quiver& quiver);

using DimensionVector = std::vector<std::size_t>;

/// Per-vertex character. Entries are absent outside the support, where the
/// character is not determined.
using Character = std::vector<std::optional<double>>;

/// sum_{odd} d*chi against sum_{even} d*chi for a separated quiver. Vertices
/// of dimension zero contribute nothing. Throws invalid-input if the quiver is
/// not separated or chi is missing or non-positive where d > 0.
bool balance_check(const Quiver& quiver, const DimensionVector& dims, const Character& chi,
                   const TolerancePolicy& tol = {});

/// |sum_odd d*chi - sum_even d*chi| and sum_odd d*chi, for reporting.
std::pair<double, double> balance_sums(const Quiver& quiver, const DimensionVector& dims,
                                       const Character& chi);

}  // namespace orthoscalar
