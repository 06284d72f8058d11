#include "orthoscalar/quiver.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "orthoscalar/error.hpp"

namespace orthoscalar {

std::size_t Quiver::add_vertex(std::string id, Parity parity) {
  if (find_vertex(id)) throw Error(ErrorCode::invalid_input, "duplicate vertex id '" + id + "'");
  vertices_.push_back({std::move(id), parity});
  return vertices_.size() - 1;
}

std::size_t Quiver::add_arrow(std::string id, const std::string& tail_id, const std::string& head_id) {
  if (find_arrow(id)) throw Error(ErrorCode::invalid_input, "duplicate arrow id '" + id + "'");
  const auto tail = find_vertex(tail_id);
  const auto head = find_vertex(head_id);
  if (!tail || !head) {
    throw Error(ErrorCode::invalid_input, "arrow '" + id + "' has a dangling endpoint");
  }
  arrows_.push_back({std::move(id), *tail, *head});
  return arrows_.size() - 1;
}

std::optional<std::size_t> Quiver::find_vertex(const std::string& id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].id == id) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Quiver::find_arrow(const std::string& id) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    if (arrows_[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t Quiver::vertex_index(const std::string& id) const {
  const auto idx = find_vertex(id);
  if (!idx) throw Error(ErrorCode::invalid_input, "unknown vertex id '" + id + "'");
  return *idx;
}

std::vector<std::size_t> Quiver::vertices_of(Parity parity) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].parity == parity) out.push_back(i);
  }
  return out;
}

StructureReport Quiver::structure() const {
  StructureReport report;
  report.is_separated = true;
  report.is_single = true;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Arrow& a : arrows_) {
    if (vertices_[a.tail].parity != Parity::even || vertices_[a.head].parity != Parity::odd) {
      report.is_separated = false;
    }
    if (!seen.insert({a.tail, a.head}).second) report.is_single = false;
  }
  report.is_single_loop =
      vertices_.size() == 1 && arrows_.size() == 1 && arrows_[0].tail == arrows_[0].head;
  return report;
}

StructureReport validate(const Quiver& quiver) {
  std::set<std::string> ids;
  for (const Vertex& v : quiver.vertices()) {
    if (!ids.insert(v.id).second) throw Error(ErrorCode::invalid_input, "duplicate vertex id '" + v.id + "'");
  }
  ids.clear();
  for (const Arrow& a : quiver.arrows()) {
    if (!ids.insert(a.id).second) throw Error(ErrorCode::invalid_input, "duplicate arrow id '" + a.id + "'");
    if (a.tail >= quiver.vertex_count() || a.head >= quiver.vertex_count()) {
      throw Error(ErrorCode::invalid_input, "arrow '" + a.id + "' has a dangling endpoint");
    }
  }
  return quiver.structure();
}

Quiver star_quiver(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_input, "star quiver needs at least one leaf");
  Quiver q;
  q.add_vertex("0", Parity::odd);
  for (std::size_t i = 1; i <= n; ++i) q.add_vertex(std::to_string(i), Parity::even);
  for (std::size_t i = 1; i <= n; ++i) q.add_arrow("g" + std::to_string(i), std::to_string(i), "0");
  return q;
}

Quiver a2_quiver() {
  Quiver q;
  q.add_vertex("i", Parity::odd);
  q.add_vertex("j", Parity::even);
  q.add_arrow("a", "j", "i");
  return q;
}

Quiver loop_quiver() {
  Quiver q;
  q.add_vertex("v", Parity::even);
  q.add_arrow("t", "v", "v");
  return q;
}

Quiver DoubledQuiver::original() const {
  Quiver q;
  for (const Vertex& v : quiver.vertices()) q.add_vertex(v.id, v.parity);
  const std::size_t originals = quiver.arrow_count() / 2;
  for (std::size_t a = 0; a < originals; ++a) {
    const Arrow& arrow = quiver.arrows()[a];
    q.add_arrow(arrow.id, quiver.vertices()[arrow.tail].id, quiver.vertices()[arrow.head].id);
  }
  return q;
}

DoubledQuiver double_quiver(const Quiver& quiver) {
  DoubledQuiver out;
  for (const Vertex& v : quiver.vertices()) out.quiver.add_vertex(v.id, v.parity);
  const auto& vs = quiver.vertices();
  for (const Arrow& a : quiver.arrows()) out.quiver.add_arrow(a.id, vs[a.tail].id, vs[a.head].id);
  for (const Arrow& a : quiver.arrows()) out.quiver.add_arrow(a.id + "*", vs[a.head].id, vs[a.tail].id);
  const std::size_t m = quiver.arrow_count();
  out.involution.resize(2 * m);
  for (std::size_t a = 0; a < m; ++a) {
    out.involution[a] = a + m;
    out.involution[a + m] = a;
  }
  return out;
}

std::pair<double, double> balance_sums(const Quiver& quiver, const DimensionVector& dims,
                                       const Character& chi) {
  if (dims.size() != quiver.vertex_count() || chi.size() != quiver.vertex_count()) {
    throw Error(ErrorCode::invalid_input, "dimension vector or character does not match the quiver");
  }
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t v = 0; v < quiver.vertex_count(); ++v) {
    if (dims[v] == 0) continue;
    if (!chi[v] || !(*chi[v] > 0.0) || !std::isfinite(*chi[v])) {
      throw Error(ErrorCode::invalid_input,
                  "character must be positive on the support (vertex '" + quiver.vertices()[v].id + "')");
    }
    const double term = static_cast<double>(dims[v]) * *chi[v];
    (quiver.vertices()[v].parity == Parity::odd ? odd : even) += term;
  }
  return {std::abs(odd - even), odd};
}

bool balance_check(const Quiver& quiver, const DimensionVector& dims, const Character& chi,
                   const TolerancePolicy& tol) {
  tol.validate();
  if (!quiver.is_separated()) throw Error(ErrorCode::invalid_input, "balance_check needs a separated quiver");
  const auto [gap, odd] = balance_sums(quiver, dims, chi);
  return gap <= tol.residual_abs_tol * (1.0 + odd);
}

}  // namespace orthoscalar
