#include "orthoscalar/representation.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "orthoscalar/error.hpp"

namespace orthoscalar {

Representation::Representation(Quiver quiver, DimensionVector dims, std::vector<Matrix> blocks)
    : quiver_(std::move(quiver)), dims_(std::move(dims)), blocks_(std::move(blocks)) {
  if (dims_.size() != quiver_.vertex_count()) {
    throw Error(ErrorCode::invalid_input, "dimension vector does not cover the quiver");
  }
  if (blocks_.size() != quiver_.arrow_count()) {
    throw Error(ErrorCode::invalid_input, "one block per arrow is required");
  }
  for (std::size_t a = 0; a < blocks_.size(); ++a) {
    const Arrow& arrow = quiver_.arrows()[a];
    if (blocks_[a].rows() != dim(arrow.head) || blocks_[a].cols() != dim(arrow.tail)) {
      throw Error(ErrorCode::invalid_input, "block for arrow '" + arrow.id + "' has the wrong shape");
    }
    if (!all_finite(blocks_[a])) {
      throw Error(ErrorCode::invalid_input, "block for arrow '" + arrow.id + "' is not finite");
    }
  }
}

Representation Representation::zero(Quiver quiver, DimensionVector dims) {
  std::vector<Matrix> blocks;
  for (const Arrow& a : quiver.arrows()) {
    blocks.push_back(Matrix::Zero(static_cast<Eigen::Index>(dims.at(a.head)),
                                  static_cast<Eigen::Index>(dims.at(a.tail))));
  }
  return Representation(std::move(quiver), std::move(dims), std::move(blocks));
}

std::size_t Representation::total_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0});
}

namespace {

void require_separated_single(const Quiver& q) {
  const StructureReport s = q.structure();
  if (!s.is_separated || !s.is_single) {
    throw Error(ErrorCode::unsupported_shape, "operation needs a separated single quiver");
  }
}

std::vector<Eigen::Index> offsets(const Representation& rep, const std::vector<std::size_t>& order) {
  std::vector<Eigen::Index> out{0};
  for (std::size_t v : order) out.push_back(out.back() + rep.dim(v));
  return out;
}

std::size_t position(const std::vector<std::size_t>& order, std::size_t v) {
  return static_cast<std::size_t>(std::find(order.begin(), order.end(), v) - order.begin());
}

}  // namespace

Matrix assemble_total(const Representation& rep) {
  const Quiver& q = rep.quiver();
  require_separated_single(q);
  const auto odd = q.vertices_of(Parity::odd);
  const auto even = q.vertices_of(Parity::even);
  const auto row_off = offsets(rep, odd);
  const auto col_off = offsets(rep, even);
  Matrix total = Matrix::Zero(row_off.back(), col_off.back());
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arrow = q.arrows()[a];
    const Eigen::Index r = row_off[position(odd, arrow.head)];
    const Eigen::Index c = col_off[position(even, arrow.tail)];
    total.block(r, c, rep.dim(arrow.head), rep.dim(arrow.tail)) = rep.block(a);
  }
  return total;
}

Matrix row_strip(const Representation& rep, std::size_t vertex) {
  const Quiver& q = rep.quiver();
  require_separated_single(q);
  if (vertex >= q.vertex_count() || q.vertices()[vertex].parity != Parity::odd) {
    throw Error(ErrorCode::invalid_input, "row strips are taken at odd vertices");
  }
  const auto even = q.vertices_of(Parity::even);
  const auto col_off = offsets(rep, even);
  Matrix strip = Matrix::Zero(rep.dim(vertex), col_off.back());
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arrow = q.arrows()[a];
    if (arrow.head != vertex) continue;
    strip.middleCols(col_off[position(even, arrow.tail)], rep.dim(arrow.tail)) = rep.block(a);
  }
  return strip;
}

Matrix column_strip(const Representation& rep, std::size_t vertex) {
  const Quiver& q = rep.quiver();
  require_separated_single(q);
  if (vertex >= q.vertex_count() || q.vertices()[vertex].parity != Parity::even) {
    throw Error(ErrorCode::invalid_input, "column strips are taken at even vertices");
  }
  const auto odd = q.vertices_of(Parity::odd);
  const auto row_off = offsets(rep, odd);
  Matrix strip = Matrix::Zero(row_off.back(), rep.dim(vertex));
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arrow = q.arrows()[a];
    if (arrow.tail != vertex) continue;
    strip.middleRows(row_off[position(odd, arrow.head)], rep.dim(arrow.head)) = rep.block(a);
  }
  return strip;
}

Matrix vertex_gram(const Representation& rep, std::size_t vertex) {
  const Quiver& q = rep.quiver();
  const Eigen::Index d = rep.dim(vertex);
  Matrix g = Matrix::Zero(d, d);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arrow = q.arrows()[a];
    const Matrix& t = rep.block(a);
    if (arrow.head == vertex) g += t * t.adjoint();
    if (arrow.tail == vertex) g += t.adjoint() * t;
  }
  return g;
}

OrthoscalarReport orthoscalar_check(const Representation& rep, const TolerancePolicy& tol) {
  tol.validate();
  const StructureReport s = rep.quiver().structure();
  if (!((s.is_separated && s.is_single) || s.is_single_loop)) {
    throw Error(ErrorCode::unsupported_shape, "orthoscalarity is defined for separated single quivers and the loop");
  }
  const std::size_t n = rep.quiver().vertex_count();
  OrthoscalarReport report;
  report.character.assign(n, std::nullopt);
  report.residuals.assign(n, std::nullopt);
  report.is_orthoscalar = true;
  for (std::size_t v = 0; v < n; ++v) {
    if (rep.dim(v) == 0) continue;
    const auto [c, dev] = scalar_fit(vertex_gram(rep, v));
    const double chi = c.real();
    const double residual = dev / (1.0 + std::abs(chi));
    report.character[v] = chi;
    report.residuals[v] = residual;
    report.worst_residual = std::max(report.worst_residual, residual);
    if (!(chi > 0.0)) report.is_orthoscalar = false;
  }
  if (report.worst_residual > tol.rank_rel_tol) report.is_orthoscalar = false;
  return report;
}

namespace {

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace

Representation direct_sum(const Representation& a, const Representation& b) {
  if (!(a.quiver() == b.quiver())) throw Error(ErrorCode::invalid_input, "direct sum needs a common quiver");
  DimensionVector dims(a.dims().size());
  for (std::size_t v = 0; v < dims.size(); ++v) dims[v] = a.dims()[v] + b.dims()[v];
  std::vector<Matrix> blocks;
  for (std::size_t k = 0; k < a.blocks().size(); ++k) blocks.push_back(block_diagonal(a.block(k), b.block(k)));
  return Representation(a.quiver(), std::move(dims), std::move(blocks));
}

Representation direct_sum(const std::vector<Representation>& parts) {
  if (parts.empty()) throw Error(ErrorCode::invalid_input, "direct sum of nothing");
  Representation out = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) out = direct_sum(out, parts[k]);
  return out;
}

std::vector<std::size_t> support(const Representation& rep) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < rep.dims().size(); ++v) {
    if (rep.dims()[v] != 0) out.push_back(v);
  }
  return out;
}

bool is_faithful(const Representation& rep) { return support(rep).size() == rep.dims().size(); }

Representation random_representation(const Quiver& quiver, const DimensionVector& dims, std::uint64_t seed) {
  if (dims.size() != quiver.vertex_count()) {
    throw Error(ErrorCode::invalid_input, "dimension vector does not cover the quiver");
  }
  Rng rng(seed);
  std::vector<Matrix> blocks;
  for (const Arrow& a : quiver.arrows()) {
    blocks.push_back(random_gaussian(static_cast<Eigen::Index>(dims[a.head]),
                                     static_cast<Eigen::Index>(dims[a.tail]), rng));
  }
  return Representation(quiver, dims, std::move(blocks));
}

Representation conjugate(const Representation& rep, const std::vector<Matrix>& unitaries) {
  if (unitaries.size() != rep.quiver().vertex_count()) {
    throw Error(ErrorCode::invalid_input, "one unitary per vertex is required");
  }
  std::vector<Matrix> blocks;
  for (std::size_t k = 0; k < rep.blocks().size(); ++k) {
    const Arrow& a = rep.quiver().arrows()[k];
    blocks.push_back(unitaries[a.head] * rep.block(k) * unitaries[a.tail].adjoint());
  }
  return Representation(rep.quiver(), rep.dims(), std::move(blocks));
}

std::vector<Matrix> random_vertex_unitaries(const DimensionVector& dims, Rng& rng) {
  std::vector<Matrix> out;
  for (std::size_t d : dims) out.push_back(random_unitary(static_cast<Eigen::Index>(d), rng));
  return out;
}

}  // namespace orthoscalar
