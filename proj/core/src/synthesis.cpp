#include "orthoscalar/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orthoscalar/error.hpp"

namespace orthoscalar {

double synthesis_residual(const Representation& rep, const Character& chi) {
  double worst = 0.0;
  for (std::size_t v = 0; v < rep.dims().size(); ++v) {
    if (rep.dim(v) == 0) continue;
    const double c = chi[v].value_or(0.0);
    const Matrix g = vertex_gram(rep, v);
    worst = std::max(worst, (g - c * Matrix::Identity(g.rows(), g.cols())).norm() / (1.0 + c));
  }
  return worst;
}

namespace {

// Arrows incident to each vertex. On a separated quiver these are the arrows
// ending at an odd vertex or starting at an even one.
struct Incidence {
  std::vector<std::vector<std::size_t>> arrows;
};

Incidence incidence(const Quiver& q) {
  Incidence inc{std::vector<std::vector<std::size_t>>(q.vertex_count())};
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Arrow& a = q.arrows()[k];
    inc.arrows[a.head].push_back(k);
    inc.arrows[a.tail].push_back(k);
  }
  return inc;
}

// Rescales the strip through `vertex` to sqrt(chi) times its nearest partial
// isometry. Odd vertices use the row strip, even vertices the column strip.
void normalize_strip(std::vector<Matrix>& blocks, const Quiver& q, const DimensionVector& dims, std::size_t vertex,
                     const std::vector<std::size_t>& arrows, double chi) {
  const auto d = static_cast<Eigen::Index>(dims[vertex]);
  if (d == 0 || arrows.empty()) return;
  const bool odd = q.vertices()[vertex].parity == Parity::odd;
  Eigen::Index width = 0;
  for (std::size_t k : arrows) width += odd ? blocks[k].cols() : blocks[k].rows();
  Matrix strip = odd ? Matrix(d, width) : Matrix(width, d);
  Eigen::Index at = 0;
  for (std::size_t k : arrows) {
    if (odd) {
      strip.middleCols(at, blocks[k].cols()) = blocks[k];
      at += blocks[k].cols();
    } else {
      strip.middleRows(at, blocks[k].rows()) = blocks[k];
      at += blocks[k].rows();
    }
  }
  const Matrix fixed = std::sqrt(chi) * isometry_factor(strip);
  at = 0;
  for (std::size_t k : arrows) {
    if (odd) {
      blocks[k] = fixed.middleCols(at, blocks[k].cols());
      at += blocks[k].cols();
    } else {
      blocks[k] = fixed.middleRows(at, blocks[k].rows());
      at += blocks[k].rows();
    }
  }
}

}  // namespace

SynthesisResult synthesize(const Quiver& quiver, const DimensionVector& dims, const Character& chi,
                           const SynthesisOptions& opts, const TolerancePolicy& tol) {
  tol.validate();
  if (opts.max_iterations == 0 || !(opts.residual_target > 0.0)) {
    throw Error(ErrorCode::invalid_input, "synthesis bounds must be positive");
  }
  const StructureReport shape = validate(quiver);
  if (!shape.is_separated || !shape.is_single) {
    throw Error(ErrorCode::unsupported_shape, "synthesis needs a separated single quiver");
  }
  if (!balance_check(quiver, dims, chi, tol)) {
    throw Error(ErrorCode::infeasible_balance, "sum of d*chi over odd vertices differs from the even sum");
  }
  const Incidence inc = incidence(quiver);
  for (std::size_t v = 0; v < quiver.vertex_count(); ++v) {
    std::size_t neighbours = 0;
    for (std::size_t k : inc.arrows[v]) {
      const Arrow& a = quiver.arrows()[k];
      neighbours += dims[a.head == v ? a.tail : a.head];
    }
    if (dims[v] > neighbours) {
      throw Error(ErrorCode::infeasible_dims,
                  "vertex '" + quiver.vertices()[v].id + "' is larger than the sum of its neighbours");
    }
  }

  const auto odd = quiver.vertices_of(Parity::odd);
  const auto even = quiver.vertices_of(Parity::even);
  Representation start = random_representation(quiver, dims, opts.seed);
  std::vector<Matrix> blocks = start.blocks();

  SynthesisResult out;
  out.representation = start;
  out.residual = synthesis_residual(start, chi);
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    for (std::size_t v : odd) normalize_strip(blocks, quiver, dims, v, inc.arrows[v], chi[v].value_or(0.0));
    for (std::size_t v : even) normalize_strip(blocks, quiver, dims, v, inc.arrows[v], chi[v].value_or(0.0));
    Representation current(quiver, dims, blocks);
    const double r = synthesis_residual(current, chi);
    out.iterations = it;
    if (r < out.residual) {
      out.residual = r;
      out.representation = std::move(current);
    }
    if (out.residual <= opts.residual_target) {
      out.converged = true;
      break;
    }
  }
  return out;
}

ProjectionSynthesisResult synthesize_projection_system(std::size_t n, std::size_t ambient_dim,
                                                       const std::vector<std::size_t>& leaf_dims, std::uint64_t seed,
                                                       std::optional<std::vector<double>> leaf_chi,
                                                       const SynthesisOptions& opts, const TolerancePolicy& tol) {
  if (leaf_dims.size() != n) throw Error(ErrorCode::invalid_input, "one leaf dimension per subspace is required");
  const std::size_t total = std::accumulate(leaf_dims.begin(), leaf_dims.end(), std::size_t{0});
  if (total == 0) throw Error(ErrorCode::invalid_input, "all leaves are zero-dimensional");
  Character chi{1.0};
  if (leaf_chi) {
    if (leaf_chi->size() != n) throw Error(ErrorCode::invalid_input, "one leaf character per subspace is required");
    for (double c : *leaf_chi) chi.push_back(c);
  } else {
    for (std::size_t i = 0; i < n; ++i) chi.push_back(static_cast<double>(ambient_dim) / static_cast<double>(total));
  }
  DimensionVector dims{ambient_dim};
  dims.insert(dims.end(), leaf_dims.begin(), leaf_dims.end());

  SynthesisOptions local = opts;
  local.seed = seed;
  ProjectionSynthesisResult out;
  out.synthesis = synthesize(star_quiver(n), dims, chi, local, tol);
  if (out.synthesis.converged) out.system = functor_F(out.synthesis.representation, tol);
  return out;
}

}  // namespace orthoscalar
