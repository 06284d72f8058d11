#include "orthoscalar/subspaces.hpp"

#include <algorithm>
#include <cmath>

#include "orthoscalar/error.hpp"

namespace orthoscalar {

namespace {

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

double weight_limit(const ProjectionSystem& s, const TolerancePolicy& tol) {
  return tol.rank_rel_tol * (1.0 + std::sqrt(static_cast<double>(s.ambient_dim)));
}

Matrix weighted_sum(const ProjectionSystem& s, const std::vector<double>& alpha) {
  Matrix sum = Matrix::Zero(as_index(s.ambient_dim), as_index(s.ambient_dim));
  for (std::size_t i = 0; i < s.size(); ++i) sum += alpha[i] * s.projections[i];
  return sum;
}

double identity_gap(const ProjectionSystem& s, const std::vector<double>& alpha) {
  const Eigen::Index d = as_index(s.ambient_dim);
  return (weighted_sum(s, alpha) - Matrix::Identity(d, d)).norm();
}

void require_shapes(const ProjectionSystem& s) {
  const Eigen::Index d = as_index(s.ambient_dim);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.projections[i].rows() != d || s.projections[i].cols() != d) {
      throw Error(ErrorCode::invalid_input, "projection " + std::to_string(i) + " is not ambient_dim square");
    }
    if (!all_finite(s.projections[i])) {
      throw Error(ErrorCode::invalid_input, "projection " + std::to_string(i) + " is not finite");
    }
  }
  for (const auto* v : {&s.weights, &s.leaf_scales}) {
    if (!v->has_value()) continue;
    if ((*v)->size() != s.size()) throw Error(ErrorCode::invalid_input, "one weight per projection is required");
    for (double x : **v) {
      if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::invalid_input, "weights must be positive");
    }
  }
}

// Scale used for leaf i when lifting a system to the star quiver.
std::vector<double> lift_scales(const ProjectionSystem& s) {
  if (s.leaf_scales) return *s.leaf_scales;
  if (s.weights) return *s.weights;
  return std::vector<double>(s.size(), 1.0);
}

}  // namespace

SystemReport validate_system(const ProjectionSystem& system, const TolerancePolicy& tol) {
  tol.validate();
  require_shapes(system);
  SystemReport report;
  for (std::size_t i = 0; i < system.size(); ++i) {
    const Matrix& p = system.projections[i];
    const double scale = 1.0 + p.norm();
    const double idem = (p * p - p).norm();
    const double self = (p - p.adjoint()).norm();
    report.idempotency_residuals.push_back(idem);
    report.self_adjoint_residuals.push_back(self);
    if (idem > tol.residual_abs_tol * scale || self > tol.residual_abs_tol * scale) {
      throw Error(ErrorCode::invalid_projection, "projection " + std::to_string(i) + " is not an orthogonal projection");
    }
    report.subspace_dims.push_back(numerical_rank(p, tol));
  }
  if (system.weights) {
    report.weight_residual = identity_gap(system, *system.weights);
    if (*report.weight_residual > weight_limit(system, tol)) {
      throw Error(ErrorCode::infeasible, "attached weights do not resolve the identity");
    }
  }
  return report;
}

WeightSolution solve_weights(const ProjectionSystem& system, const TolerancePolicy& tol) {
  tol.validate();
  require_shapes(system);
  const std::size_t n = system.size();
  const Eigen::Index d = as_index(system.ambient_dim);
  if (n == 0) throw Error(ErrorCode::infeasible, "no projections to weight");
  if (d == 0) return {std::vector<double>(n, 1.0), 0.0, false};

  // Real and imaginary parts of every entry.
  const Eigen::Index eq = 2 * d * d;
  Eigen::MatrixXd lhs(eq, as_index(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Vector v = system.projections[i].reshaped();
    lhs.col(as_index(i)) << v.real(), v.imag();
  }
  const Vector id = Matrix::Identity(d, d).reshaped();
  Eigen::VectorXd rhs(eq);
  rhs << id.real(), id.imag();

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(lhs);
  cod.setThreshold(tol.rank_rel_tol);
  const Eigen::VectorXd alpha = cod.solve(rhs);

  WeightSolution out;
  out.weights.assign(alpha.data(), alpha.data() + alpha.size());
  out.unique = cod.rank() == as_index(n);
  out.residual = identity_gap(system, out.weights);
  if (out.residual > weight_limit(system, tol)) {
    throw Error(ErrorCode::infeasible, "no real weights resolve the identity");
  }
  for (double a : out.weights) {
    if (!(a > 0.0)) {
      throw Error(ErrorCode::infeasible_sign,
                  out.unique ? "the unique weights are not all positive"
                             : "minimum-norm weights are not all positive (projections are dependent)");
    }
  }
  return out;
}

ProjectionSystem with_weights(const ProjectionSystem& system, const TolerancePolicy& tol) {
  ProjectionSystem out = system;
  out.weights = solve_weights(system, tol).weights;
  return out;
}

Matrix embedding_of(const Matrix& projection) {
  const SvdResult f = svd(projection);
  Eigen::Index rank = 0;
  while (rank < f.singular_values.size() && f.singular_values(rank) > 0.5) ++rank;
  return f.u.leftCols(rank);
}

void require_star_shape(const Representation& rep) {
  const Quiver& q = rep.quiver();
  const auto odd = q.vertices_of(Parity::odd);
  if (odd.size() != 1) throw Error(ErrorCode::unsupported_shape, "a star quiver has exactly one odd centre");
  std::vector<int> uses(q.vertex_count(), 0);
  for (const Arrow& a : q.arrows()) {
    if (a.head != odd.front() || q.vertices()[a.tail].parity != Parity::even) {
      throw Error(ErrorCode::unsupported_shape, "every arrow must run from a leaf into the centre");
    }
    ++uses[a.tail];
  }
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (v != odd.front() && uses[v] != 1) {
      throw Error(ErrorCode::unsupported_shape, "every leaf must carry exactly one arrow");
    }
  }
}

ProjectionSystem functor_F(const Representation& rep, const TolerancePolicy& tol) {
  tol.validate();
  require_star_shape(rep);
  const Quiver& q = rep.quiver();
  const std::size_t centre = q.vertices_of(Parity::odd).front();
  const Eigen::Index d = rep.dim(centre);

  ProjectionSystem out;
  out.ambient_dim = static_cast<std::size_t>(d);
  std::vector<double> scales;
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Matrix& t = rep.block(k);
    if (t.cols() == 0) {
      out.projections.push_back(Matrix::Zero(d, d));
      scales.push_back(1.0);
      continue;
    }
    const auto [s, dev] = scalar_fit(t.adjoint() * t);
    if (!(s.real() > 0.0) || dev > tol.rank_rel_tol * s.real()) {
      throw Error(ErrorCode::not_in_k, "leaf Gram of arrow '" + q.arrows()[k].id + "' is not a nonzero scalar");
    }
    const Matrix gamma = isometry_factor(t);
    Matrix p = gamma * gamma.adjoint();
    out.projections.push_back((p + p.adjoint()) / 2.0);
    scales.push_back(s.real());
  }
  out.leaf_scales = scales;

  if (d > 0) {
    const auto [c0, dev0] = scalar_fit(vertex_gram(rep, centre));
    if (c0.real() > 0.0 && dev0 / (1.0 + c0.real()) <= tol.rank_rel_tol) {
      std::vector<double> w;
      for (double s : scales) w.push_back(s / c0.real());
      out.weights = std::move(w);
    }
  }
  return out;
}

Representation functor_G(const ProjectionSystem& system, const TolerancePolicy& tol) {
  validate_system(system, tol);
  if (!system.weights && !system.leaf_scales) {
    throw Error(ErrorCode::invalid_input, "the inverse functor needs weights");
  }
  if (system.size() == 0) throw Error(ErrorCode::invalid_input, "empty projection system");
  const std::vector<double> scales = lift_scales(system);
  DimensionVector dims{system.ambient_dim};
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < system.size(); ++i) {
    const Matrix gamma = embedding_of(system.projections[i]);
    dims.push_back(static_cast<std::size_t>(gamma.cols()));
    blocks.push_back(std::sqrt(scales[i]) * gamma);
  }
  return Representation(star_quiver(system.size()), std::move(dims), std::move(blocks));
}

ProjectionHomSpace hom_space_P(const ProjectionSystem& source, const ProjectionSystem& target,
                               const TolerancePolicy& tol) {
  tol.validate();
  require_shapes(source);
  require_shapes(target);
  if (source.size() != target.size()) throw Error(ErrorCode::invalid_input, "systems have different sizes");
  const Eigen::Index d = as_index(source.ambient_dim);
  const Eigen::Index dt = as_index(target.ambient_dim);
  const Eigen::Index block = dt * d;
  Matrix system = Matrix::Zero(block * as_index(source.size()), block);
  for (std::size_t i = 0; i < source.size(); ++i) {
    // vec(C P - P~ C P) = (P^T kron (I - P~)) vec(C)
    const Matrix p_t = source.projections[i].transpose();
    const Matrix q = Matrix::Identity(dt, dt) - target.projections[i];
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) {
        system.block(as_index(i) * block + r * dt, c * dt, dt, dt) = p_t(r, c) * q;
      }
    }
  }
  ProjectionHomSpace out;
  // projections have spectral norm 1 (or 0)
  const Matrix kernel = nullspace(system, tol, 1.0);
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) out.basis.push_back(kernel.col(c).reshaped(dt, d));
  return out;
}

double projection_hom_residual(const Matrix& c0, const ProjectionSystem& source, const ProjectionSystem& target) {
  double worst = 0.0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const Matrix& p = source.projections[i];
    worst = std::max(worst, (c0 * p - target.projections[i] * c0 * p).norm());
  }
  return worst / (1.0 + c0.norm());
}

Morphism transport_morphism(const Matrix& c0, const ProjectionSystem& source, const ProjectionSystem& target,
                            const TolerancePolicy& tol) {
  tol.validate();
  if (source.size() != target.size()) throw Error(ErrorCode::invalid_input, "systems have different sizes");
  if (c0.rows() != as_index(target.ambient_dim) || c0.cols() != as_index(source.ambient_dim)) {
    throw Error(ErrorCode::invalid_input, "C_0 has the wrong shape");
  }
  if (projection_hom_residual(c0, source, target) > tol.rank_rel_tol) {
    throw Error(ErrorCode::not_a_morphism, "C_0 does not map each subspace into its counterpart");
  }
  const auto s = lift_scales(source);
  const auto st = lift_scales(target);
  Morphism out;
  out.maps.push_back(c0);
  for (std::size_t i = 0; i < source.size(); ++i) {
    const Matrix gamma = embedding_of(source.projections[i]);
    const Matrix gamma_t = embedding_of(target.projections[i]);
    out.maps.push_back(std::sqrt(s[i] / st[i]) * gamma_t.adjoint() * c0 * gamma);
  }
  return out;
}

Theorem2Report theorem2_verify(const ProjectionSystem& system, const TolerancePolicy& tol) {
  if (!system.weights) throw Error(ErrorCode::invalid_input, "theorem2_verify needs an orthoscalar (weighted) system");
  Theorem2Report out;
  const Representation rep = functor_G(system, tol);
  out.orthoscalar_end_dimension = hom_space(rep, rep, Category::star, tol).dimension();
  out.subspace_end_dimension = hom_space_P(system, system, tol).dimension();
  out.indecomposable = out.orthoscalar_end_dimension == 1;
  out.holds = !out.indecomposable || out.subspace_end_dimension == 1;
  return out;
}

}  // namespace orthoscalar
