#include "orthoscalar/morphisms.hpp"

#include <algorithm>
#include <cmath>

#include "orthoscalar/error.hpp"

namespace orthoscalar {

std::string_view to_string(Category category) {
  return category == Category::plain ? "plain" : "star";
}

Morphism Morphism::adjoint() const {
  Morphism out;
  for (const Matrix& m : maps) out.maps.push_back(m.adjoint());
  return out;
}

double Morphism::norm() const {
  double sq = 0.0;
  for (const Matrix& m : maps) sq += m.squaredNorm();
  return std::sqrt(sq);
}

Morphism identity_morphism(const Representation& rep) {
  Morphism out;
  for (std::size_t v = 0; v < rep.dims().size(); ++v) out.maps.push_back(Matrix::Identity(rep.dim(v), rep.dim(v)));
  return out;
}

Morphism scaled(const Morphism& c, Complex factor) {
  Morphism out = c;
  for (Matrix& m : out.maps) m *= factor;
  return out;
}

Morphism operator+(const Morphism& a, const Morphism& b) {
  if (a.maps.size() != b.maps.size()) throw Error(ErrorCode::invalid_input, "morphism vertex count mismatch");
  Morphism out = a;
  for (std::size_t v = 0; v < a.maps.size(); ++v) out.maps[v] += b.maps[v];
  return out;
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix eye(Eigen::Index n) { return Matrix::Identity(n, n); }

void require_same_quiver(const Representation& a, const Representation& b) {
  if (!(a.quiver() == b.quiver())) throw Error(ErrorCode::invalid_input, "representations live on different quivers");
}

// Column offset of each vertex map inside the unknown vector.
std::vector<Eigen::Index> unknown_offsets(const Representation& source, const Representation& target) {
  std::vector<Eigen::Index> off{0};
  for (std::size_t v = 0; v < source.dims().size(); ++v) off.push_back(off.back() + target.dim(v) * source.dim(v));
  return off;
}

Morphism unpack(const Vector& x, const Representation& source, const Representation& target) {
  const auto off = unknown_offsets(source, target);
  Morphism out;
  for (std::size_t v = 0; v < source.dims().size(); ++v) {
    out.maps.push_back(x.segment(off[v], off[v + 1] - off[v]).reshaped(target.dim(v), source.dim(v)));
  }
  return out;
}

double max_block_norm(const Representation& rep) {
  double out = 0.0;
  for (const Matrix& b : rep.blocks()) out = std::max(out, b.norm());
  return out;
}

}  // namespace

Matrix intertwiner_system(const Representation& source, const Representation& target, Category category) {
  require_same_quiver(source, target);
  const Quiver& q = source.quiver();
  const auto off = unknown_offsets(source, target);
  Eigen::Index rows = 0;
  for (const Arrow& a : q.arrows()) {
    rows += target.dim(a.head) * source.dim(a.tail);
    if (category == Category::star) rows += target.dim(a.tail) * source.dim(a.head);
  }
  Matrix system = Matrix::Zero(rows, off.back());
  Eigen::Index row = 0;
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Arrow& a = q.arrows()[k];
    const Matrix& t = source.block(k);
    const Matrix& tt = target.block(k);
    const Eigen::Index h_src = source.dim(a.head), t_src = source.dim(a.tail);
    const Eigen::Index h_tgt = target.dim(a.head), t_tgt = target.dim(a.tail);

    // C_h T - T~ C_t
    Eigen::Index n = h_tgt * t_src;
    system.block(row, off[a.head], n, h_tgt * h_src) += kron(t.transpose(), eye(h_tgt));
    system.block(row, off[a.tail], n, t_tgt * t_src) -= kron(eye(t_src), tt);
    row += n;

    if (category == Category::star) {
      // C_t T^* - T~^* C_h
      n = t_tgt * h_src;
      system.block(row, off[a.tail], n, t_tgt * t_src) += kron(t.conjugate(), eye(t_tgt));
      system.block(row, off[a.head], n, h_tgt * h_src) -= kron(eye(h_src), tt.adjoint());
      row += n;
    }
  }
  return system;
}

HomSpace hom_space(const Representation& source, const Representation& target, Category category,
                   const TolerancePolicy& tol) {
  const Matrix system = intertwiner_system(source, target, category);
  double scale = 0.0;
  for (std::size_t a = 0; a < source.quiver().arrow_count(); ++a) {
    scale = std::max({scale, spectral_norm(source.block(a)), spectral_norm(target.block(a))});
  }
  const Matrix kernel = nullspace(system, tol, scale);
  HomSpace out{source, target, category, {}};
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) out.basis.push_back(unpack(kernel.col(c), source, target));
  return out;
}

double hom_residual(const Morphism& c, const Representation& source, const Representation& target,
                    Category category) {
  require_same_quiver(source, target);
  const Quiver& q = source.quiver();
  if (c.maps.size() != q.vertex_count()) throw Error(ErrorCode::invalid_input, "morphism vertex count mismatch");
  double defect = 0.0;
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Arrow& a = q.arrows()[k];
    const Matrix& t = source.block(k);
    const Matrix& tt = target.block(k);
    defect = std::max(defect, (c.maps[a.head] * t - tt * c.maps[a.tail]).norm());
    if (category == Category::star) {
      defect = std::max(defect, (c.maps[a.tail] * t.adjoint() - tt.adjoint() * c.maps[a.head]).norm());
    }
  }
  const double scale = 1.0 + c.norm() * std::max(max_block_norm(source), max_block_norm(target));
  return defect / scale;
}

Morphism random_element(const HomSpace& space, Rng& rng) {
  Morphism out;
  for (std::size_t v = 0; v < space.source.dims().size(); ++v) {
    out.maps.push_back(Matrix::Zero(space.target.dim(v), space.source.dim(v)));
  }
  for (const Morphism& b : space.basis) {
    const Complex z(random_normal(rng), random_normal(rng));
    out = out + scaled(b, z);
  }
  return out;
}

namespace {

// Deviation of a morphism from a common scalar c * I, relative to its norm.
std::pair<Complex, double> common_scalar_fit(const Morphism& c) {
  Complex sum = 0.0;
  double count = 0.0;
  for (const Matrix& m : c.maps) {
    sum += m.trace();
    count += static_cast<double>(m.rows());
  }
  if (count == 0.0) return {Complex(0.0), 0.0};
  const Complex scalar = sum / count;
  double dev = 0.0;
  for (const Matrix& m : c.maps) dev += (m - scalar * Matrix::Identity(m.rows(), m.cols())).squaredNorm();
  const double norm = c.norm();
  return {scalar, norm > 0.0 ? std::sqrt(dev) / norm : 0.0};
}

}  // namespace

bool is_schur(const Representation& rep, Category category, const TolerancePolicy& tol) {
  const HomSpace end = hom_space(rep, rep, category, tol);
  if (end.dimension() != 1) return false;
  const auto [scalar, dev] = common_scalar_fit(end.basis.front());
  if (dev > std::sqrt(tol.rank_rel_tol)) {
    throw Error(ErrorCode::numerical_degeneracy, "one-dimensional End spanned by a non-scalar family");
  }
  return true;
}

bool is_indecomposable_star(const Representation& rep, const TolerancePolicy& tol) {
  return is_schur(rep, Category::star, tol);
}

Morphism adjoint(const Morphism& c, const Representation& source, const Representation& target,
                 const TolerancePolicy& tol) {
  Morphism out = c.adjoint();
  if (hom_residual(out, target, source, Category::star) > tol.rank_rel_tol) {
    throw Error(ErrorCode::inconsistent_input, "adjoint is not a star morphism; input was not one either");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition

namespace {

struct Piece {
  Representation rep;
  std::vector<Matrix> embedding;  // per vertex, into the original spaces
};

constexpr int kMaxDraws = 8;
constexpr double kClusterGap = 1e-6;

// Splits rep along the eigenspaces of a random self-adjoint endomorphism.
// Returns an empty vector if the draw has a single eigenvalue cluster.
std::vector<Piece> split_once(const Piece& piece, const HomSpace& end, Rng& rng, const TolerancePolicy& tol) {
  const Representation& rep = piece.rep;
  const std::size_t nv = rep.dims().size();

  std::vector<Matrix> h(nv);
  for (std::size_t v = 0; v < nv; ++v) h[v] = Matrix::Zero(rep.dim(v), rep.dim(v));
  for (const Morphism& e : end.basis) {
    const double r = random_normal(rng);
    for (std::size_t v = 0; v < nv; ++v) h[v] += r * (e.maps[v] + e.maps[v].adjoint()) / 2.0;
  }

  std::vector<HermitianEigenResult> eig(nv);
  std::vector<double> pooled;
  for (std::size_t v = 0; v < nv; ++v) {
    eig[v] = hermitian_eig(h[v], tol);
    for (Eigen::Index i = 0; i < eig[v].eigenvalues.size(); ++i) pooled.push_back(eig[v].eigenvalues(i));
  }
  std::sort(pooled.begin(), pooled.end());
  const double spread = pooled.back() - pooled.front();
  if (!(spread > 0.0)) return {};

  // Cluster boundaries: consecutive gaps larger than kClusterGap * spread.
  std::vector<double> upper;  // inclusive upper end of each cluster
  for (std::size_t i = 0; i + 1 < pooled.size(); ++i) {
    if (pooled[i + 1] - pooled[i] > kClusterGap * spread) upper.push_back(pooled[i]);
  }
  upper.push_back(pooled.back());
  if (upper.size() < 2) return {};

  const auto cluster_of = [&](double lambda) {
    return static_cast<std::size_t>(std::lower_bound(upper.begin(), upper.end(), lambda) - upper.begin());
  };

  std::vector<Piece> out(upper.size());
  for (std::size_t c = 0; c < upper.size(); ++c) {
    DimensionVector dims(nv, 0);
    std::vector<Matrix> local(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      const Matrix vectors = eig[v].unitary.adjoint();  // eigenvectors as columns
      std::vector<Eigen::Index> cols;
      for (Eigen::Index i = 0; i < eig[v].eigenvalues.size(); ++i) {
        if (cluster_of(eig[v].eigenvalues(i)) == c) cols.push_back(i);
      }
      local[v] = Matrix(rep.dim(v), static_cast<Eigen::Index>(cols.size()));
      for (std::size_t k = 0; k < cols.size(); ++k) local[v].col(static_cast<Eigen::Index>(k)) = vectors.col(cols[k]);
      dims[v] = cols.size();
    }
    std::vector<Matrix> blocks;
    for (std::size_t k = 0; k < rep.quiver().arrow_count(); ++k) {
      const Arrow& a = rep.quiver().arrows()[k];
      blocks.push_back(local[a.head].adjoint() * rep.block(k) * local[a.tail]);
    }
    out[c].rep = Representation(rep.quiver(), std::move(dims), std::move(blocks));
    for (std::size_t v = 0; v < nv; ++v) out[c].embedding.push_back(piece.embedding[v] * local[v]);
  }
  return out;
}

void split_recursive(const Piece& piece, Rng& rng, const TolerancePolicy& tol, std::vector<Piece>& done) {
  if (piece.rep.total_dim() == 0) return;
  const HomSpace end = hom_space(piece.rep, piece.rep, Category::star, tol);
  if (end.dimension() <= 1) {
    done.push_back(piece);
    return;
  }
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    std::vector<Piece> parts = split_once(piece, end, rng, tol);
    if (parts.empty()) continue;
    for (const Piece& p : parts) split_recursive(p, rng, tol, done);
    return;
  }
  throw Error(ErrorCode::numerical_degeneracy,
              "End_star has dimension " + std::to_string(end.dimension()) + " but no split was found");
}

}  // namespace

DecompositionResult decompose(const Representation& rep, std::uint64_t seed, const TolerancePolicy& tol) {
  tol.validate();
  Rng rng(seed);
  Piece root{rep, {}};
  for (std::size_t v = 0; v < rep.dims().size(); ++v) root.embedding.push_back(Matrix::Identity(rep.dim(v), rep.dim(v)));
  std::vector<Piece> pieces;
  split_recursive(root, rng, tol, pieces);

  DecompositionResult out;
  for (Piece& p : pieces) {
    out.summands.push_back(std::move(p.rep));
    out.isometries.push_back(std::move(p.embedding));
  }

  const std::size_t nv = rep.dims().size();
  std::vector<Matrix> joint(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    joint[v] = Matrix(rep.dim(v), 0);
    for (const auto& iso : out.isometries) {
      Matrix grown(rep.dim(v), joint[v].cols() + iso[v].cols());
      grown << joint[v], iso[v];
      joint[v] = std::move(grown);
    }
    if (joint[v].cols() != rep.dim(v)) {
      throw Error(ErrorCode::numerical_degeneracy, "summand dimensions do not add up");
    }
    out.orthogonality_residual = std::max(
        out.orthogonality_residual, (joint[v].adjoint() * joint[v] - Matrix::Identity(rep.dim(v), rep.dim(v))).norm());
  }
  if (!out.summands.empty()) {
    const Representation sum = direct_sum(out.summands);
    for (std::size_t k = 0; k < rep.quiver().arrow_count(); ++k) {
      const Arrow& a = rep.quiver().arrows()[k];
      const Matrix conj = joint[a.head].adjoint() * rep.block(k) * joint[a.tail];
      out.reassembly_residual =
          std::max(out.reassembly_residual, (conj - sum.block(k)).norm() / (1.0 + rep.block(k).norm()));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unitary equivalence

double unitary_equivalence_residual(const Representation& a, const Representation& b,
                                    const std::vector<Matrix>& unitaries) {
  require_same_quiver(a, b);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.quiver().arrow_count(); ++k) {
    const Arrow& arrow = a.quiver().arrows()[k];
    const double defect = (unitaries[arrow.head] * a.block(k) - b.block(k) * unitaries[arrow.tail]).norm();
    worst = std::max(worst, defect / (1.0 + a.block(k).norm()));
  }
  return worst;
}

EquivalenceResult are_equivalent_star(const Representation& a, const Representation& b, std::uint64_t seed,
                                      const TolerancePolicy& tol) {
  tol.validate();
  require_same_quiver(a, b);
  EquivalenceResult out;
  if (a.dims() != b.dims()) return out;
  if (a.total_dim() == 0) {
    out.status = EquivalenceStatus::equivalent;
    out.witness = identity_morphism(a).maps;
    return out;
  }
  const HomSpace forward = hom_space(a, b, Category::star, tol);
  const HomSpace backward = hom_space(b, a, Category::star, tol);
  if (forward.dimension() == 0 || forward.dimension() != backward.dimension()) return out;

  Rng rng(seed);
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    const Morphism c = random_element(forward, rng);
    bool invertible = true;
    for (const Matrix& m : c.maps) {
      if (m.size() == 0) continue;
      const SvdResult f = svd(m);
      const double smax = f.singular_values(0);
      if (!(smax > 0.0) || f.singular_values(f.singular_values.size() - 1) <= tol.rank_rel_tol * smax) {
        invertible = false;
        break;
      }
    }
    if (!invertible) continue;
    std::vector<Matrix> unitaries;
    for (const Matrix& m : c.maps) unitaries.push_back(polar_left(m, tol).unitary);
    out.witness_residual = unitary_equivalence_residual(a, b, unitaries);
    if (out.witness_residual <= tol.rank_rel_tol) {
      out.status = EquivalenceStatus::equivalent;
      out.witness = std::move(unitaries);
    } else {
      out.status = EquivalenceStatus::equivalent_without_witness;
    }
    return out;
  }
  return out;
}

}  // namespace orthoscalar
