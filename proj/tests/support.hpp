#pragma once
// Independent reference computations for the test suites. These avoid the
// library's SVD-based kernels: everything here goes through explicit
// elementary-matrix loops and Eigen's FullPivLU rank.

#include <algorithm>
#include <cmath>
#include <random>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "orthoscalar/morphisms.hpp"
#include "orthoscalar/quiver.hpp"
#include "orthoscalar/random.hpp"
#include "orthoscalar/representation.hpp"
#include "orthoscalar/rigidity.hpp"
#include "orthoscalar/subspaces.hpp"

namespace oracle {

using orthoscalar::Complex;
using orthoscalar::Matrix;

// Pivots below threshold * max(largest pivot, scale) count as zero, where
// scale is the size of the data the operator was built from. Synthesized
// inputs carry residuals near 1e-9, so the default sits well above that.
inline std::size_t lu_rank(const Matrix& m, double scale = 0.0, double threshold = 1e-7) {
  if (m.size() == 0) return 0;
  Eigen::FullPivLU<Matrix> lu(m);
  const double reference = std::max(lu.maxPivot(), scale);
  if (reference == 0.0 || lu.maxPivot() <= threshold * reference) return 0;
  lu.setThreshold(threshold * reference / lu.maxPivot());
  return static_cast<std::size_t>(lu.rank());
}

inline Eigen::VectorXcd flatten(const std::vector<Matrix>& parts) {
  Eigen::Index total = 0;
  for (const Matrix& p : parts) total += p.size();
  Eigen::VectorXcd out(total);
  Eigen::Index at = 0;
  for (const Matrix& p : parts) {
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      for (Eigen::Index j = 0; j < p.cols(); ++j) out(at++) = p(i, j);
    }
  }
  return out;
}

// Hom dimension by applying the defining equations to every elementary
// morphism E_{v,i,j} and taking the rank of the resulting columns.
inline std::size_t hom_dimension(const orthoscalar::Representation& s, const orthoscalar::Representation& t,
                                 bool star) {
  const auto& q = s.quiver();
  std::vector<Matrix> columns;
  std::size_t unknowns = 0;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    for (Eigen::Index i = 0; i < t.dim(v); ++i) {
      for (Eigen::Index j = 0; j < s.dim(v); ++j) {
        ++unknowns;
        std::vector<Matrix> image;
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
          const std::size_t h = q.arrows()[a].head;
          const std::size_t tl = q.arrows()[a].tail;
          Matrix ch = Matrix::Zero(t.dim(h), s.dim(h));
          Matrix ct = Matrix::Zero(t.dim(tl), s.dim(tl));
          if (h == v) ch(i, j) = 1.0;
          if (tl == v) ct(i, j) = 1.0;
          image.push_back(ch * s.block(a) - t.block(a) * ct);
          if (star) image.push_back(ct * s.block(a).adjoint() - t.block(a).adjoint() * ch);
        }
        Eigen::VectorXcd col = flatten(image);
        columns.push_back(col);
      }
    }
  }
  if (unknowns == 0) return 0;
  double scale = 0.0;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) scale = std::max({scale, s.block(a).norm(), t.block(a).norm()});
  const Eigen::Index rows = columns.front().size();
  if (rows == 0) return unknowns;
  Matrix op(rows, static_cast<Eigen::Index>(unknowns));
  for (std::size_t k = 0; k < unknowns; ++k) op.col(static_cast<Eigen::Index>(k)) = columns[k];
  return unknowns - lu_rank(op, scale);
}

// dim { C_0 : C_0 P_i = P~_i C_0 P_i for all i } by the same construction.
inline std::size_t projection_hom_dimension(const orthoscalar::ProjectionSystem& s,
                                            const orthoscalar::ProjectionSystem& t) {
  const auto n = static_cast<Eigen::Index>(s.ambient_dim);
  const auto m = static_cast<Eigen::Index>(t.ambient_dim);
  if (n == 0 || m == 0) return 0;
  Matrix op(m * n * static_cast<Eigen::Index>(s.size()), m * n);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Matrix c = Matrix::Zero(m, n);
      c(i, j) = 1.0;
      std::vector<Matrix> image;
      for (std::size_t k = 0; k < s.size(); ++k) {
        image.push_back(c * s.projections[k] - t.projections[k] * c * s.projections[k]);
      }
      op.col(col++) = flatten(image);
    }
  }
  return static_cast<std::size_t>(m * n) - lu_rank(op, 1.0);
}

// Positive square root of a 2x2 positive definite matrix:
// sqrt(P) = (P + sqrt(det P) I) / sqrt(tr P + 2 sqrt(det P)).
inline Matrix sqrt2x2(const Matrix& p) {
  const double det = std::sqrt(std::abs(p.determinant()));
  const double tr = p.trace().real();
  return (p + det * Matrix::Identity(2, 2)) / std::sqrt(tr + 2.0 * det);
}

// Three unit vectors at 120 degrees in C^2, scaled so the centre Gram is I.
inline orthoscalar::Representation equiangular_star() {
  const auto q = orthoscalar::star_quiver(3);
  std::vector<Matrix> blocks;
  for (int k = 0; k < 3; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / 3.0;
    Matrix col(2, 1);
    col << std::cos(angle), std::sin(angle);
    blocks.push_back(std::sqrt(2.0 / 3.0) * col);
  }
  return orthoscalar::Representation(q, {2, 1, 1, 1}, blocks);
}

inline orthoscalar::Representation loop_t() {
  Matrix t(2, 2);
  t << 1.0, 1.0, 0.0, -1.0;
  return orthoscalar::Representation(orthoscalar::loop_quiver(), {2}, {t});
}

// A valid rescaling instance: rows and columns get class labels, entries are
// nonzero only where labels agree, and each class shares one positive scalar.
// Such Z satisfies diag(a) Z = Z diag(b), so (Z, Z) meets every hypothesis.
inline orthoscalar::RescalingInstance valid_instance(Eigen::Index rows, Eigen::Index cols, orthoscalar::Rng& rng) {
  std::uniform_int_distribution<int> classes_dist(1, static_cast<int>(std::min(rows, cols)));
  const int classes = classes_dist(rng);
  std::vector<int> row_class(static_cast<std::size_t>(rows)), col_class(static_cast<std::size_t>(cols));
  // every class appears at least once on both sides
  for (Eigen::Index i = 0; i < rows; ++i) row_class[i] = i < classes ? static_cast<int>(i) : static_cast<int>(rng() % classes);
  for (Eigen::Index j = 0; j < cols; ++j) col_class[j] = j < classes ? static_cast<int>(j) : static_cast<int>(rng() % classes);
  std::shuffle(row_class.begin(), row_class.end(), rng);
  std::shuffle(col_class.begin(), col_class.end(), rng);
  std::uniform_real_distribution<double> scalar(0.5, 4.0);
  std::vector<double> value(static_cast<std::size_t>(classes));
  for (double& v : value) v = scalar(rng);

  orthoscalar::RescalingInstance inst;
  inst.z = Matrix::Zero(rows, cols);
  inst.a.resize(rows);
  inst.b.resize(cols);
  for (Eigen::Index i = 0; i < rows; ++i) inst.a(i) = value[row_class[i]];
  for (Eigen::Index j = 0; j < cols; ++j) inst.b(j) = value[col_class[j]];
  std::bernoulli_distribution keep(0.6);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (row_class[i] == col_class[j] && keep(rng)) {
        inst.z(i, j) = Complex(orthoscalar::random_normal(rng), orthoscalar::random_normal(rng));
      }
    }
  }
  // patch empty lines with an entry in a matching position
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (inst.z.row(i).norm() > 0) continue;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (col_class[j] == row_class[i]) {
        inst.z(i, j) = 1.0;
        break;
      }
    }
  }
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (inst.z.col(j).norm() > 0) continue;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (row_class[i] == col_class[j]) {
        inst.z(i, j) = Complex(0.0, 1.0);
        break;
      }
    }
  }
  inst.w = inst.z;
  return inst;
}

inline std::size_t nonzero_count(const Matrix& m) {
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) k += m(i, j) != Complex(0.0) ? 1 : 0;
  }
  return k;
}

}  // namespace oracle
