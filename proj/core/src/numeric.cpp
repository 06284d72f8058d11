#include "orthoscalar/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "orthoscalar/error.hpp"

namespace orthoscalar {

void TolerancePolicy::validate() const {
  if (!(rank_rel_tol > 0.0) || !(residual_abs_tol > 0.0)) {
    throw Error(ErrorCode::invalid_input, "tolerances must be strictly positive");
  }
}

bool all_finite(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

namespace {

void require_finite(const Matrix& m, const char* what) {
  if (!all_finite(m)) throw Error(ErrorCode::invalid_input, std::string(what) + ": non-finite entry");
}

}  // namespace

SvdResult svd(const Matrix& m) {
  require_finite(m, "svd");
  SvdResult out;
  if (m.size() == 0) {
    out.u = Matrix::Identity(m.rows(), m.rows());
    out.v = Matrix::Identity(m.cols(), m.cols());
    out.singular_values = RealVector::Zero(0);
    return out;
  }
  Eigen::BDCSVD<Matrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.u = solver.matrixU();
  out.v = solver.matrixV();
  out.singular_values = solver.singularValues();
  return out;
}

PolarResult polar_left(const Matrix& m, const TolerancePolicy& tol) {
  tol.validate();
  if (m.rows() != m.cols()) throw Error(ErrorCode::invalid_input, "polar_left: matrix must be square");
  if (m.size() == 0) return {Matrix(0, 0), Matrix(0, 0)};
  const SvdResult f = svd(m);
  const double smax = f.singular_values(0);
  const double smin = f.singular_values(f.singular_values.size() - 1);
  if (!(smax > 0.0) || smin <= tol.rank_rel_tol * smax) {
    throw Error(ErrorCode::singular_input, "polar_left: matrix is numerically singular");
  }
  PolarResult out;
  out.positive = f.u * f.singular_values.cast<Complex>().asDiagonal() * f.u.adjoint();
  out.positive = (out.positive + out.positive.adjoint()) / 2.0;
  out.unitary = f.u * f.v.adjoint();
  return out;
}

HermitianEigenResult hermitian_eig(const Matrix& m, const TolerancePolicy& tol) {
  tol.validate();
  require_finite(m, "hermitian_eig");
  if (m.rows() != m.cols()) throw Error(ErrorCode::invalid_input, "hermitian_eig: matrix must be square");
  if ((m - m.adjoint()).norm() > tol.residual_abs_tol * (1.0 + m.norm())) {
    throw Error(ErrorCode::invalid_input, "hermitian_eig: matrix is not Hermitian");
  }
  if (m.size() == 0) return {RealVector(0), Matrix(0, 0)};
  const Matrix sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::numerical_degeneracy, "hermitian_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors().adjoint()};
}

std::size_t numerical_rank(const Matrix& m, const TolerancePolicy& tol) {
  tol.validate();
  if (m.size() == 0) return 0;
  const SvdResult f = svd(m);
  const double smax = f.singular_values(0);
  if (!(smax > 0.0)) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < f.singular_values.size(); ++i) {
    if (f.singular_values(i) > tol.rank_rel_tol * smax) ++rank;
  }
  return rank;
}

Matrix nullspace(const Matrix& m, const TolerancePolicy& tol, double scale) {
  tol.validate();
  require_finite(m, "nullspace");
  const Eigen::Index cols = m.cols();
  if (cols == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(cols, cols);
  const SvdResult f = svd(m);
  const double cutoff = tol.rank_rel_tol * std::max(f.singular_values(0), scale);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < f.singular_values.size(); ++i) {
    if (f.singular_values(i) > cutoff) ++rank;
  }
  return f.v.rightCols(cols - rank);
}

Matrix isometry_factor(const Matrix& m) {
  require_finite(m, "isometry_factor");
  if (m.size() == 0) return Matrix::Zero(m.rows(), m.cols());
  Eigen::BDCSVD<Matrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return solver.matrixU() * solver.matrixV().adjoint();
}

std::pair<Complex, double> scalar_fit(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::invalid_input, "scalar_fit: matrix must be square");
  if (m.size() == 0) return {Complex(0.0), 0.0};
  const Complex c = m.trace() / static_cast<double>(m.rows());
  const double r = (m - c * Matrix::Identity(m.rows(), m.cols())).norm();
  return {c, r};
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> solver(m);
  return solver.singularValues()(0);
}

}  // namespace orthoscalar
