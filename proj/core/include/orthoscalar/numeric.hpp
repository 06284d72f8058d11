#pragma once

// Dense complex linear algebra shared by every other module.
//
// All functions are pure and deterministic. Norms are Frobenius norms unless
// stated otherwise. Rank decisions compare singular values against
// rank_rel_tol * sigma_max, so they are invariant under rescaling of the
// input; a zero matrix has numerical rank 0.

#include <complex>
#include <cstddef>
#include <utility>

#include <Eigen/Dense>

namespace orthoscalar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct TolerancePolicy {
  double rank_rel_tol = 1e-8;
  double residual_abs_tol = 1e-10;

  /// Throws invalid-input unless both tolerances are strictly positive.
  void validate() const;
};

struct SvdResult {
  Matrix u;                    // rows x rows, unitary
  RealVector singular_values;  // min(rows, cols), descending
  Matrix v;                    // cols x cols, unitary
};

/// Left polar factors, M = positive * unitary.
struct PolarResult {
  Matrix positive;
  Matrix unitary;
};

/// M = unitary^* * diag(eigenvalues) * unitary, eigenvalues ascending.
/// The rows of `unitary` are the conjugated eigenvectors.
struct HermitianEigenResult {
  RealVector eigenvalues;
  Matrix unitary;
};

bool all_finite(const Matrix& m);

SvdResult svd(const Matrix& m);

/// M = X * U with X Hermitian positive definite and U unitary. Note the
/// order: most libraries return the right factorization M = U * P instead.
PolarResult polar_left(const Matrix& m, const TolerancePolicy& tol = {});

HermitianEigenResult hermitian_eig(const Matrix& m, const TolerancePolicy& tol = {});

/// Orthonormal basis of the numerical kernel, one vector per column.
/// Singular values up to rank_rel_tol * max(sigma_max, scale) count as zero.
/// Pass the size of the data the system was built from as `scale` when exact
/// cancellation can leave only rounding noise, which a purely relative cutoff
/// would read as full rank.
Matrix nullspace(const Matrix& m, const TolerancePolicy& tol = {}, double scale = 0.0);

std::size_t numerical_rank(const Matrix& m, const TolerancePolicy& tol = {});

/// Nearest partial isometry U * V^* from the thin SVD. For a full-rank
/// matrix this is the unitary factor of its polar decomposition.
Matrix isometry_factor(const Matrix& m);

/// Least-squares residual of m against the closest multiple of the identity:
/// returns (c, ||m - c I||) with c = trace(m) / dim.
std::pair<Complex, double> scalar_fit(const Matrix& m);

double spectral_norm(const Matrix& m);

}  // namespace orthoscalar
