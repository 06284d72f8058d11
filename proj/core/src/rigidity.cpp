#include "orthoscalar/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "orthoscalar/error.hpp"

namespace orthoscalar {

std::string_view to_string(StepRule rule) {
  switch (rule) {
    case StepRule::single_row: return "single-row";
    case StepRule::single_column: return "single-column";
    case StepRule::one_per_line: return "one-per-line";
    case StepRule::inductive: return "inductive";
  }
  return "unknown";
}

const RescalingInstance& check_instance(const RescalingInstance& inst, const TolerancePolicy& tol) {
  tol.validate();
  const Eigen::Index m = inst.z.rows();
  const Eigen::Index n = inst.z.cols();
  if (m == 0 || n == 0 || inst.w.rows() != m || inst.w.cols() != n || inst.a.size() != m || inst.b.size() != n) {
    throw Error(ErrorCode::invalid_input, "rescaling instance shapes do not agree");
  }
  if (!all_finite(inst.z) || !all_finite(inst.w) || !inst.a.allFinite() || !inst.b.allFinite()) {
    throw Error(ErrorCode::invalid_input, "rescaling instance has non-finite entries");
  }
  if ((inst.a.array() <= 0.0).any() || (inst.b.array() <= 0.0).any()) {
    throw Error(ErrorCode::invalid_input, "diagonal scalars must be positive");
  }

  const double scale = std::max(inst.z.norm(), inst.w.norm());
  const double zero = tol.residual_abs_tol * scale;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!(scale > 0.0) || inst.z.row(i).norm() <= zero || inst.w.row(i).norm() <= zero) {
      throw Error(ErrorCode::precondition_zero_line, "row " + std::to_string(i) + " is zero");
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (inst.z.col(j).norm() <= zero || inst.w.col(j).norm() <= zero) {
      throw Error(ErrorCode::precondition_zero_line, "column " + std::to_string(j) + " is zero");
    }
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    const double lz = inst.z.row(i).norm();
    if (std::abs(lz - inst.w.row(i).norm()) > tol.residual_abs_tol * (1.0 + lz)) {
      throw Error(ErrorCode::precondition_lengths, "row " + std::to_string(i) + " lengths differ");
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lz = inst.z.col(j).norm();
    if (std::abs(lz - inst.w.col(j).norm()) > tol.residual_abs_tol * (1.0 + lz)) {
      throw Error(ErrorCode::precondition_lengths, "column " + std::to_string(j) + " lengths differ");
    }
  }
  const Matrix az = inst.a.cast<Complex>().asDiagonal() * inst.z;
  const Matrix wb = inst.w * inst.b.cast<Complex>().asDiagonal();
  if ((az - wb).norm() > tol.residual_abs_tol * (1.0 + az.norm())) {
    throw Error(ErrorCode::precondition_relation, "A Z differs from W B");
  }
  return inst;
}

bool triple_less(std::size_t m1, std::size_t n1, std::size_t k1, std::size_t m2, std::size_t n2, std::size_t k2) {
  if (m1 <= m2 && n1 <= n2 && (m1 < m2 || n1 < n2)) return true;
  return m1 == m2 && n1 == n2 && k1 < k2;
}

RigidityCertificate lemma1_certify(const RescalingInstance& inst, const TolerancePolicy& tol) {
  check_instance(inst, tol);
  const std::size_t m0 = static_cast<std::size_t>(inst.z.rows());
  const std::size_t n0 = static_cast<std::size_t>(inst.z.cols());
  const double scalar_tol = std::sqrt(tol.rank_rel_tol);

  const double max_entry = std::max(inst.z.cwiseAbs().maxCoeff(), inst.w.cwiseAbs().maxCoeff());
  const double zero = tol.residual_abs_tol * max_entry;
  std::vector<std::vector<bool>> live(m0, std::vector<bool>(n0, false));
  std::size_t k = 0;
  for (std::size_t i = 0; i < m0; ++i) {
    for (std::size_t j = 0; j < n0; ++j) {
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      live[i][j] = std::max(std::abs(inst.z(ii, jj)), std::abs(inst.w(ii, jj))) > zero;
      if (live[i][j]) ++k;
    }
  }

  RigidityCertificate cert;
  cert.nonzero_count = k;

  // Sorted orders: by scalar, ties broken by original index.
  std::vector<std::size_t> row_order(m0), col_order(n0);
  std::iota(row_order.begin(), row_order.end(), 0);
  std::iota(col_order.begin(), col_order.end(), 0);
  std::stable_sort(row_order.begin(), row_order.end(), [&](auto x, auto y) { return inst.a(x) < inst.a(y); });
  std::stable_sort(col_order.begin(), col_order.end(), [&](auto x, auto y) { return inst.b(x) < inst.b(y); });

  const auto row_live = [&](std::size_t i) {
    return std::any_of(live[i].begin(), live[i].end(), [](bool x) { return x; });
  };
  const auto col_live = [&](std::size_t j) {
    for (std::size_t i = 0; i < m0; ++i) if (live[i][j]) return true;
    return false;
  };

  std::size_t prev_m = m0 + 1, prev_n = n0 + 1, prev_k = k + 1;
  while (k > 0) {
    std::vector<std::size_t> rows, cols;  // active, in sorted order
    for (std::size_t i : row_order) if (row_live(i)) rows.push_back(i);
    for (std::size_t j : col_order) if (col_live(j)) cols.push_back(j);
    const std::size_t m = rows.size(), n = cols.size();
    if (!triple_less(m, n, k, prev_m, prev_n, prev_k)) {
      throw Error(ErrorCode::rigidity_violation, "induction triple failed to decrease");
    }
    prev_m = m, prev_n = n, prev_k = k;

    std::size_t row = 0, col = 0;
    StepRule rule;
    const auto first_in_row = [&](std::size_t i) {
      for (std::size_t j : cols) if (live[i][j]) return j;
      return n0;
    };
    const auto first_in_col = [&](std::size_t j) {
      for (std::size_t i : rows) if (live[i][j]) return i;
      return m0;
    };
    if (m == 1) {
      rule = StepRule::single_row;
      row = rows.front();
      col = first_in_row(row);
    } else if (n == 1) {
      rule = StepRule::single_column;
      col = cols.front();
      row = first_in_col(col);
    } else if (k == std::max(m, n)) {
      rule = StepRule::one_per_line;
      if (m <= n) {
        col = cols.front();
        row = first_in_col(col);
      } else {
        row = rows.front();
        col = first_in_row(row);
      }
    } else {
      rule = StepRule::inductive;
      if (m <= n) {
        row = rows.front();
        col = first_in_row(row);
      } else {
        col = cols.front();
        row = first_in_col(col);
      }
    }

    const auto ri = static_cast<Eigen::Index>(row), cj = static_cast<Eigen::Index>(col);
    CertificateStep step{row, col, inst.a(ri), inst.b(cj), inst.z(ri, cj), inst.w(ri, cj), m, n, k, rule};
    const double scalar_dev = std::abs(step.a - step.b);
    if (scalar_dev > scalar_tol * std::max(step.a, step.b)) {
      std::ostringstream msg;
      msg << "matched scalars differ at (" << row << "," << col << "): a=" << step.a << " b=" << step.b;
      throw Error(ErrorCode::rigidity_violation, msg.str());
    }
    if (std::abs(step.z - step.w) > scalar_tol * std::max(std::abs(step.z), std::abs(step.w))) {
      throw Error(ErrorCode::rigidity_violation,
                  "entries differ at (" + std::to_string(row) + "," + std::to_string(col) + ")");
    }
    cert.max_scalar_deviation = std::max(cert.max_scalar_deviation, scalar_dev);
    cert.steps.push_back(step);
    live[row][col] = false;
    --k;
  }

  cert.max_entry_deviation = (inst.z - inst.w).cwiseAbs().maxCoeff();
  if (cert.max_entry_deviation > scalar_tol * (1.0 + max_entry)) {
    throw Error(ErrorCode::rigidity_violation, "Z and W differ after the replay");
  }
  cert.equal = cert.max_entry_deviation <= tol.residual_abs_tol * (1.0 + max_entry);
  return cert;
}

// ---------------------------------------------------------------------------
// Scalar reduction trace

namespace {

Matrix block_diag(const std::vector<Matrix>& blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const Matrix& b : blocks) rows += b.rows(), cols += b.cols();
  Matrix out = Matrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const Matrix& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

std::vector<Matrix> pick(const std::vector<Matrix>& per_vertex, const std::vector<std::size_t>& order) {
  std::vector<Matrix> out;
  for (std::size_t v : order) out.push_back(per_vertex[v]);
  return out;
}

// Common scalar fit over the blocks of several block-diagonal families.
std::pair<Complex, double> common_scalar(const std::vector<const Matrix*>& ms) {
  Complex sum = 0.0;
  double count = 0.0, sq = 0.0;
  for (const Matrix* m : ms) {
    sum += m->trace();
    count += static_cast<double>(m->rows());
    sq += m->squaredNorm();
  }
  if (count == 0.0) return {Complex(0.0), 0.0};
  const Complex c = sum / count;
  double dev = 0.0;
  for (const Matrix* m : ms) dev += (*m - c * Matrix::Identity(m->rows(), m->cols())).squaredNorm();
  return {c, std::sqrt(dev) / (1.0 + std::sqrt(sq))};
}

class Tracer {
 public:
  Tracer(TraceReport& report, double limit) : report_(report), limit_(limit) {}

  void stage(std::string id, std::string identity, double residual) {
    report_.max_residual = std::max(report_.max_residual, residual);
    report_.stages.push_back({id, std::move(identity), residual});
    if (!(residual <= limit_)) {
      std::ostringstream msg;
      msg << "stage " << id << " residual " << residual << " exceeds " << limit_;
      throw Error(ErrorCode::stage_failure, msg.str());
    }
  }

 private:
  TraceReport& report_;
  double limit_;
};

double rel(const Matrix& diff, const Matrix& ref) { return diff.norm() / (1.0 + ref.norm()); }

}  // namespace

TraceReport theorem1_trace(const Representation& rep, const Morphism& endo, std::uint64_t seed,
                           const TolerancePolicy& tol) {
  tol.validate();
  const Quiver& q = rep.quiver();
  const StructureReport shape = q.structure();
  if (!shape.is_separated || !shape.is_single) {
    throw Error(ErrorCode::invalid_input, "theorem1_trace needs a separated single quiver");
  }
  if (!orthoscalar_check(rep, tol).is_orthoscalar) {
    throw Error(ErrorCode::invalid_input, "theorem1_trace needs an orthoscalar representation");
  }
  if (endo.maps.size() != q.vertex_count()) throw Error(ErrorCode::invalid_input, "endomorphism vertex count mismatch");
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (endo.maps[v].rows() != rep.dim(v) || endo.maps[v].cols() != rep.dim(v)) {
      throw Error(ErrorCode::invalid_input, "endomorphism block has the wrong shape");
    }
  }

  TraceReport report;
  Tracer trace(report, std::sqrt(tol.rank_rel_tol));
  const auto odd = q.vertices_of(Parity::odd);
  const auto even = q.vertices_of(Parity::even);
  const Matrix t = assemble_total(rep);

  const Matrix a0 = block_diag(pick(endo.maps, odd));
  const Matrix b0 = block_diag(pick(endo.maps, even));
  trace.stage("input-relation", "A T = T B", rel(a0 * t - t * b0, a0 * t));

  // Shift by a common scalar when some vertex map is singular.
  bool singular = false;
  double largest = 0.0;
  for (const Matrix& m : endo.maps) {
    if (m.size() == 0) continue;
    const SvdResult f = svd(m);
    const double smax = f.singular_values(0);
    largest = std::max(largest, smax);
    if (!(smax > 0.0) || f.singular_values(f.singular_values.size() - 1) <= tol.rank_rel_tol * smax) singular = true;
  }
  if (singular) {
    Rng rng(seed);
    const double phase = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
    report.shift = (1.0 + largest) * std::polar(1.0, phase);
  }
  std::vector<Matrix> shifted = endo.maps;
  for (Matrix& m : shifted) m += report.shift * Matrix::Identity(m.rows(), m.cols());
  const Matrix a = block_diag(pick(shifted, odd));
  const Matrix b = block_diag(pick(shifted, even));
  trace.stage("scalar-shift", "(A + sI) T = T (B + sI)", rel(a * t - t * b, a * t));

  // Blockwise polar factors: A = X U (left), B = V Y (right, via B^* = Y V^*).
  std::vector<Matrix> xs, us, vs, ys;
  for (std::size_t v : odd) {
    const PolarResult p = polar_left(shifted[v], tol);
    xs.push_back(p.positive);
    us.push_back(p.unitary);
  }
  for (std::size_t v : even) {
    const PolarResult p = polar_left(shifted[v].adjoint(), tol);
    ys.push_back(p.positive);
    vs.push_back(p.unitary.adjoint());
  }
  const Matrix x = block_diag(xs), u = block_diag(us), vv = block_diag(vs), y = block_diag(ys);
  trace.stage("polar-A", "A = X U", rel(x * u - a, a));
  trace.stage("polar-B", "B = V Y", rel(vv * y - b, b));

  // X = U1^* X~ U1 and Y = V1 Y~ V1^*, blockwise.
  std::vector<Matrix> u1s, v1s;
  std::vector<double> xdiag, ydiag;
  for (const Matrix& xb : xs) {
    const HermitianEigenResult e = hermitian_eig(xb, tol);
    u1s.push_back(e.unitary);
    for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i) xdiag.push_back(e.eigenvalues(i));
  }
  for (const Matrix& yb : ys) {
    const HermitianEigenResult e = hermitian_eig(yb, tol);
    v1s.push_back(e.unitary.adjoint());
    for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i) ydiag.push_back(e.eigenvalues(i));
  }
  const Matrix u1 = block_diag(u1s), v1 = block_diag(v1s);
  RealVector xt = Eigen::Map<RealVector>(xdiag.data(), static_cast<Eigen::Index>(xdiag.size()));
  RealVector yt = Eigen::Map<RealVector>(ydiag.data(), static_cast<Eigen::Index>(ydiag.size()));
  const Matrix xtilde = xt.cast<Complex>().asDiagonal();
  const Matrix ytilde = yt.cast<Complex>().asDiagonal();
  trace.stage("diagonalize-X", "X = U1^* X~ U1", rel(u1.adjoint() * xtilde * u1 - x, x));
  trace.stage("diagonalize-Y", "Y = V1 Y~ V1^*", rel(v1 * ytilde * v1.adjoint() - y, y));

  RescalingInstance inst{u1 * u * t * v1, u1 * t * vv * v1, xt, yt};
  trace.stage("reduced-relation", "X~ (U1 U T V1) = (U1 T V V1) Y~",
              rel(xtilde * inst.z - inst.w * ytilde, xtilde * inst.z));

  // The row and column lengths of Z and W agree up to the orthoscalarity
  // residual of T, so the instance is checked at that threshold.
  TolerancePolicy inst_tol = tol;
  inst_tol.residual_abs_tol = std::max(tol.residual_abs_tol, tol.rank_rel_tol);
  report.certificate = lemma1_certify(inst, inst_tol);
  trace.stage("rigidity", "U1 U T V1 = U1 T V V1", report.certificate.max_entry_deviation / (1.0 + inst.z.norm()));

  trace.stage("unitary-relation", "U T = T V", rel(u * t - t * vv, t));
  trace.stage("star-transfer", "V T^* = T^* U", rel(vv * t.adjoint() - t.adjoint() * u, t));

  report.star_end_dimension = hom_space(rep, rep, Category::star, tol).dimension();
  const auto [unit_scalar, unit_dev] = common_scalar({&u, &vv});
  report.unitary_scalar = unit_dev <= std::sqrt(tol.rank_rel_tol);
  report.stages.push_back({"unitary-scalar", "U = V = u I", unit_dev});
  if (!report.unitary_scalar) return report;

  trace.stage("positive-relation", "X T = T Y", rel(x * t - t * y, x * t));
  const auto [pos_scalar, pos_dev] = common_scalar({&x, &y});
  report.positive_scalar = pos_dev <= std::sqrt(tol.rank_rel_tol);
  report.stages.push_back({"positive-scalar", "X = Y = x I", pos_dev});
  if (!report.positive_scalar) return report;

  report.scalar = pos_scalar * unit_scalar - report.shift;
  const Matrix ia = Matrix::Identity(a0.rows(), a0.cols());
  const Matrix ib = Matrix::Identity(b0.rows(), b0.cols());
  const double verdict = std::max(rel(a0 - report.scalar * ia, a0), rel(b0 - report.scalar * ib, b0));
  trace.stage("verdict", "A = B = c I", verdict);
  report.verdict_scalar = true;
  return report;
}

// ---------------------------------------------------------------------------
// Loop counterexample

Remark6Report remark6_demo(const TolerancePolicy& tol) {
  Remark6Report out;
  Matrix t(2, 2);
  t << 1.0, 1.0, 0.0, -1.0;
  out.rep = Representation(loop_quiver(), {2}, {t});
  out.gram_sum = t * t.adjoint() + t.adjoint() * t;
  out.gram_residual = (out.gram_sum - 3.0 * Matrix::Identity(2, 2)).norm();

  out.endo = Matrix(2, 2);
  out.endo << 3.0, 1.0, 0.0, 1.0;
  out.endo_times_t = out.endo * t;
  out.t_times_endo = t * out.endo;

  const HomSpace plain = hom_space(out.rep, out.rep, Category::plain, tol);
  const HomSpace star = hom_space(out.rep, out.rep, Category::star, tol);
  out.plain_end_dimension = plain.dimension();
  out.star_end_dimension = star.dimension();

  // Project endo / |endo| onto the orthonormal plain basis.
  const Vector target = (out.endo / out.endo.norm()).reshaped();
  Vector projected = Vector::Zero(target.size());
  for (const Morphism& e : plain.basis) {
    const Vector ev = e.maps[0].reshaped();
    projected += ev.dot(target) * ev;
  }
  out.span_residual = (target - projected).norm();

  out.endo_invertible = std::abs(out.endo.determinant()) > tol.rank_rel_tol;
  out.endo_scalar = scalar_fit(out.endo).second <= tol.rank_rel_tol;
  const OrthoscalarReport os = orthoscalar_check(out.rep, tol);
  out.holds = out.gram_residual == 0.0 && os.is_orthoscalar && out.endo_times_t == out.t_times_endo &&
              out.plain_end_dimension == 2 && out.star_end_dimension == 1 &&
              out.span_residual <= std::sqrt(tol.rank_rel_tol) && out.endo_invertible && !out.endo_scalar;
  return out;
}

}  // namespace orthoscalar
