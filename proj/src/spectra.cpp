#include "rmlab/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

namespace rmlab {

namespace {

void require_finite(const auto& a, const char* what) {
  require(a.allFinite(), std::string(what) + ": matrix has non-finite entries");
}

template <class Matrix>
SingularValues svd_values(const Matrix& a) {
  require_finite(a, "singular_values");
  SingularValues out;
  if (a.size() == 0) return out;
  Eigen::BDCSVD<Matrix> svd(a);
  if (svd.info() != Eigen::Success) throw ConvergenceError("singular_values: SVD did not converge");
  const auto& s = svd.singularValues();
  out.values.assign(s.data(), s.data() + s.size());
  return out;
}

/// Rotates v so its largest-modulus entry is real and positive.
void fix_phase(ComplexVector& v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  const double mag = std::abs(v(arg));
  if (mag > 0.0) v *= std::conj(v(arg)) / mag;
}

}  // namespace

Spectrum eigenvalues(const ComplexMatrix& a, SpectrumOptions options) {
  require(a.rows() == a.cols(), "eigenvalues: matrix must be square");
  require_finite(a, "eigenvalues");
  Spectrum out;
  if (a.rows() == 0) {
    out.backward_error = 0.0;
    return out;
  }
  // Hessenberg reduction + shifted QR; 30 iterations per row, exceptional shifts at 10 and 30.
  Eigen::ComplexSchur<ComplexMatrix> schur(a, options.compute_backward_error);
  if (schur.info() != Eigen::Success) throw ConvergenceError("eigenvalues: shifted QR did not converge");
  const auto& t = schur.matrixT();
  out.eigenvalues.resize(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) out.eigenvalues[static_cast<std::size_t>(i)] = t(i, i);
  if (options.compute_backward_error) {
    const auto& u = schur.matrixU();
    const double norm = a.norm();
    const double err = (a * u - u * t).norm();
    out.backward_error = norm > 0.0 ? err / norm : err;
  }
  return out;
}

RealEigReport real_eigenvalue_count(const RealMatrix& a) {
  require(a.rows() == a.cols(), "real_eigenvalue_count: matrix must be square");
  require_finite(a, "real_eigenvalue_count");
  RealEigReport out;
  const Eigen::Index n = a.rows();
  if (n == 0) return out;
  Eigen::RealSchur<RealMatrix> schur(a, false);
  if (schur.info() != Eigen::Success) throw ConvergenceError("real_eigenvalue_count: real Schur did not converge");
  const RealMatrix& t = schur.matrixT();
  double min_imag = std::numeric_limits<double>::infinity();
  Eigen::Index i = 0;
  while (i < n) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      const double p = t(i, i) - t(i + 1, i + 1);
      const double disc = p * p + 4.0 * t(i, i + 1) * t(i + 1, i);
      if (disc >= 0.0) {
        out.count_real += 2;
        min_imag = 0.0;
      } else {
        min_imag = std::min(min_imag, std::sqrt(-disc) / 2.0);
      }
      i += 2;
    } else {
      out.count_real += 1;
      min_imag = 0.0;
      i += 1;
    }
  }
  out.min_imag_distance = min_imag;
  return out;
}

double real_axis_distance(const ComplexMatrix& a) {
  const Spectrum s = eigenvalues(a, {.compute_backward_error = false});
  double best = std::numeric_limits<double>::infinity();
  for (const auto& z : s.eigenvalues) best = std::min(best, std::abs(z.imag()));
  return best;
}

SingularValues singular_values(const ComplexMatrix& a) { return svd_values(a); }
SingularValues singular_values(const RealMatrix& a) { return svd_values(a); }

double least_singular_value(const ComplexMatrix& a) {
  require(a.rows() == a.cols() && a.rows() > 0, "least_singular_value: matrix must be square and nonempty");
  return singular_values(a).values.back();
}

double least_singular_value(const RealMatrix& a) {
  require(a.rows() == a.cols() && a.rows() > 0, "least_singular_value: matrix must be square and nonempty");
  return singular_values(a).values.back();
}

double operator_norm(const ComplexMatrix& a) {
  const SingularValues s = singular_values(a);
  return s.values.empty() ? 0.0 : s.values.front();
}

double condition_number(const ComplexMatrix& a) {
  require(a.rows() == a.cols() && a.rows() > 0, "condition_number: matrix must be square and nonempty");
  const SingularValues s = singular_values(a);
  const double s1 = s.values.front(), sn = s.values.back();
  const double tol = s1 * static_cast<double>(a.rows()) * std::numeric_limits<double>::epsilon();
  if (sn <= tol) return std::numeric_limits<double>::infinity();
  return s1 / sn;
}

SpanDistance dist_to_column_span(const ComplexVector& x, const ComplexMatrix& h) {
  require(x.size() == h.rows(), "dist_to_column_span: dimension mismatch");
  require_finite(h, "dist_to_column_span");
  require(x.allFinite(), "dist_to_column_span: vector has non-finite entries");
  SpanDistance out;
  if (h.cols() == 0) {
    out.distance = x.norm();
    return out;
  }
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(h);
  const Eigen::Index rank = qr.rank();
  out.rank_deficient = rank < h.cols();
  const ComplexVector y = qr.householderQ().adjoint() * x;
  out.distance = y.tail(y.size() - rank).norm();
  return out;
}

NormalVector unit_normal_rows(const ComplexMatrix& rows) {
  const Eigen::Index n = rows.cols();
  require(n >= 1 && rows.rows() == n - 1, "unit_normal: expected an (n-1) x n row matrix");
  require_finite(rows, "unit_normal");
  NormalVector out;
  if (n == 1) {
    out.v = ComplexVector::Ones(1);
    return out;
  }
  // Columns of rows^H orthogonal (Hermitian) to q give rows * q = 0.
  const ComplexMatrix adj = rows.adjoint();
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(adj);
  out.rank_deficient = qr.rank() < n - 1;
  const ComplexMatrix q = qr.householderQ();
  out.v = q.col(n - 1);
  out.v.normalize();
  fix_phase(out.v);
  return out;
}

NormalVector unit_normal_columns(const ComplexMatrix& columns) {
  require(columns.cols() + 1 == columns.rows(), "unit_normal: expected an n x (n-1) column matrix");
  return unit_normal_rows(columns.transpose());
}

ComplexMatrix drop_column(const ComplexMatrix& a, Eigen::Index k) {
  require(k >= 0 && k < a.cols(), "drop_column: index out of range");
  ComplexMatrix out(a.rows(), a.cols() - 1);
  out.leftCols(k) = a.leftCols(k);
  out.rightCols(a.cols() - 1 - k) = a.rightCols(a.cols() - 1 - k);
  return out;
}

}  // namespace rmlab
