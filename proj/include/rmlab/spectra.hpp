#pragma once

#include <vector>

#include "rmlab/types.hpp"

namespace rmlab {

/// Backward-error contract constant: ||A U - U T||_F <= kBackwardErrorConstant * n * eps * ||A||.
inline constexpr double kBackwardErrorConstant = 100.0;

struct Spectrum {
  std::vector<Complex> eigenvalues;
  /// ||A U - U T||_F / ||A||_F of the Schur factorization; negative when not computed.
  double backward_error = -1.0;
};

struct SpectrumOptions {
  bool compute_backward_error = true;
};

/// Complex Schur form (Hessenberg reduction + shifted QR). Throws ConvergenceError at the cap.
Spectrum eigenvalues(const ComplexMatrix& a, SpectrumOptions options = {});

struct RealEigReport {
  int count_real = 0;
  double min_imag_distance = 0.0;
};

/// Real Schur form; count_real is the number of 1x1 diagonal blocks after
/// splitting any 2x2 block whose eigenvalues are real.
RealEigReport real_eigenvalue_count(const RealMatrix& a);

/// min_j |Im lambda_j|.
double real_axis_distance(const ComplexMatrix& a);

struct SingularValues {
  std::vector<double> values;  // nonincreasing
};

SingularValues singular_values(const ComplexMatrix& a);
SingularValues singular_values(const RealMatrix& a);
double least_singular_value(const ComplexMatrix& a);
double least_singular_value(const RealMatrix& a);
double operator_norm(const ComplexMatrix& a);

/// s_1 / s_n, +infinity when s_n <= s_1 * n * eps.
double condition_number(const ComplexMatrix& a);

struct SpanDistance {
  double distance = 0.0;
  bool rank_deficient = false;
};

/// Distance from x to the column span of h under the Hermitian inner product.
SpanDistance dist_to_column_span(const ComplexVector& x, const ComplexMatrix& h);

struct NormalVector {
  ComplexVector v;
  bool rank_deficient = false;
};

/// Unit v with rows * v = 0 (bilinear pairing Z_j^T v = 0) for an (n-1) x n row matrix.
NormalVector unit_normal_rows(const ComplexMatrix& rows);
/// Unit v with H^T v = 0 for an n x (n-1) column matrix H.
NormalVector unit_normal_columns(const ComplexMatrix& columns);

/// Matrix with column k removed.
ComplexMatrix drop_column(const ComplexMatrix& a, Eigen::Index k);

}  // namespace rmlab
