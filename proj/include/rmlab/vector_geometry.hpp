#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rmlab/types.hpp"

namespace rmlab {

/// Sphere decomposition thresholds; both strictly inside (0, 1).
struct DecompParams {
  double delta = 0.1;
  double rho = 0.3;

  void validate() const;
};

/// Spread-part thresholds nu1, nu2, nu3.
struct SpreadParams {
  double nu1 = 0.0;
  double nu2 = 0.0;
  double nu3 = 0.0;

  void validate() const;
  /// nu1 = delta rho^2 / 4, nu2 = rho / 2, nu3 = 2 / sqrt(2 delta).
  static SpreadParams defaults_for(const DecompParams& decomp);
};

enum class VectorKind { Sparse, Compressible, Incompressible };

struct VectorClass {
  VectorKind kind = VectorKind::Incompressible;
  double dist_to_sparse = 0.0;

  /// Sparse vectors are compressible too.
  bool compressible() const { return kind != VectorKind::Incompressible; }
};

/// Number of entries of hat(v) with magnitude > zero_tol.
std::size_t support_size(const ComplexVector& v, double zero_tol);
/// Same, with zero_tol = 1e-12 * ||hat(v)||_inf.
std::size_t support_size(const ComplexVector& v);

/// floor(2 delta n): the sparsity budget on hat(v).
std::size_t sparse_budget(Eigen::Index n, double delta);

/// Exact distance from hat(v) to the (2 delta n)-sparse vectors: the norm of
/// the 2n - floor(2 delta n) smallest-magnitude entries. Requires ||v|| = 1 +- 1e-10.
double dist_to_sparse(const ComplexVector& v, double delta);

/// Distance exactly rho classifies as Compressible.
VectorClass classify(const ComplexVector& v, const DecompParams& params);

struct SpreadSet {
  std::vector<std::size_t> indices;  // 0-based into hat(z), ascending
  bool meets_bound = false;          // |sigma| >= nu1 n
};

SpreadSet spread_set(const ComplexVector& z, const SpreadParams& params);

/// Throws DomainError unless | ||v|| - 1 | <= 1e-10.
void require_unit(const ComplexVector& v, const char* what);

}  // namespace rmlab
