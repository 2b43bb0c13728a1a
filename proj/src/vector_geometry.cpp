#include "rmlab/vector_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rmlab/realify.hpp"

namespace rmlab {

void DecompParams::validate() const {
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  require(rho > 0.0 && rho < 1.0, "rho must lie in (0, 1)");
}

void SpreadParams::validate() const {
  require(nu1 > 0.0 && nu2 > 0.0 && nu3 > 0.0, "spread parameters must be positive");
  require(nu2 < nu3, "spread parameters need nu2 < nu3");
  require(nu1 <= 2.0, "spread parameter nu1 must be at most 2");
}

SpreadParams SpreadParams::defaults_for(const DecompParams& decomp) {
  decomp.validate();
  SpreadParams p;
  p.nu1 = decomp.delta * decomp.rho * decomp.rho / 4.0;
  p.nu2 = decomp.rho / 2.0;
  p.nu3 = 2.0 / std::sqrt(2.0 * decomp.delta);
  return p;
}

void require_unit(const ComplexVector& v, const char* what) {
  require(std::abs(v.norm() - 1.0) <= 1e-10, std::string(what) + ": input must be a unit vector");
}

std::size_t support_size(const ComplexVector& v, double zero_tol) {
  require(zero_tol >= 0.0, "zero tolerance must be nonnegative");
  const RealVector h = hat(v);
  return static_cast<std::size_t>((h.array().abs() > zero_tol).count());
}

std::size_t support_size(const ComplexVector& v) {
  if (v.size() == 0) return 0;
  return support_size(v, 1e-12 * hat(v).lpNorm<Eigen::Infinity>());
}

std::size_t sparse_budget(Eigen::Index n, double delta) {
  // Slack absorbs products like 2 * 0.1 * 30 = 6.000000000000001 landing just below an integer.
  return static_cast<std::size_t>(std::floor(2.0 * delta * static_cast<double>(n) + 1e-9));
}

double dist_to_sparse(const ComplexVector& v, double delta) {
  require_unit(v, "dist_to_sparse");
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  const RealVector h = hat(v);
  std::vector<double> mags(h.size());
  for (Eigen::Index k = 0; k < h.size(); ++k) mags[k] = std::abs(h(k));
  std::sort(mags.begin(), mags.end());
  const std::size_t keep = std::min(sparse_budget(v.size(), delta), mags.size());
  double sum = 0.0;
  for (std::size_t k = 0; k + keep < mags.size(); ++k) sum += mags[k] * mags[k];
  return std::sqrt(sum);
}

VectorClass classify(const ComplexVector& v, const DecompParams& params) {
  params.validate();
  require_unit(v, "classify");
  VectorClass out;
  if (support_size(v) <= sparse_budget(v.size(), params.delta)) {
    out.kind = VectorKind::Sparse;
    out.dist_to_sparse = 0.0;
    return out;
  }
  out.dist_to_sparse = dist_to_sparse(v, params.delta);
  out.kind = out.dist_to_sparse <= params.rho ? VectorKind::Compressible : VectorKind::Incompressible;
  return out;
}

SpreadSet spread_set(const ComplexVector& z, const SpreadParams& params) {
  params.validate();
  require_unit(z, "spread_set");
  const double n = static_cast<double>(z.size());
  const double lo = params.nu2 / std::sqrt(n);
  const double hi = params.nu3 / std::sqrt(n);
  const RealVector h = hat(z);
  SpreadSet out;
  for (Eigen::Index k = 0; k < h.size(); ++k) {
    const double m = std::abs(h(k));
    if (m >= lo && m <= hi) out.indices.push_back(static_cast<std::size_t>(k));
  }
  out.meets_bound = static_cast<double>(out.indices.size()) >= params.nu1 * n;
  return out;
}

}  // namespace rmlab
