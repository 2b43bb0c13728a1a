#include <cmath>

#include "rmlab/kernels.hpp"

namespace rmlab::kernels::detail {

void lattice_residual_sq_scalar(std::span<const double> re, std::span<const double> im,
                                std::span<const double> t1, std::span<const double> t2,
                                std::span<double> out_sq) {
  const std::size_t n = re.size();
  for (std::size_t j = 0; j < t1.size(); ++j) {
    const double a = t1[j], b = t2[j];
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double x = a * re[k] + b * im[k];
      const double y = b * re[k] - a * im[k];
      const double dx = x - std::nearbyint(x);
      const double dy = y - std::nearbyint(y);
      acc = acc + dx * dx;
      acc = acc + dy * dy;
    }
    out_sq[j] = acc;
  }
}

std::size_t count_within_scalar(std::span<const double> xs, std::span<const double> ys, double cx,
                                double cy, double radius_sq) {
  std::size_t count = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double dx = xs[j] - cx;
    const double dy = ys[j] - cy;
    if (dx * dx + dy * dy <= radius_sq) ++count;
  }
  return count;
}

}  // namespace rmlab::kernels::detail
