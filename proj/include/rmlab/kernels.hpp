#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

// Data-parallel inner loops with a scalar reference and SIMD variants.
//
// Every variant performs the same IEEE operations in the same order per
// output element (no FMA contraction), so results are bit-identical across
// variants; the equivalence tests rely on this.

namespace rmlab::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);
/// Best ISA the running CPU supports among those compiled in.
Isa detected_isa();
/// The ISA the dispatching entry points use: the override if set, else detected_isa().
Isa active_isa();
/// Force a variant (nullopt restores detection). Requesting an unsupported ISA throws.
void set_isa_override(std::optional<Isa> isa);
bool isa_available(Isa isa);

/// Realified lattice residuals for a batch of theta points:
///   out_sq[j] = sum_k (x_k - rint(x_k))^2 + (y_k - rint(y_k))^2
/// with x_k = t1_j re_k + t2_j im_k and y_k = -t1_j im_k + t2_j re_k,
/// i.e. dist([v]^T theta_j, Z^{2n})^2.
void lattice_residual_sq(std::span<const double> re, std::span<const double> im,
                         std::span<const double> t1, std::span<const double> t2, std::span<double> out_sq);

/// Number of points j with (xs_j - cx)^2 + (ys_j - cy)^2 <= radius_sq.
std::size_t count_within(std::span<const double> xs, std::span<const double> ys, double cx, double cy,
                         double radius_sq);

namespace detail {

void lattice_residual_sq_scalar(std::span<const double> re, std::span<const double> im,
                                std::span<const double> t1, std::span<const double> t2,
                                std::span<double> out_sq);
std::size_t count_within_scalar(std::span<const double> xs, std::span<const double> ys, double cx,
                                double cy, double radius_sq);
void lattice_residual_sq_avx2(std::span<const double> re, std::span<const double> im,
                              std::span<const double> t1, std::span<const double> t2,
                              std::span<double> out_sq);
std::size_t count_within_avx2(std::span<const double> xs, std::span<const double> ys, double cx,
                              double cy, double radius_sq);

}  // namespace detail

}  // namespace rmlab::kernels
