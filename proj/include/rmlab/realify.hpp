#pragma once

#include <utility>

#include "rmlab/types.hpp"

namespace rmlab {

// Realification of complex vectors.
//
//   hat(v)  = (Re v_1..Re v_n, Im v_1..Im v_n) in R^{2n}
//   [v]     = | Re(v)^T  -Im(v)^T |   (2 x 2n, never materialized)
//             | Im(v)^T   Re(v)^T |
//
// [v] hat(a) = (Re(v^T a), Im(v^T a)) uses the bilinear product v^T a, not v^* a.

RealVector hat(const ComplexVector& v);
/// Inverse of hat; requires even length.
ComplexVector complexify(const RealVector& realified);

/// [v] hat(a): the bilinear product v^T a as a point of R^2.
Point2 bracket_apply(const ComplexVector& v, const ComplexVector& a);

/// [v]^T theta in R^{2n}: entry k = t1 Re v_k + t2 Im v_k, entry n+k = -t1 Im v_k + t2 Re v_k.
RealVector bracket_transpose_apply(const ComplexVector& v, const Point2& theta);

/// theta' = (-t2, t1), p' = (-p_upper | p_lower). Preserves ||[v]^T theta - p|| and ||theta||.
std::pair<Point2, IntVector> symmetry_swap(const Point2& theta, const IntVector& p);

}  // namespace rmlab
