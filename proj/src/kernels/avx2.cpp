#include <immintrin.h>

#include <bit>

#include "rmlab/kernels.hpp"

namespace rmlab::kernels::detail {

// Vectorized across theta (four per register); the k loop runs in the same
// order as the scalar kernel so each lane reproduces it bit for bit.
void lattice_residual_sq_avx2(std::span<const double> re, std::span<const double> im,
                              std::span<const double> t1, std::span<const double> t2,
                              std::span<double> out_sq) {
  constexpr int kRound = _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC;
  const std::size_t n = re.size();
  const std::size_t count = t1.size();
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    const __m256d a = _mm256_loadu_pd(t1.data() + j);
    const __m256d b = _mm256_loadu_pd(t2.data() + j);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < n; ++k) {
      const __m256d r = _mm256_set1_pd(re[k]);
      const __m256d i = _mm256_set1_pd(im[k]);
      const __m256d x = _mm256_add_pd(_mm256_mul_pd(a, r), _mm256_mul_pd(b, i));
      const __m256d y = _mm256_sub_pd(_mm256_mul_pd(b, r), _mm256_mul_pd(a, i));
      const __m256d dx = _mm256_sub_pd(x, _mm256_round_pd(x, kRound));
      const __m256d dy = _mm256_sub_pd(y, _mm256_round_pd(y, kRound));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(dx, dx));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(dy, dy));
    }
    _mm256_storeu_pd(out_sq.data() + j, acc);
  }
  if (j < count)
    lattice_residual_sq_scalar(re, im, t1.subspan(j), t2.subspan(j), out_sq.subspan(j));
}

std::size_t count_within_avx2(std::span<const double> xs, std::span<const double> ys, double cx,
                              double cy, double radius_sq) {
  const __m256d vx = _mm256_set1_pd(cx);
  const __m256d vy = _mm256_set1_pd(cy);
  const __m256d vr = _mm256_set1_pd(radius_sq);
  std::size_t count = 0;
  std::size_t j = 0;
  for (; j + 4 <= xs.size(); j += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs.data() + j), vx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys.data() + j), vy);
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d2, vr, _CMP_LE_OQ));
    count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
  }
  if (j < xs.size()) count += count_within_scalar(xs.subspan(j), ys.subspan(j), cx, cy, radius_sq);
  return count;
}

}  // namespace rmlab::kernels::detail
