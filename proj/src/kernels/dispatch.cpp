#include <atomic>
#include <cassert>

#include "rmlab/kernels.hpp"
#include "rmlab/types.hpp"

namespace rmlab::kernels {

namespace {

// -1: no override; otherwise static_cast<int>(Isa).
std::atomic<int> g_override{-1};

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(RMLAB_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() {
  static const Isa detected = isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  return detected;
}

Isa active_isa() {
  const int forced = g_override.load(std::memory_order_relaxed);
  return forced < 0 ? detected_isa() : static_cast<Isa>(forced);
}

void set_isa_override(std::optional<Isa> isa) {
  if (!isa) {
    g_override.store(-1);
    return;
  }
  require(isa_available(*isa), "requested kernel ISA is not available on this CPU");
  g_override.store(static_cast<int>(*isa));
}

void lattice_residual_sq(std::span<const double> re, std::span<const double> im,
                         std::span<const double> t1, std::span<const double> t2, std::span<double> out_sq) {
  assert(re.size() == im.size() && t1.size() == t2.size() && out_sq.size() >= t1.size());
#if defined(RMLAB_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return detail::lattice_residual_sq_avx2(re, im, t1, t2, out_sq);
#endif
  detail::lattice_residual_sq_scalar(re, im, t1, t2, out_sq);
}

std::size_t count_within(std::span<const double> xs, std::span<const double> ys, double cx, double cy,
                         double radius_sq) {
  assert(xs.size() == ys.size());
#if defined(RMLAB_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return detail::count_within_avx2(xs, ys, cx, cy, radius_sq);
#endif
  return detail::count_within_scalar(xs, ys, cx, cy, radius_sq);
}

}  // namespace rmlab::kernels
