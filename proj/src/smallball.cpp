#include "rmlab/smallball.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "rmlab/kernels.hpp"
#include "rmlab/vector_geometry.hpp"

namespace rmlab {

namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr std::uint64_t kEnumerationLimit = 10'000'000;

double atom_tolerance(double scale) { return 1e-9 * std::max(scale, 1e-300); }

/// max_i #{j : sorted[j] in [sorted[i], sorted[i] + width]}
std::size_t best_window(const std::vector<double>& sorted, double width) {
  std::size_t best = 0;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < sorted.size(); ++lo) {
    if (hi < lo) hi = lo;
    while (hi < sorted.size() && sorted[hi] - sorted[lo] <= width) ++hi;
    best = std::max(best, hi - lo);
  }
  return best;
}

/// max_i #{j : |p_j - p_i| <= radius}, points sorted by x.
std::size_t best_ball(const std::vector<double>& xs, const std::vector<double>& ys, double radius) {
  const std::span<const double> sx(xs), sy(ys);
  const double radius_sq = radius * radius;
  std::size_t best = 0;
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (xs[i] - xs[lo] > radius) ++lo;
    if (hi < i) hi = i;
    while (hi < xs.size() && xs[hi] - xs[i] <= radius) ++hi;
    const std::size_t count = kernels::count_within(sx.subspan(lo, hi - lo), sy.subspan(lo, hi - lo), xs[i], ys[i], radius_sq);
    best = std::max(best, count);
  }
  return best;
}

ConcentrationEstimate summarize(double epsilon, std::size_t lower_count, std::size_t upper_count, std::size_t trials) {
  ConcentrationEstimate out;
  out.epsilon = epsilon;
  out.trials = trials;
  const Proportion p = proportion(lower_count, trials);
  out.lower = p.p;
  out.stderr = p.stderr;
  out.ci_low = p.ci_low;
  out.ci_high = p.ci_high;
  out.upper = static_cast<double>(upper_count) / static_cast<double>(trials);
  return out;
}

}  // namespace

void SmallBallBoundParams::validate() const {
  require(c_big > 0.0 && c_small > 0.0 && alpha > 0.0 && gamma > 0.0, "small-ball bound parameters must be positive");
}

Proportion proportion(std::size_t hits, std::size_t trials) {
  require(trials > 0, "proportion needs at least one trial");
  Proportion out;
  const double n = static_cast<double>(trials);
  out.p = static_cast<double>(hits) / n;
  out.stderr = std::sqrt(out.p * (1.0 - out.p) / n);
  if (hits >= 30 && trials - hits >= 30) {
    out.ci_low = std::max(0.0, out.p - kZ95 * out.stderr);
    out.ci_high = std::min(1.0, out.p + kZ95 * out.stderr);
  } else {
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (out.p + z2 / (2.0 * n)) / denom;
    const double half = kZ95 / denom * std::sqrt(out.p * (1.0 - out.p) / n + z2 / (4.0 * n * n));
    out.ci_low = std::max(0.0, center - half);
    out.ci_high = std::min(1.0, center + half);
  }
  return out;
}

ConcentrationEstimate levy_1d(const RealVector& a, const ScalarDistribution& dist, double epsilon,
                              std::size_t trials, RandomStream& stream) {
  require(a.size() > 0, "levy_1d needs a nonempty coefficient vector");
  require(trials >= 1, "levy_1d needs at least one trial");
  require(epsilon >= 0.0, "levy_1d needs epsilon >= 0");
  std::vector<double> sums(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    RandomStream sub = stream.substream(t);
    double s = 0.0;
    for (Eigen::Index k = 0; k < a.size(); ++k) s += a(k) * sample_real_scalar(dist, sub);
    sums[t] = s;
  }
  std::sort(sums.begin(), sums.end());
  const double tol = atom_tolerance(a.lpNorm<1>());
  return summarize(epsilon, best_window(sums, 2.0 * epsilon + tol), best_window(sums, 4.0 * epsilon + tol), trials);
}

double levy_1d_exact(const RealVector& a, const ScalarDistribution& dist, double epsilon) {
  require(a.size() > 0, "levy_1d_exact needs a nonempty coefficient vector");
  require(dist.finitely_supported(), "levy_1d_exact needs a finitely supported law");
  require(epsilon >= 0.0, "levy_1d_exact needs epsilon >= 0");
  const auto& values = dist.support();
  const auto& weights = dist.weights();
  const std::size_t m = values.size();
  const auto n = static_cast<std::size_t>(a.size());
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    require(total <= kEnumerationLimit / m, "levy_1d_exact: enumeration exceeds 10^7 outcomes");
    total *= m;
  }

  std::vector<std::pair<double, double>> outcomes;
  outcomes.reserve(total);
  std::vector<std::size_t> digits(n, 0);
  for (std::uint64_t count = 0; count < total; ++count) {
    double s = 0.0, w = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      s += a(static_cast<Eigen::Index>(k)) * values[digits[k]];
      w *= weights[digits[k]];
    }
    outcomes.emplace_back(s, w);
    for (std::size_t k = 0; k < n; ++k) {
      if (++digits[k] < m) break;
      digits[k] = 0;
    }
  }
  std::sort(outcomes.begin(), outcomes.end());
  const double width = 2.0 * epsilon + atom_tolerance(a.lpNorm<1>());
  double best = 0.0, window = 0.0;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < outcomes.size(); ++lo) {
    if (hi < lo) {
      hi = lo;
      window = 0.0;
    }
    while (hi < outcomes.size() && outcomes[hi].first - outcomes[lo].first <= width) window += outcomes[hi++].second;
    best = std::max(best, window);
    window -= outcomes[lo].second;
  }
  return std::min(best, 1.0);
}

ConcentrationEstimate levy_2d(const ComplexVector& v, const GenuinelyComplexSpec& spec, double epsilon,
                              std::size_t trials, RandomStream& stream) {
  require(trials >= 1, "levy_2d needs at least one trial");
  require(epsilon >= 0.0, "levy_2d needs epsilon >= 0");
  require(v.size() > 0, "levy_2d needs a nonempty vector");
  std::vector<std::pair<double, double>> points(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    RandomStream sub = stream.substream(t);
    double x = 0.0, y = 0.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      const Complex z = sample_complex_scalar(spec, sub);
      x += v(k).real() * z.real() - v(k).imag() * z.imag();
      y += v(k).imag() * z.real() + v(k).real() * z.imag();
    }
    points[t] = {x, y};
  }
  std::sort(points.begin(), points.end());
  std::vector<double> xs(trials), ys(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    xs[t] = points[t].first;
    ys[t] = points[t].second;
  }
  const double tol = atom_tolerance(v.cwiseAbs().sum() * 2.0);
  return summarize(epsilon, best_ball(xs, ys, epsilon + tol), best_ball(xs, ys, 2.0 * epsilon + tol), trials);
}

SmallBallBound smallball_bound(const LcdResult& lcd, const SmallBallBoundParams& bound, double epsilon) {
  bound.validate();
  SmallBallBound out;
  const double lcd_value = lcd.lower_bound();
  out.applicable = std::isinf(lcd_value) ? epsilon >= 0.0 : (lcd_value > 0.0 && epsilon >= 4.0 / lcd_value);
  out.bound_value = bound.c_big * epsilon * epsilon + bound.c_big * std::exp(-bound.c_small * bound.alpha * bound.alpha);
  return out;
}

}  // namespace rmlab
