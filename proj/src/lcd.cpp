#include "rmlab/lcd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "rmlab/kernels.hpp"
#include "rmlab/realify.hpp"

namespace rmlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Hard cap on branch-and-bound evaluations; exhausting it weakens the certificate, never the witness.
constexpr std::size_t kMaxCellEvaluations = 40'000'000;
constexpr int kBisectionSteps = 64;

struct Cell {
  double cx;
  double cy;
  double half;  // half side; for 1-D cells cy = 0 and half is the half width
  double norm_lo;
  double residual;
};

struct FartherFirst {
  bool operator()(const Cell& a, const Cell& b) const {
    if (a.norm_lo != b.norm_lo) return a.norm_lo > b.norm_lo;
    if (a.cx != b.cx) return a.cx > b.cx;
    return a.cy > b.cy;
  }
};

double square_norm_lo(double cx, double cy, double h) {
  const double dx = std::max(0.0, std::abs(cx) - h);
  const double dy = std::max(0.0, std::abs(cy) - h);
  return std::hypot(dx, dy);
}

double square_norm_hi(double cx, double cy, double h) { return std::hypot(std::abs(cx) + h, std::abs(cy) + h); }

/// Residual evaluator over the realified coordinates of v.
class ResidualOracle {
 public:
  explicit ResidualOracle(const ComplexVector& v) : re_(v.size()), im_(v.size()) {
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      re_[k] = v(k).real();
      im_[k] = v(k).imag();
    }
  }
  explicit ResidualOracle(const RealVector& v) : re_(v.data(), v.data() + v.size()), im_(v.size(), 0.0) {}

  double operator()(double t1, double t2) const {
    std::array<double, 1> a{t1}, b{t2}, out{};
    kernels::lattice_residual_sq(re_, im_, a, b, out);
    return std::sqrt(out[0]);
  }

  template <std::size_t N>
  std::array<double, N> batch(const std::array<double, N>& t1, const std::array<double, N>& t2) const {
    std::array<double, N> out{};
    kernels::lattice_residual_sq(re_, im_, t1, t2, out);
    for (auto& x : out) x = std::sqrt(x);
    return out;
  }

 private:
  std::vector<double> re_;
  std::vector<double> im_;
};

double threshold(const LcdParams& params, double norm) { return std::min(params.gamma * norm, params.alpha); }

struct SearchOutcome {
  double best = kInf;
  Point2 best_theta = Point2::Zero();
  double unresolved_lo = kInf;
};

/// Bisect along the ray through the feasible `theta` toward the infeasible radius `lower`;
/// returns a feasible point.
template <typename Feasible>
Point2 refine_along_ray(const Point2& theta, double lower, Feasible&& feasible) {
  const double hi_start = theta.norm();
  const Point2 dir = theta / hi_start;
  double lo = std::min(lower, hi_start);
  double hi = hi_start;
  Point2 best = theta;
  if (lo > 0.0 && feasible(Point2(lo * dir))) return Point2(lo * dir);
  for (int i = 0; i < kBisectionSteps; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const Point2 candidate = mid * dir;
    if (feasible(candidate)) {
      hi = mid;
      best = candidate;
    } else {
      lo = mid;
    }
  }
  return best;
}

/// Smallest t > 0 with ||t [v]^T u - p|| < min(gamma t, alpha) for the fixed lattice point p.
double radius_for_fixed_p(const ComplexVector& v, const IntVector& p, const LcdParams& params, double phi) {
  const RealVector au = bracket_transpose_apply(v, Point2(std::cos(phi), std::sin(phi)));
  const RealVector pd = p.cast<double>();
  const double aa = au.squaredNorm(), b = au.dot(pd), c = pd.squaredNorm();
  // Roots of (aa - g^2) t^2 - 2 b t + (c - k) for the two constraints.
  auto interval = [&](double quad, double constant) -> std::pair<double, double> {
    if (quad <= 0.0) return {kInf, -kInf};
    const double disc = b * b - quad * constant;
    if (disc <= 0.0) return {kInf, -kInf};
    const double root = std::sqrt(disc);
    return {(b - root) / quad, (b + root) / quad};
  };
  const auto [lo1, hi1] = interval(aa - params.gamma * params.gamma, c);
  const auto [lo2, hi2] = interval(aa, c - params.alpha * params.alpha);
  const double lo = std::max({lo1, lo2, 0.0});
  return lo < std::min(hi1, hi2) ? lo : kInf;
}

/// Moves a feasible witness toward the infimum of ||theta|| over the region of its lattice point.
template <typename Feasible>
Point2 polish_witness(const ComplexVector& v, const Point2& theta, const IntVector& p, const LcdParams& params,
                      double window, Feasible&& feasible) {
  const double phi0 = std::atan2(theta(1), theta(0));
  const double half = std::min(std::numbers::pi, window / theta.norm());
  constexpr int kScan = 256;
  double best_phi = phi0, best_t = radius_for_fixed_p(v, p, params, phi0);
  for (int i = 0; i <= kScan; ++i) {
    const double phi = phi0 - half + 2.0 * half * i / kScan;
    const double t = radius_for_fixed_p(v, p, params, phi);
    if (t < best_t) {
      best_t = t;
      best_phi = phi;
    }
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_phi - 2.0 * half / kScan, hi = best_phi + 2.0 * half / kScan;
  for (int iter = 0; iter < 80; ++iter) {
    const double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    if (radius_for_fixed_p(v, p, params, x1) < radius_for_fixed_p(v, p, params, x2)) hi = x2;
    else lo = x1;
  }
  const double phi = 0.5 * (lo + hi);
  const double t = radius_for_fixed_p(v, p, params, phi);
  if (!(t < theta.norm()) || !std::isfinite(t)) return theta;
  const Point2 dir(std::cos(phi), std::sin(phi));
  // Nudge outward until the kernel agrees, then keep the best feasible point.
  for (double scale = 1.0 + 1e-15; scale < 1.0 + 1e-6; scale = 1.0 + (scale - 1.0) * 4.0) {
    const Point2 candidate = t * scale * dir;
    if (candidate.norm() < theta.norm() && feasible(candidate)) return candidate;
  }
  return theta;
}

LcdResult finish(const SearchOutcome& found, double search_bound, const Point2& witness, double value,
                 const Feasibility& check) {
  LcdResult out;
  const double lower = std::min({found.unresolved_lo, found.best, search_bound});
  if (std::isfinite(found.best)) {
    out.kind = LcdKind::Finite;
    out.value = value;
    out.witness_theta = witness;
    out.witness_p = check.nearest_p;
    out.residual = check.residual;
    out.certified_lower = std::min(lower, value);
    out.certified_resolution = out.value - out.certified_lower;
  } else {
    out.kind = LcdKind::AtLeast;
    out.value = lower;
    out.certified_lower = lower;
    out.certified_resolution = 0.0;
  }
  return out;
}

}  // namespace

void LcdParams::validate() const {
  require(gamma > 0.0 && gamma < 1.0, "LCD gamma must lie in (0, 1)");
  require(alpha > 0.0, "LCD alpha must be positive");
}

double default_search_bound(Eigen::Index n) { return 1e3 * std::sqrt(static_cast<double>(n)); }

double default_resolution(const LcdParams& params, double target) { return params.gamma * target / 8.0; }

Feasibility lcd_feasibility(const ComplexVector& v, const Point2& theta, const LcdParams& params) {
  const RealVector image = bracket_transpose_apply(v, theta);
  Feasibility out;
  out.nearest_p.resize(image.size());
  for (Eigen::Index k = 0; k < image.size(); ++k)
    out.nearest_p(k) = static_cast<std::int64_t>(std::nearbyint(image(k)));
  out.residual = ResidualOracle(v)(theta(0), theta(1));
  out.feasible = out.residual < threshold(params, theta.norm());
  return out;
}

LcdResult complex_lcd(const ComplexVector& v, const LcdParams& params, double search_bound, double resolution) {
  params.validate();
  require_unit(v, "complex_lcd");
  require(search_bound > 0.0, "LCD search bound must be positive");
  require(resolution > 0.0, "LCD resolution must be positive");

  const ResidualOracle residual(v);
  const double inf_norm = v.cwiseAbs().maxCoeff();
  // Below this radius every entry of [v]^T theta lies in (-1/2, 1/2): p = 0 and residual = ||theta||.
  const double exclusion = 0.5 / inf_norm;

  SearchOutcome found;
  std::priority_queue<Cell, std::vector<Cell>, FartherFirst> queue;
  const double root_half = 0.5 * search_bound;
  queue.push({root_half, root_half, root_half, 0.0, residual(root_half, root_half)});
  std::size_t evaluations = 1;

  while (!queue.empty()) {
    const Cell cell = queue.top();
    if (cell.norm_lo >= std::min(found.best, search_bound)) break;
    queue.pop();
    if (evaluations >= kMaxCellEvaluations) {
      found.unresolved_lo = std::min(found.unresolved_lo, cell.norm_lo);
      break;
    }
    const double hi = square_norm_hi(cell.cx, cell.cy, cell.half);
    if (hi < exclusion) continue;
    const double center_norm = std::sqrt(cell.cx * cell.cx + cell.cy * cell.cy);
    const bool center_feasible =
        center_norm <= search_bound && cell.residual < threshold(params, center_norm);
    if (center_feasible && center_norm < found.best) {
      found.best = center_norm;
      found.best_theta = Point2(cell.cx, cell.cy);
    }
    const double half_diag = cell.half * std::sqrt(2.0);
    if (cell.residual - half_diag - threshold(params, hi) > 0.0) continue;
    if (2.0 * half_diag <= resolution) {
      if (!center_feasible) found.unresolved_lo = std::min(found.unresolved_lo, cell.norm_lo);
      continue;
    }
    const double q = 0.5 * cell.half;
    const std::array<double, 4> xs{cell.cx - q, cell.cx + q, cell.cx - q, cell.cx + q};
    const std::array<double, 4> ys{cell.cy - q, cell.cy - q, cell.cy + q, cell.cy + q};
    const auto res = residual.batch(xs, ys);
    evaluations += 4;
    for (std::size_t c = 0; c < 4; ++c) {
      const double lo = square_norm_lo(xs[c], ys[c], q);
      if (lo > search_bound || square_norm_hi(xs[c], ys[c], q) < exclusion) continue;
      queue.push({xs[c], ys[c], q, lo, res[c]});
    }
  }

  if (!std::isfinite(found.best)) return finish(found, search_bound, Point2::Zero(), 0.0, {});
  const auto feasible = [&](const Point2& theta) { return lcd_feasibility(v, theta, params).feasible; };
  const double lower = std::max(exclusion, std::min(found.unresolved_lo, found.best));
  Point2 witness = found.best_theta;
  if (feasible(witness)) {
    witness = refine_along_ray(witness, lower, feasible);
    const double window = std::max(resolution, witness.norm() - lower) * 2.0;
    witness = polish_witness(v, witness, lcd_feasibility(v, witness, params).nearest_p, params, window, feasible);
  }
  const Feasibility check = lcd_feasibility(v, witness, params);
  return finish(found, search_bound, witness, witness.norm(), check);
}

LcdResult real_lcd(const RealVector& v, const LcdParams& params, double search_bound, double resolution) {
  params.validate();
  require(v.size() > 0 && std::abs(v.norm() - 1.0) <= 1e-10, "real_lcd: input must be a unit vector");
  require(search_bound > 0.0, "LCD search bound must be positive");
  require(resolution > 0.0, "LCD resolution must be positive");

  const ResidualOracle residual(v);
  const double exclusion = 0.5 / v.cwiseAbs().maxCoeff();

  SearchOutcome found;
  std::priority_queue<Cell, std::vector<Cell>, FartherFirst> queue;
  const double root_half = 0.5 * search_bound;
  queue.push({root_half, 0.0, root_half, 0.0, residual(root_half, 0.0)});
  std::size_t evaluations = 1;

  while (!queue.empty()) {
    const Cell cell = queue.top();
    if (cell.norm_lo >= std::min(found.best, search_bound)) break;
    queue.pop();
    if (evaluations >= kMaxCellEvaluations) {
      found.unresolved_lo = std::min(found.unresolved_lo, cell.norm_lo);
      break;
    }
    const double hi = cell.cx + cell.half;
    if (hi < exclusion) continue;
    const bool center_feasible = cell.cx <= search_bound && cell.residual < threshold(params, cell.cx);
    if (center_feasible && cell.cx < found.best) {
      found.best = cell.cx;
      found.best_theta = Point2(cell.cx, 0.0);
    }
    if (cell.residual - cell.half - threshold(params, hi) > 0.0) continue;
    if (2.0 * cell.half <= resolution) {
      if (!center_feasible) found.unresolved_lo = std::min(found.unresolved_lo, cell.norm_lo);
      continue;
    }
    const double q = 0.5 * cell.half;
    const std::array<double, 2> xs{cell.cx - q, cell.cx + q};
    const std::array<double, 2> ys{0.0, 0.0};
    const auto res = residual.batch(xs, ys);
    evaluations += 2;
    for (std::size_t c = 0; c < 2; ++c) {
      const double lo = std::max(0.0, xs[c] - q);
      if (lo > search_bound || xs[c] + q < exclusion) continue;
      queue.push({xs[c], 0.0, q, lo, res[c]});
    }
  }

  const auto check_at = [&](double t) {
    Feasibility f;
    f.nearest_p.resize(v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k) f.nearest_p(k) = static_cast<std::int64_t>(std::nearbyint(t * v(k)));
    f.residual = residual(t, 0.0);
    f.feasible = f.residual < threshold(params, t);
    return f;
  };
  if (!std::isfinite(found.best)) return finish(found, search_bound, Point2::Zero(), 0.0, {});
  const double lower = std::max(exclusion, std::min(found.unresolved_lo, found.best));
  double value = found.best;
  if (check_at(value).feasible)
    value = refine_along_ray(found.best_theta, lower, [&](const Point2& t) { return check_at(t(0)).feasible; })(0);
  return finish(found, search_bound, Point2(value, 0.0), value, check_at(value));
}

double LcdConstants::objective(const SpreadParams& spread, int k, double c_prime) {
  const double a = spread.nu2 * std::sqrt(spread.nu1) / (2.0 * std::sqrt(2.0));
  return std::min(c_prime * a, std::sqrt(1.0 - c_prime * c_prime) * a - c_prime * k);
}

bool LcdConstants::satisfies_invariants(const SpreadParams& spread) const {
  const double a = spread.nu2 * std::sqrt(spread.nu1) / (2.0 * std::sqrt(2.0));
  const double second = std::sqrt(1.0 - c_prime * c_prime) * a - c_prime * k;
  return k > 0 && 1.0 / (static_cast<double>(k) * k) < spread.nu1 / 4.0 && c_prime > 0.0 && c_prime < 1.0 &&
         second > 0.0 && gamma > 0.0 && gamma < 1.0 && gamma < std::min(c_prime * a, second) && lambda > 0.0 &&
         (spread.nu3 + k + std::sqrt(2.0) * gamma / std::sqrt(spread.nu1)) * lambda < 1.0;
}

LcdConstants derive_lcd_constants(const SpreadParams& spread) {
  spread.validate();
  LcdConstants c;
  c.k = 1;
  while (1.0 / (static_cast<double>(c.k) * c.k) >= spread.nu1 / 4.0) ++c.k;

  // Golden-section search; the objective is a minimum of concave functions, hence unimodal.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = 1.0;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = LcdConstants::objective(spread, c.k, x1), f2 = LcdConstants::objective(spread, c.k, x2);
  for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = LcdConstants::objective(spread, c.k, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = LcdConstants::objective(spread, c.k, x1);
    }
  }
  c.c_prime = 0.5 * (lo + hi);
  const double best = LcdConstants::objective(spread, c.k, c.c_prime);
  require(best > 0.0 && c.c_prime > 0.0, "spread parameters admit no c' with positive objective");
  c.gamma = 0.99 * best;
  c.lambda = 0.99 / (spread.nu3 + c.k + std::sqrt(2.0) * c.gamma / std::sqrt(spread.nu1));
  require(c.satisfies_invariants(spread), "derived LCD constants violate their invariants");
  return c;
}

}  // namespace rmlab
