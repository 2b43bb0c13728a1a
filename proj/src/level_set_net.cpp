#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rmlab/kernels.hpp"
#include "rmlab/lcd.hpp"
#include "rmlab/realify.hpp"

namespace rmlab {

namespace {

std::int64_t squared_budget(double radius) {
  return static_cast<std::int64_t>(std::floor(radius * radius + 1e-9));
}

void enumerate_into(int dim, std::int64_t budget, IntVector& current, int pos, std::vector<IntVector>& out) {
  if (pos == dim) {
    out.push_back(current);
    return;
  }
  const auto bound = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(budget))));
  for (std::int64_t x = -bound; x <= bound; ++x) {
    if (x * x > budget) continue;
    current(pos) = x;
    enumerate_into(dim, budget - x * x, current, pos + 1, out);
  }
}

}  // namespace

std::vector<Point2> annulus_net(double d, double r) {
  require(d > 0.0 && r > 0.0, "annulus net needs positive D and r");
  require(r < d, "annulus net needs r < D");
  // Rings D = rho_0 < ... < rho_J = 2D at spacing <= r, each with the same
  // angular step delta <= r / (2D); any theta is within r/2 + 2D delta/2 <= r.
  const auto rings = static_cast<long long>(std::ceil(d / r));
  const auto spokes = static_cast<long long>(std::ceil(4.0 * std::numbers::pi * d / r));
  std::vector<Point2> points;
  points.reserve(static_cast<std::size_t>((rings + 1) * spokes));
  for (long long j = 0; j <= rings; ++j) {
    const double rho = d + d * static_cast<double>(j) / static_cast<double>(rings);
    for (long long k = 0; k < spokes; ++k) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(spokes);
      points.emplace_back(rho * std::cos(phi), rho * std::sin(phi));
    }
  }
  return points;
}

std::uint64_t lattice_point_count(int dim, double radius) {
  require(dim >= 1, "lattice dimension must be positive");
  require(radius >= 0.0 && std::isfinite(radius), "lattice radius must be finite and nonnegative");
  const std::int64_t budget = squared_budget(radius);
  // ways[s] = number of points of the current dimension with squared norm exactly s
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(budget) + 1, 0);
  ways[0] = 1;
  for (int d = 0; d < dim; ++d) {
    std::vector<std::uint64_t> next(ways.size(), 0);
    for (std::int64_t s = 0; s <= budget; ++s) {
      if (ways[s] == 0) continue;
      for (std::int64_t x = 0; s + x * x <= budget; ++x) {
        const std::uint64_t mult = x == 0 ? 1 : 2;
        std::uint64_t add = 0, sum = 0;
        require(!__builtin_mul_overflow(ways[s], mult, &add), "lattice point count overflows 64 bits");
        require(!__builtin_add_overflow(next[s + x * x], add, &sum), "lattice point count overflows 64 bits");
        next[s + x * x] = sum;
      }
    }
    ways = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto w : ways) require(!__builtin_add_overflow(total, w, &total), "lattice point count overflows 64 bits");
  return total;
}

std::vector<IntVector> enumerate_lattice_points(int dim, double radius, std::uint64_t limit) {
  const std::uint64_t count = lattice_point_count(dim, radius);
  require(count <= limit, "lattice enumeration exceeds the configured limit");
  std::vector<IntVector> out;
  out.reserve(count);
  IntVector current = IntVector::Zero(dim);
  enumerate_into(dim, squared_budget(radius), current, 0, out);
  return out;
}

LevelSetNet::LevelSetNet(int n, double d, const LcdParams& params, std::uint64_t materialize_limit)
    : n_(n), d_(d), alpha_(params.alpha) {
  params.validate();
  require(n >= 1, "level-set net dimension must be positive");
  require(d > 0.0, "level-set net needs D > 0");
  r_ = d * alpha_ / (alpha_ + 2.0 * d);
  annulus_ = annulus_net(d_, r_);

  std::uint64_t lattice = 0;
  bool overflow = false;
  try {
    lattice = lattice_point_count(2 * n, lattice_radius());
  } catch (const DomainError&) {
    overflow = true;
  }
  std::uint64_t card = 0;
  if (overflow || __builtin_mul_overflow(lattice, static_cast<std::uint64_t>(annulus_.size()), &card))
    card = std::numeric_limits<std::uint64_t>::max();
  cardinality_ = card;

  if (cardinality_ <= materialize_limit) {
    const auto lattice_points = enumerate_lattice_points(2 * n, lattice_radius(), materialize_limit);
    vectors_.reserve(cardinality_);
    for (const auto& theta : annulus_)
      for (const auto& p : lattice_points) vectors_.push_back(solve(theta, p));
    materialized_ = true;
  }
}

ComplexVector LevelSetNet::solve(const Point2& theta, const IntVector& p) {
  require(p.size() % 2 == 0, "lattice vector must have even length");
  const double norm_sq = theta.squaredNorm();
  require(norm_sq > 0.0, "level-set net solve needs theta != 0");
  const Eigen::Index n = p.size() / 2;
  ComplexVector v(n);
  // (t1 t2; t2 -t1) squares to ||theta||^2 I.
  for (Eigen::Index k = 0; k < n; ++k) {
    const double pk = static_cast<double>(p(k)), pn = static_cast<double>(p(n + k));
    v(k) = Complex((theta(0) * pk + theta(1) * pn) / norm_sq, (theta(1) * pk - theta(0) * pn) / norm_sq);
  }
  return v;
}

std::optional<NetMatch> LevelSetNet::nearest(const ComplexVector& v) const {
  require(v.size() == n_, "level-set net query has the wrong dimension");
  const std::size_t m = annulus_.size();
  std::vector<double> re(v.size()), im(v.size()), t1(m), t2(m), res(m);
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    re[k] = v(k).real();
    im[k] = v(k).imag();
  }
  for (std::size_t j = 0; j < m; ++j) {
    t1[j] = annulus_[j](0);
    t2[j] = annulus_[j](1);
  }
  kernels::lattice_residual_sq(re, im, t1, t2, res);
  // ||v - v'|| = ||[v]^T theta' - p|| / ||theta'|| for the rounded p.
  std::vector<double> dist(m);
  for (std::size_t j = 0; j < m; ++j) dist[j] = std::sqrt(res[j]) / annulus_[j].norm();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  const double radius = lattice_radius();
  for (std::size_t j : order) {
    const RealVector image = bracket_transpose_apply(v, annulus_[j]);
    IntVector p(image.size());
    for (Eigen::Index k = 0; k < image.size(); ++k) p(k) = static_cast<std::int64_t>(std::nearbyint(image(k)));
    if (p.cast<double>().norm() > radius * (1.0 + 1e-12)) continue;
    NetMatch match;
    match.vector = solve(annulus_[j], p);
    match.theta = annulus_[j];
    match.p = std::move(p);
    match.distance = (v - match.vector).norm();
    return match;
  }
  return std::nullopt;
}

NetMatch LevelSetNet::member_near(const Point2& theta, const IntVector& p, const ComplexVector& v) const {
  require(!annulus_.empty(), "level-set net has an empty annulus");
  require(p.size() == 2 * n_ && v.size() == n_, "level-set net member query has the wrong dimension");
  std::size_t best = 0;
  double best_dist = (annulus_[0] - theta).norm();
  for (std::size_t j = 1; j < annulus_.size(); ++j) {
    const double d = (annulus_[j] - theta).norm();
    if (d < best_dist) {
      best_dist = d;
      best = j;
    }
  }
  NetMatch match;
  match.theta = annulus_[best];
  match.p = p;
  match.vector = solve(match.theta, p);
  match.distance = (v - match.vector).norm();
  return match;
}

}  // namespace rmlab
