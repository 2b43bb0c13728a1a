#pragma once
// Independent reference computations. Nothing here calls into the library's
// numerical kernels; only plain loops and std:: math.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "rmlab/types.hpp"

namespace oracle {

using rmlab::Complex;
using rmlab::ComplexMatrix;
using rmlab::ComplexVector;

/// dist([v]^T theta, Z^{2n}) straight from the definition.
inline double lattice_residual(const ComplexVector& v, double t1, double t2) {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double x = t1 * v(k).real() + t2 * v(k).imag();
    const double y = -t1 * v(k).imag() + t2 * v(k).real();
    const double dx = x - std::round(x);
    const double dy = y - std::round(y);
    sum += dx * dx + dy * dy;
  }
  return std::sqrt(sum);
}

/// Smallest ||theta|| over grid points (i h, j h) in the disk of radius `radius`
/// that satisfy the LCD condition; nullopt when none does.
inline std::optional<double> grid_lcd(const ComplexVector& v, double alpha, double gamma, double radius, double h) {
  const auto steps = static_cast<long long>(std::ceil(radius / h));
  std::optional<double> best;
  for (long long i = -steps; i <= steps; ++i) {
    const double t1 = static_cast<double>(i) * h;
    for (long long j = -steps; j <= steps; ++j) {
      const double t2 = static_cast<double>(j) * h;
      const double norm = std::sqrt(t1 * t1 + t2 * t2);
      if (norm > radius || norm == 0.0 || (best && norm >= *best)) continue;
      if (lattice_residual(v, t1, t2) < std::min(gamma * norm, alpha)) best = norm;
    }
  }
  return best;
}

/// 1-D grid oracle for the real lcd: smallest t = i h in (0, radius] with dist(t v, Z^n) < min(gamma t, alpha).
inline std::optional<double> grid_real_lcd(const rmlab::RealVector& v, double alpha, double gamma, double radius,
                                           double h) {
  for (long long i = 1; static_cast<double>(i) * h <= radius; ++i) {
    const double t = static_cast<double>(i) * h;
    double sum = 0.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      const double d = t * v(k) - std::round(t * v(k));
      sum += d * d;
    }
    if (std::sqrt(sum) < std::min(gamma * t, alpha)) return t;
  }
  return std::nullopt;
}

/// Distance from hat(v) to s-sparse vectors by trying every support of size s.
inline double brute_dist_to_sparse(const ComplexVector& v, std::size_t s) {
  const auto n = static_cast<std::size_t>(v.size());
  std::vector<double> hat(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    hat[k] = v(static_cast<Eigen::Index>(k)).real();
    hat[n + k] = v(static_cast<Eigen::Index>(k)).imag();
  }
  const std::size_t m = 2 * n;
  double best = std::numeric_limits<double>::infinity();
  s = std::min(s, m);
  std::vector<bool> keep(m, false);
  std::fill(keep.begin(), keep.begin() + static_cast<long>(s), true);
  do {
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k)
      if (!keep[k]) sum += hat[k] * hat[k];
    best = std::min(best, std::sqrt(sum));
  } while (std::prev_permutation(keep.begin(), keep.end()));
  return best;
}

/// Laplace cofactor expansion.
inline Complex cofactor_det(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  if (n == 1) return a(0, 0);
  Complex det = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    ComplexMatrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index c2 = 0;
      for (Eigen::Index c = 0; c < n; ++c)
        if (c != j) minor(r - 1, c2++) = a(r, c);
    }
    det += (j % 2 == 0 ? 1.0 : -1.0) * a(0, j) * cofactor_det(minor);
  }
  return det;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

inline double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

/// Matrices over 4 symbols with two equal rows or two equal columns.
/// n = 2: rows equal (16) + cols equal (16) - both (4) = 28.
inline std::uint64_t equal_line_count(int n) {
  const int cells = n * n;
  std::uint64_t total = 1;
  for (int c = 0; c < cells; ++c) total *= 4;
  std::uint64_t count = 0;
  std::vector<int> s(static_cast<std::size_t>(cells));
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t x = code;
    for (int c = 0; c < cells; ++c) {
      s[static_cast<std::size_t>(c)] = static_cast<int>(x % 4);
      x /= 4;
    }
    bool hit = false;
    for (int p = 0; p < n && !hit; ++p)
      for (int q = p + 1; q < n && !hit; ++q) {
        bool row = true, col = true;
        for (int k = 0; k < n; ++k) {
          row &= s[static_cast<std::size_t>(p * n + k)] == s[static_cast<std::size_t>(q * n + k)];
          col &= s[static_cast<std::size_t>(k * n + p)] == s[static_cast<std::size_t>(k * n + q)];
        }
        hit = row || col;
      }
    count += hit;
  }
  return count;
}

/// Singular-matrix count over {+-1 +- i} using floating cofactor determinants
/// (entries are small integers, so the value is exact in double).
inline std::uint64_t singular_count_cofactor(int n) {
  static const Complex units[4] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  const int cells = n * n;
  std::uint64_t total = 1;
  for (int c = 0; c < cells; ++c) total *= 4;
  std::uint64_t count = 0;
  ComplexMatrix a(n, n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t x = code;
    for (int c = 0; c < cells; ++c) {
      a(c / n, c % n) = units[x % 4];
      x /= 4;
    }
    if (std::abs(cofactor_det(a)) < 0.5) ++count;
  }
  return count;
}

}  // namespace oracle
