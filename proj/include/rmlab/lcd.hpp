#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rmlab/types.hpp"
#include "rmlab/vector_geometry.hpp"

namespace rmlab {

/// Parameters of the essential LCD: gamma in (0, 1), alpha > 0.
struct LcdParams {
  double alpha = 1.0;
  double gamma = 0.1;

  void validate() const;
};

enum class LcdKind { Finite, AtLeast };

/// Outcome of an LCD search.
///
/// Finite: `value` is the norm of a verified feasible witness and approximates
/// the infimum from above; the infimum lies in [certified_lower, value].
/// AtLeast: no feasible theta with norm below `value` survives the
/// Lipschitz certificate; `value == certified_lower`.
struct LcdResult {
  LcdKind kind = LcdKind::AtLeast;
  double value = 0.0;
  std::optional<Point2> witness_theta;  // real_lcd stores (theta_hat, 0)
  std::optional<IntVector> witness_p;
  double residual = 0.0;
  double certified_lower = 0.0;
  double certified_resolution = 0.0;

  bool finite() const { return kind == LcdKind::Finite; }
  /// Smallest value the LCD can take given this result.
  double lower_bound() const { return finite() ? certified_lower : value; }
};

struct Feasibility {
  bool feasible = false;
  double residual = 0.0;
  IntVector nearest_p;
};

/// p = rint([v]^T theta), residual = ||[v]^T theta - p||, feasible iff residual < min(gamma ||theta||, alpha).
Feasibility lcd_feasibility(const ComplexVector& v, const Point2& theta, const LcdParams& params);

/// 1-D lcd of a real unit vector over theta_hat in (0, search_bound].
LcdResult real_lcd(const RealVector& v, const LcdParams& params, double search_bound, double resolution);

/// Complex LCD of a unit vector over the disk ||theta|| <= search_bound.
///
/// Best-first branch and bound over squares of one quarter-plane (the
/// feasible set is invariant under theta -> (-t2, t1)). A square is discarded
/// when the 1-Lipschitz residual bound certifies infeasibility; squares smaller
/// than `resolution` that cannot be decided bound the certified_lower value.
/// The disk ||theta|| < 1 / (2 ||v||_inf) is infeasible exactly and skipped.
LcdResult complex_lcd(const ComplexVector& v, const LcdParams& params, double search_bound,
                      double resolution);

/// Default search cap 10^3 sqrt(n).
double default_search_bound(Eigen::Index n);
/// Default grid resolution gamma * target / 8.
double default_resolution(const LcdParams& params, double target);

/// Constants of the incompressible-vector LCD lower bound.
struct LcdConstants {
  int k = 0;
  double c_prime = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;

  /// Objective min{c' a, sqrt(1 - c'^2) a - c' k}, a = nu2 sqrt(nu1) / (2 sqrt 2).
  static double objective(const SpreadParams& spread, int k, double c_prime);
  /// Every invariant of the constants, evaluated by direct substitution.
  bool satisfies_invariants(const SpreadParams& spread) const;
};

/// k = least integer with 1/k^2 < nu1/4; c' by golden-section maximization of the
/// objective; gamma = 0.99 * objective; lambda = 0.99 / (nu3 + k + sqrt(2) gamma / sqrt(nu1)).
LcdConstants derive_lcd_constants(const SpreadParams& spread);

/// r-net of the annulus {D <= ||theta|| <= 2D} made of concentric rings; every
/// point lies in the annulus.
std::vector<Point2> annulus_net(double d, double r);

/// Number of integer points in the closed ball of the given radius.
std::uint64_t lattice_point_count(int dim, double radius);
/// All integer points in the closed ball; throws when there are more than `limit`.
std::vector<IntVector> enumerate_lattice_points(int dim, double radius, std::uint64_t limit = 10'000'000);

struct NetMatch {
  ComplexVector vector;
  Point2 theta;
  IntVector p;
  double distance = 0.0;
};

/// Net of the LCD level set S_D = {v : D <= LCD(v) <= 2D}.
///
/// Members are the unique v' with [v']^T theta' = p for theta' in the annulus
/// net and p in Z^{2n} of norm at most alpha + 2D. The full product is
/// materialized only when it is at most `materialize_limit` vectors; queries
/// work either way.
class LevelSetNet {
 public:
  LevelSetNet(int n, double d, const LcdParams& params, std::uint64_t materialize_limit = 1'000'000);

  int n() const { return n_; }
  double d() const { return d_; }
  double r() const { return r_; }
  double alpha() const { return alpha_; }
  double mesh() const { return 2.0 * alpha_ / d_; }
  double lattice_radius() const { return alpha_ + 2.0 * d_; }
  const std::vector<Point2>& annulus_points() const { return annulus_; }
  bool materialized() const { return materialized_; }
  const std::vector<ComplexVector>& net_vectors() const { return vectors_; }
  /// |annulus| * |lattice points|, whether or not materialized.
  std::uint64_t cardinality() const { return cardinality_; }

  /// Unique v' with [v']^T theta' = p; theta' must be nonzero.
  static ComplexVector solve(const Point2& theta, const IntVector& p);

  /// Nearest member to v over the whole net.
  std::optional<NetMatch> nearest(const ComplexVector& v) const;
  /// Member built from the annulus point nearest to `theta` and the given p.
  NetMatch member_near(const Point2& theta, const IntVector& p, const ComplexVector& v) const;

 private:
  int n_;
  double d_;
  double r_;
  double alpha_;
  std::vector<Point2> annulus_;
  bool materialized_ = false;
  std::vector<ComplexVector> vectors_;
  std::uint64_t cardinality_ = 0;
};

}  // namespace rmlab
