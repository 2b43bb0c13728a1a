#pragma once

#include <cstddef>
#include <optional>

#include "rmlab/ensembles.hpp"
#include "rmlab/lcd.hpp"
#include "rmlab/random_stream.hpp"
#include "rmlab/types.hpp"

namespace rmlab {

/// Empirical Levy concentration L(S, eps) with a rigorous (eps, 2eps) bracket.
struct ConcentrationEstimate {
  double epsilon = 0.0;
  double lower = 0.0;  // best sample-centered eps-ball
  double upper = 0.0;  // best sample-centered 2 eps-ball
  double stderr = 0.0;
  double ci_low = 0.0;  // 95% interval for `lower`; Wilson when the count is below 30
  double ci_high = 0.0;
  std::size_t trials = 0;
  std::optional<double> exact;
};

struct SmallBallBoundParams {
  double c_big = 1.0;
  double c_small = 1.0;
  double alpha = 1.0;
  double gamma = 0.1;

  void validate() const;
};

struct SmallBallBound {
  bool applicable = false;
  double bound_value = 0.0;
};

/// Samples S = sum a_k xi_k. In 1-D the sup over intervals of length 2 eps is
/// exact on the empirical measure (sorted sliding window); eps = 0 gives the
/// largest atom frequency. Atoms are identified up to 1e-9 * ||a||_1.
ConcentrationEstimate levy_1d(const RealVector& a, const ScalarDistribution& dist, double epsilon,
                              std::size_t trials, RandomStream& stream);

/// Exact sup_w P(|S - w| <= eps) by enumerating all |support|^n outcomes (at most 10^7).
double levy_1d_exact(const RealVector& a, const ScalarDistribution& dist, double epsilon);

/// Samples the R^2 points [v] xi for xi in R^{2n} with iid base-law coordinates,
/// i.e. v^T zeta with zeta genuinely complex.
ConcentrationEstimate levy_2d(const ComplexVector& v, const GenuinelyComplexSpec& spec, double epsilon,
                              std::size_t trials, RandomStream& stream);

/// Applicable iff eps >= 4 / LCD (certified lower bound for AtLeast results);
/// bound = C eps^2 + C exp(-c alpha^2).
SmallBallBound smallball_bound(const LcdResult& lcd, const SmallBallBoundParams& bound, double epsilon);

/// Binomial proportion summary: (p, stderr, ci_low, ci_high).
struct Proportion {
  double p = 0.0;
  double stderr = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};
Proportion proportion(std::size_t hits, std::size_t trials);

}  // namespace rmlab
