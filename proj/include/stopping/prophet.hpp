#pragma once

#include "stopping/distribution.hpp"

namespace stopping {

/// Worst-case guarantee of the monopoly-price threshold over all
/// maximum-value laws with given mean and variance.
struct ProphetSolution {
  double cv2 = 0.0;   ///< squared coefficient of variation sigma^2 / mu^2
  double z = 1.0;     ///< worst-case ratio pi_star / mean, in (0, 1]
  double pi = 0.0;    ///< worst-case flat revenue level z * mu
  double k_top = 0.0; ///< support top pi * exp(mu/pi - 1) of the worst law
  /// Best closed-form relaxation (c(beta) + beta log(1 + cv2))^-1 over the
  /// tangent-slope grid; always <= z.
  double explicit_bound = 0.0;
  double beta_used = 0.0;  ///< tangent parameter (> 1) attaining the above
};

/// Convex gauge g(t) = (2 e^{t-1} - 1) / t^2 linking the worst-case ratio
/// to the moments: the implicit equation for z is g(1/z) = 1 + cv2.
/// Increasing for t >= 1 with g(1) = 1; its logarithm is convex, which is
/// what makes the tangent-line relaxation below a valid lower bound.
double g_gauge(double t);

/// d/dt g(t).
double g_gauge_deriv(double t);

/// log g(t) and its derivative, stable for large t (no overflow).
double g_gauge_log(double t);
double g_gauge_log_slope(double t);

/// Solves 2 z^2 e^{1/z - 1} - z^2 = 1 + sigma2/mu^2 for z on (0, 1] by
/// bisection plus a Newton polish (residual at machine precision for
/// moderate cv2), then fills the worst-case revenue level, support top, and
/// the best explicit bound over a 10^4-point tangent grid with slope
/// parameter alpha in (1, 40].  cv2 = 0 returns z = 1 exactly.
/// Requires mu > 0 and sigma2 >= 0.
ProphetSolution solve_worst_ratio(double mu, double sigma2);

/// The law attaining the worst case for the given moments: an
/// equal-revenue segment on (pi, k_top] with an atom of mass pi/k_top at
/// k_top (a point mass at mu when sigma2 = 0).  Its mean and variance
/// reproduce (mu, sigma2) within 1e-8 relative.
DistPtr worst_case_distribution(double mu, double sigma2);

/// Closed-form guarantee (c(beta) + beta log(1 + cv2))^-1, where beta > 1
/// is the reciprocal tangent slope of log g at some alpha > 1 and
/// c(beta) = alpha - beta log g(alpha).  Valid (<= the implicit z) for
/// every beta > 1 because log g is convex.  Throws invalid-argument when
/// beta <= 1 (no tangent point alpha > 1 exists).
double explicit_log_bound(double cv2, double beta);

}  // namespace stopping
