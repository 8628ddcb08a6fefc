#include "stopping/prophet.hpp"

#include <cmath>
#include <limits>

#include "stopping/error.hpp"
#include "stopping/numerics.hpp"

namespace stopping {

namespace {

void require_gauge_domain(double t) {
  if (!(t >= 1.0) || !std::isfinite(t))
    fail(errc::invalid_argument, "the gauge is used on t >= 1 only");
}

}  // namespace

double g_gauge_log(double t) {
  require_gauge_domain(t);
  // log g = (t - 1) + log(2 - e^{1-t}) - 2 log t: stable for all t >= 1
  // (the direct form 2 e^{t-1} - 1 overflows past t ~ 710).
  return (t - 1.0) + std::log(2.0 - std::exp(1.0 - t)) - 2.0 * std::log(t);
}

double g_gauge_log_slope(double t) {
  require_gauge_domain(t);
  return 1.0 / (1.0 - 0.5 * std::exp(1.0 - t)) - 2.0 / t;
}

double g_gauge(double t) { return std::exp(g_gauge_log(t)); }

double g_gauge_deriv(double t) { return g_gauge(t) * g_gauge_log_slope(t); }

ProphetSolution solve_worst_ratio(double mu, double sigma2) {
  if (!(mu > 0.0) || !std::isfinite(mu) || !(sigma2 >= 0.0) ||
      !std::isfinite(sigma2))
    fail(errc::invalid_argument, "need mu > 0 and finite sigma2 >= 0");

  ProphetSolution sol;
  sol.cv2 = sigma2 / (mu * mu);

  if (sol.cv2 == 0.0) {
    sol.z = 1.0;  // 2 e^0 - 1 = 1: the implicit equation is exact here
  } else {
    // Root of g(1/z) = 1 + cv2 in log space (monotone in z, no overflow):
    // positive at z -> 0+, nonpositive at z = 1.
    const double target = std::log1p(sol.cv2);
    double z = bisect(
        [&](double zz) { return g_gauge_log(1.0 / zz) - target; }, 1e-9, 1.0,
        1e-13);
    // Newton polish on the raw residual while its exponential is
    // representable, so the implicit equation holds to ~1e-13 relative.
    if (1.0 / z - 1.0 < 700.0) {
      for (int it = 0; it < 8; ++it) {
        const double e = std::exp(1.0 / z - 1.0);
        const double r = 2.0 * z * z * e - z * z - (1.0 + sol.cv2);
        if (std::fabs(r) < 1e-13 * (1.0 + sol.cv2)) break;
        const double dr = 4.0 * z * e - 2.0 * e - 2.0 * z;
        const double next = z - r / dr;
        if (!(next > 0.0) || !(next <= 1.0)) break;
        z = next;
      }
    }
    sol.z = z;
  }

  sol.pi = sol.z * mu;
  const double expo = 1.0 / sol.z - 1.0;
  sol.k_top = expo < 700.0 ? sol.pi * std::exp(expo)
                           : std::numeric_limits<double>::infinity();

  // Best tangent-line relaxation of the log gauge over a slope grid.
  const double lv = std::log1p(sol.cv2);
  double best = -std::numeric_limits<double>::infinity();
  double best_beta = 0.0;
  for (int j = 1; j <= 10000; ++j) {
    const double alpha = 1.0 + 39.0 * j / 10000.0;
    const double beta = 1.0 / g_gauge_log_slope(alpha);
    const double c = alpha - beta * g_gauge_log(alpha);
    const double bound = 1.0 / (c + beta * lv);
    if (bound > best) {
      best = bound;
      best_beta = beta;
    }
  }
  sol.explicit_bound = best;
  sol.beta_used = best_beta;
  return sol;
}

DistPtr worst_case_distribution(double mu, double sigma2) {
  const ProphetSolution sol = solve_worst_ratio(mu, sigma2);
  if (!std::isfinite(sol.k_top))
    fail(errc::invalid_argument,
         "moments too extreme: the worst-case support top overflows");
  return make_truncated_pareto(sol.pi, sol.k_top);
}

double explicit_log_bound(double cv2, double beta) {
  if (!(cv2 >= 0.0) || !std::isfinite(cv2))
    fail(errc::invalid_argument, "cv2 must be finite and >= 0");
  if (!(beta > 1.0) || !std::isfinite(beta))
    fail(errc::invalid_argument,
         "beta must exceed 1: reciprocal tangent slopes of the log gauge "
         "on alpha > 1 lie in (1, infinity)");
  // Tangent point: the alpha where log g has slope 1/beta.  The slope runs
  // from 0 at alpha = 1 up to 1 in the limit (log-convexity makes it
  // monotone), and behaves like 1 - 2/alpha far out, so 4/(beta-1) safely
  // over-shoots the crossing.
  const double target = 1.0 / beta;
  const double lo = 1.0 + 1e-12;
  double hi = std::max(4.0, 4.0 / (beta - 1.0));
  for (int guard = 0; g_gauge_log_slope(hi) < target; ++guard) {
    if (guard > 200)
      fail(errc::invalid_argument, "no tangent point found for this beta");
    hi *= 2.0;
  }
  const double alpha = bisect(
      [&](double a) { return g_gauge_log_slope(a) - target; }, lo, hi,
      1e-12 * hi);
  const double c = alpha - beta * g_gauge_log(alpha);
  return 1.0 / (c + beta * std::log1p(cv2));
}

}  // namespace stopping
