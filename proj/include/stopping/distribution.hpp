#pragma once

#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace stopping {

/// Distribution of the maximum offer value: nonnegative support, known to the
/// decision maker.  Implementations are immutable and safe to share across
/// threads.
///
/// Conventions used throughout the library:
///  - cdf(t)       = P(X <= t), right-continuous;
///  - survival(t)  = P(X >= t) = 1 - cdf(t-), so atoms at t are *included*;
///  - quantile(q)  = inf{t : cdf(t) >= q} for q in (0,1);
///  - partial_expectation(a, b) = E[X 1{a <= X <= b}], atoms at both
///    endpoints included; b may be +infinity.
class Distribution {
 public:
  virtual ~Distribution() = default;

  virtual double cdf(double t) const = 0;

  /// P(X >= t).  Requires t >= 0; equals 1 for t <= support_lo() and 0 above
  /// the support.
  virtual double survival(double t) const;

  /// inf{t: cdf(t) >= q}; requires 0 < q < 1.
  virtual double quantile(double q) const = 0;

  virtual double mean() const = 0;
  virtual double variance() const = 0;

  virtual double partial_expectation(double a, double b) const = 0;

  /// k-th derivative of the cdf (k = 1, 2, 3) at an interior point of the
  /// absolutely continuous part.  Point-mass laws reject with
  /// unsupported-for-discrete.
  virtual double derivative(double t, int order) const;

  /// True when the law is purely atomic (density-based operations reject).
  virtual bool discrete() const { return false; }

  /// Atoms of the law as (value, mass) pairs, ascending; empty when none.
  virtual std::vector<std::pair<double, double>> atoms() const { return {}; }

  virtual double support_lo() const { return 0.0; }
  virtual double support_hi() const {
    return std::numeric_limits<double>::infinity();
  }

  /// Short human-readable parameterisation, e.g. "frechet(2.197, 0.613)".
  virtual std::string describe() const = 0;

 protected:
  /// Shared precondition check for survival(): rejects negative t.
  static void require_nonnegative(double t);
};

using DistPtr = std::shared_ptr<const Distribution>;

/// X ~ Exponential(rate): cdf 1 - exp(-rate t).
DistPtr make_exponential(double rate);

/// X ~ Frechet(shape, scale): cdf exp(-(t/scale)^-shape) on t > 0.
/// mean finite iff shape > 1; variance finite iff shape > 2.
DistPtr make_frechet(double shape, double scale);

/// Purely atomic law; atoms must be strictly increasing in value, have
/// positive mass, and masses must sum to 1 within 1e-12.
DistPtr make_point_masses(std::vector<std::pair<double, double>> atoms);

/// Equal-revenue segment: cdf 0 on (0, pi_lo], 1 - pi_lo/t on (pi_lo, top),
/// and an atom of mass pi_lo/top at top.  Every posted price in
/// [pi_lo, top] earns revenue exactly pi_lo.  pi_lo == top degenerates to a
/// point mass.
DistPtr make_truncated_pareto(double pi_lo, double top);

/// X = factor * Y for Y ~ base; factor > 0.
DistPtr make_scaled(DistPtr base, double factor);

}  // namespace stopping
