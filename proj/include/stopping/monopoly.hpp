#pragma once

#include <optional>

#include "stopping/distribution.hpp"

namespace stopping {

/// Output of solve_monopoly().
struct MonopolyResult {
  double p_star;   ///< smallest revenue-maximising posted price
  double pi_star;  ///< optimal revenue p_star * P(X >= p_star)
  /// Curvature constant (1-F(p*))^2 / (2F'(p*) + p* F''(p*)); absent when the
  /// law is discrete or the curvature degenerates (flat revenue).
  std::optional<double> c_const;
  /// Heuristic: false when a second, well-separated near-optimal price
  /// exists (ties, plateaus).  See solve_monopoly() docs.
  bool unique;
};

/// Expected revenue of posting price p: p * P(X >= p).
double revenue(const Distribution& d, double p);

/// Finds the monopoly price p* = smallest maximiser of p * P(X >= p) and its
/// revenue.  Requires a finite mean (throws divergent-mean otherwise).
///
/// Numerics: atomic laws are solved exactly by atom enumeration (the
/// maximum is always attained at an atom).  Continuous laws use a
/// 10^4-point scan of [support_lo, quantile(1-1e-9)] followed by
/// golden-section refinement around the best scan cells; ties at resolution
/// 1e-9 resolve to the smallest price.  The `unique` flag is a scan-level
/// heuristic: it turns false when two cells more than 10 cells apart both
/// come within 1e-6 of the maximum.
MonopolyResult solve_monopoly(const Distribution& d);

/// Curvature constant C(F) = (1-F(p))^2 / (2F'(p) + p F''(p)) at a price p
/// (normally p*).  Throws degenerate-curvature when the denominator is
/// <= 1e-12 and propagates unsupported-for-discrete from derivative().
double c_constant(const Distribution& d, double p);

}  // namespace stopping
