#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stopping/distribution.hpp"

namespace stopping {

/// Diagnostics accompanying a BoundReport.
struct BoundMeta {
  /// Half-width of the uniform-threshold window (the slack the randomized
  /// policy spreads below p*); absent when that bound was skipped.
  std::optional<double> eps_uniform;
  /// Certified slack of the partition construction (upper_partition minus
  /// the deterministic baseline); absent when skipped.
  std::optional<double> eps_partition;
  /// Steps the accepted partition slack needs to clear beta.
  std::optional<long long> iterations;
  /// Tail-revenue cutoff: smallest s with E[X 1{X >= s}] <= pi_star.
  std::optional<double> beta;
  /// Skip/fallback provenance, formatted "field:reason" (kebab-case reason,
  /// suitable for a CSV status cell).
  std::vector<std::string> notes;
};

/// The four certified bounds on the best worst-case payoff achievable with
/// n offers, at the law's own scale.  Optional fields are absent when their
/// preconditions failed (noted in meta.notes).
struct BoundReport {
  int n = 0;
  double lower_det = 0.0;        ///< deterministic baseline pi_star
  std::optional<double> lower_uniform;  ///< uniform-threshold policy value
  double upper_universal = 0.0;  ///< pi_star + mean/n
  std::optional<double> upper_partition;  ///< pi_star + eps*(n)
  BoundMeta meta;
};

/// Certified lower bound from the Uniform(p* - eps, p* + eps) threshold
/// policy with eps(n) = 3 (1-F(p*)) / ((2F'(p*) + p* F''(p*)) n): returns
/// the exact expected payoff against the ladder adversary (not a series
/// expansion), which is itself a valid lower bound.  Requires n >= 2, a
/// unique p*, three derivatives near p*, and eps < min(1, p*)
/// (precondition-failed otherwise).  A construction check verifies the
/// result is at least the deterministic baseline minus 1e-10.
double lower_bound_uniform(const Distribution& d, int n);

/// Universal upper bound pi_star + E[X]/n (finite mean required).
double upper_bound_universal(const Distribution& d, int n);

/// Tail-revenue cutoff beta = inf{s >= p*: E[X 1{X >= s}] <= pi_star},
/// located by bisection over [p*, quantile(1 - 1e-12)] until the tail
/// expectation brackets pi_star within 1e-9; the returned point always
/// satisfies the tail condition.  Finite whenever the mean is.
double beta_cutoff(const Distribution& d);

/// Number of steps of w <- (pi_star + eps) / P(X >= w), started at w0,
/// until w >= beta.  Requires eps > 0 and w0 < beta.  Throws
/// not-progressing when a step below beta advances w by less than 1e-15
/// (eps too small for the numeric precision) and search-too-large after
/// 10^7 steps.
long long count_iterations(const Distribution& d, double pi_star, double eps,
                           double w0, double beta);

/// Partition upper bound pi_star + eps*(n), where eps*(n) is the smallest
/// slack (relative tolerance 1e-6, feasible endpoint returned) such that
/// the iteration above reaches beta from support_lo in at most n-1 steps.
/// Requires n >= 2 and a finite mean.  Purely atomic laws with at most n
/// support points collapse to pi_star exactly (the adversary cannot hide
/// mass between offers).  Throws infeasible when even the largest bracket
/// slack needs more than n-1 steps.
double upper_bound_partition(const Distribution& d, int n);

/// upper_bound_partition with its working parts exposed.
struct PartitionDetail {
  double value = 0.0;       ///< the bound itself
  double eps_star = 0.0;    ///< accepted slack (0 when collapsed)
  long long iterations = 0; ///< steps the accepted slack needs
  double beta = 0.0;        ///< tail-revenue cutoff used
  /// "iterated" or "discrete-collapse".
  std::string provenance;
};
PartitionDetail upper_bound_partition_detail(const Distribution& d, int n);

/// Computes all four bounds, recording per-field skips in meta.notes
/// instead of failing the whole report (an infeasible partition bound falls
/// back to the universal one, marked in the notes).  Enforces the ordering
/// lower_det <= lower_uniform <= min(upper_universal, upper_partition)
/// among the fields present and fails loudly on a violation.  Requires a
/// finite mean.
BoundReport bound_report(const Distribution& d, int n);

}  // namespace stopping
