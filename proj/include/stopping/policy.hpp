#pragma once

#include <variant>
#include <vector>

namespace stopping {

/// Accept the first offer >= t.
struct Deterministic {
  double t;
};

/// Threshold drawn once from finitely many atoms before the sequence starts.
/// thresholds strictly increasing and positive; probs positive, same length,
/// summing to 1 within 1e-12.
struct FiniteRandom {
  std::vector<double> thresholds;
  std::vector<double> probs;
};

/// Threshold drawn once from Uniform(lo, hi), 0 <= lo < hi.
struct UniformRandom {
  double lo;
  double hi;
};

/// A random-threshold stopping rule: draw T from the given law, then accept
/// the first offer >= T (payoff 0 when no offer qualifies).
using ThresholdPolicy = std::variant<Deterministic, FiniteRandom, UniformRandom>;

/// Validates the structural invariants of a policy; throws invalid-argument.
void validate_policy(const ThresholdPolicy& policy);

/// Exact expected payoff of the policy on a fixed arrival tuple
/// (expectation over the threshold draw only).  Values must be nonnegative
/// and nonempty.  All three policy kinds evaluate in closed form; the
/// uniform case integrates the piecewise-constant first-crossing value.
double payoff_on_tuple(const ThresholdPolicy& policy,
                       const std::vector<double>& values);

/// The n-point threshold grid anchored at p_star: thresholds
/// p* - (n-1)eps, ..., p* - eps, p* with equal probabilities 1/n.
/// eps = 0 (or n = 1) degenerates to Deterministic{p*}.  Throws
/// invalid-argument when the lowest threshold would be <= 0.
ThresholdPolicy epsilon_grid_policy(double p_star, int n, double eps);

}  // namespace stopping
