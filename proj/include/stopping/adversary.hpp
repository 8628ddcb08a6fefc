#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "stopping/distribution.hpp"
#include "stopping/policy.hpp"

namespace stopping {

/// A worst-case correlated instance: a joint law over n offer values encoded
/// as a deterministic map v_max -> (v_1, ..., v_n).  Drawing v_max from the
/// maximum-value law and expanding through the builder produces a joint law
/// whose realised maximum is exactly v_max, so the instance stays inside the
/// feasible correlation class.
class WorstCaseInstance {
 public:
  /// family is a short label ("deterministic-threshold", ...) used by the
  /// CLI when reporting which adversary was simulated.
  WorstCaseInstance(int n, std::string family,
                    std::function<void(double, std::vector<double>&)> fill);

  int n() const { return n_; }
  const std::string& family() const { return family_; }

  /// Writes the offer tuple for realised maximum v_max into out (resized to
  /// n).  The largest entry always equals v_max.
  void fill(double v_max, std::vector<double>& out) const;

  /// Allocating convenience wrapper around fill().
  std::vector<double> tuple_for(double v_max) const;

 private:
  int n_;
  std::string family_;
  std::function<void(double, std::vector<double>&)> fill_;
};

/// Nature's best reply to the fixed threshold p (requires n >= 2, p >= 0):
/// show p first when v_max can cover it, so the decision maker never gets
/// more than p, then reveal v_max in second position.  Tuple is
/// (p, v_max, 0, ..., 0) when v_max >= p and (v_max, 0, ..., 0) otherwise;
/// the expected payoff collapses to p * P(X >= p).
WorstCaseInstance instance_against_deterministic(double p, int n);

/// Nature's best reply to an n-atom random threshold policy (n >= 2): a
/// gatekeeper staircase walking up the thresholds, with the cheapest
/// probability-weighted gap dropped once v_max clears the top threshold.
/// Its expected payoff equals min_payoff_finite_random exactly.
WorstCaseInstance instance_against_finite_random(const FiniteRandom& policy);

/// Nature's best reply to Uniform(t1, t2) thresholds: the evenly spaced
/// ladder tuples of worst_tuple_uniform.  Expected payoff equals
/// min_payoff_uniform(..., exact=true).
WorstCaseInstance instance_against_uniform(double t1, double t2, int n);

/// Worst-case expected payoff of the n-atom threshold policy with atoms
/// t_1 < ... < t_n played with probabilities p_1, ..., p_n, against the
/// gatekeeper-staircase adversary:
///
///   sum_i p_i t_i P(X >= t_i)
///     + gamma * P(X > e) + p_n * E[(X - t_n) 1{t_n < X <= e}],
///
/// where gamma = min_{i<n} p_i (t_{i+1} - t_i) and e = t_n + gamma / p_n.
/// The expectation terms are evaluated from the law's closed-form partial
/// expectations, so the value is atom-exact for discrete laws.  Throws
/// arity-mismatch when the policy's atom count differs from n; requires
/// n >= 2 (with one offer the adversary has no freedom).
double min_payoff_finite_random(const Distribution& d,
                                const FiniteRandom& policy, int n);

/// The adversary's optimal tuple against Uniform(t1, t2) thresholds when
/// the realised maximum is v_max (n >= 2 offers, 0 <= t1 < t2):
///
///   v_max <  t1 : (v_max, 0, ..., 0)
///   v_max <= u* : v_i = t1 + (i/n) (v_max - t1)        (even ladder)
///   v_max >  u* : v_i = t1 + (i/(n-1)) (t2 - t1), i<n; v_n = v_max
///
/// with u* = t2 + (t2 - t1)/(n - 1).  The boundary v_max = u* belongs to
/// both formulas (they agree there); it is assigned to the middle case.
std::vector<double> worst_tuple_uniform(double t1, double t2, int n,
                                        double v_max);

/// Expected payoff of Uniform(t1, t2) thresholds against the ladder
/// adversary, integrated over v_max ~ d.  With
///   f1(x) = (x - t1)/(t2 - t1) * (t1 + (n+1)/(2n) (x - t1))
///   f2(x) = x - (n-1)/(2n) (x - t1)^2 / (t2 - t1)
/// the exact value is
///   E[f1(X) 1{t1 <= X <= t2}] + E[f2(X) 1{t2 < X <= u*}]
///     + f2(u*) P(X > u*),
/// and the non-exact variant is the weaker certified lower bound
///   E[f1(X) 1{t1 <= X <= t2}] + f2(t2) P(X > t2).
/// Quadrature is split at t1, t2 and u*; laws must have a density
/// (unsupported-for-discrete otherwise), though an isolated atom riding on a
/// continuous body (equal-revenue top) is handled via the atom list.
double min_payoff_uniform(const Distribution& d, double t1, double t2, int n,
                          bool exact);

/// Exhaustive adversary oracle for small n (<= 5).  d_grid is a finite
/// (value, mass) law for the maximum; for each atom v the oracle minimises
/// the policy's expected payoff over all nondecreasing n-tuples with
/// entries drawn from value_grid (clipped to <= v) together with v itself
/// and maximum exactly v, then returns the mass-weighted sum of the minima.
/// Restricting to nondecreasing tuples loses nothing: reordering a tuple
/// ascending never increases any threshold's first-crossing value.
/// UniformRandom policies are discretised to 200 equiprobable atoms first.
/// Throws search-too-large when the total number of candidate tuples
/// exceeds 10^7.
double brute_force_adversary(
    const std::vector<std::pair<double, double>>& d_grid,
    const ThresholdPolicy& policy, int n, std::vector<double> value_grid);

}  // namespace stopping
