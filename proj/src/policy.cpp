#include "stopping/policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stopping/error.hpp"

namespace stopping {

namespace {

void check_values(const std::vector<double>& values) {
  if (values.empty()) {
    fail(errc::invalid_argument, "arrival tuple must be nonempty");
  }
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      fail(errc::invalid_argument, "arrival values must be finite and >= 0");
    }
  }
}

// First value >= s, else 0 (the stopping rule walks the tuple in order).
double first_crossing(const std::vector<double>& values, double s) {
  for (double v : values) {
    if (v >= s) return v;
  }
  return 0.0;
}

}  // namespace

void validate_policy(const ThresholdPolicy& policy) {
  if (const auto* det = std::get_if<Deterministic>(&policy)) {
    // t = 0 ("accept the first offer") is a legal, if useless, policy.
    if (!(det->t >= 0.0) || !std::isfinite(det->t)) {
      fail(errc::invalid_argument, "threshold must be finite and >= 0");
    }
    return;
  }
  if (const auto* fin = std::get_if<FiniteRandom>(&policy)) {
    if (fin->thresholds.empty() ||
        fin->thresholds.size() != fin->probs.size()) {
      fail(errc::invalid_argument,
           "finite-random policy needs matching nonempty thresholds/probs");
    }
    double prev = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < fin->thresholds.size(); ++i) {
      if (!(fin->thresholds[i] > prev)) {
        fail(errc::invalid_argument,
             "thresholds must be positive and strictly increasing");
      }
      if (!(fin->probs[i] > 0.0)) {
        fail(errc::invalid_argument, "threshold probabilities must be > 0");
      }
      prev = fin->thresholds[i];
      total += fin->probs[i];
    }
    if (std::abs(total - 1.0) > 1e-12) {
      fail(errc::invalid_argument,
           "threshold probabilities must sum to 1 within 1e-12");
    }
    return;
  }
  const auto& uni = std::get<UniformRandom>(policy);
  if (!(uni.lo >= 0.0) || !(uni.hi > uni.lo) || !std::isfinite(uni.hi)) {
    fail(errc::invalid_argument,
         "uniform policy needs 0 <= lo < hi < infinity");
  }
}

double payoff_on_tuple(const ThresholdPolicy& policy,
                       const std::vector<double>& values) {
  validate_policy(policy);
  check_values(values);

  if (const auto* det = std::get_if<Deterministic>(&policy)) {
    return first_crossing(values, det->t);
  }

  if (const auto* fin = std::get_if<FiniteRandom>(&policy)) {
    double total = 0.0;
    for (std::size_t i = 0; i < fin->thresholds.size(); ++i) {
      total += fin->probs[i] * first_crossing(values, fin->thresholds[i]);
    }
    return total;
  }

  // Uniform threshold: the accepted value is piecewise constant in s.  The
  // first index with v_i >= s is i exactly when s lies in
  // (max(v_1..v_{i-1}), v_i], which is nonempty only at strict prefix
  // maxima; integrate value * segment overlap with (lo, hi).
  const auto& uni = std::get<UniformRandom>(policy);
  double total = 0.0;
  double prefix_max = 0.0;
  for (double v : values) {
    if (v > prefix_max) {
      const double seg_lo = std::max(prefix_max, uni.lo);
      const double seg_hi = std::min(v, uni.hi);
      if (seg_hi > seg_lo) total += v * (seg_hi - seg_lo);
      prefix_max = v;
    }
  }
  return total / (uni.hi - uni.lo);
}

ThresholdPolicy epsilon_grid_policy(double p_star, int n, double eps) {
  if (!(p_star > 0.0) || n < 1 || !(eps >= 0.0)) {
    fail(errc::invalid_argument,
         "epsilon grid needs p_star > 0, n >= 1, eps >= 0");
  }
  if (n == 1 || eps == 0.0) return Deterministic{p_star};
  const double lowest = p_star - (n - 1) * eps;
  if (!(lowest > 0.0)) {
    fail(errc::invalid_argument,
         "epsilon grid bottoms out at " + std::to_string(lowest) +
             " <= 0; shrink eps or n");
  }
  FiniteRandom policy;
  for (int i = 0; i < n; ++i) {
    policy.thresholds.push_back(p_star - (n - 1 - i) * eps);
    policy.probs.push_back(1.0 / n);
  }
  return policy;
}

}  // namespace stopping
