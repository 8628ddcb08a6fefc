#pragma once

#include <cstdint>

#include "stopping/adversary.hpp"
#include "stopping/distribution.hpp"
#include "stopping/policy.hpp"

namespace stopping {

struct SimConfig {
  long long samples = 1'000'000;
  std::uint64_t seed = 0;
  /// Pair each maximum draw u with its mirror 1-u.  Payoffs are monotone in
  /// the realised maximum, so mirroring reduces variance.
  bool antithetic = false;
};

struct SimResult {
  double mean_payoff = 0.0;
  double std_error = 0.0;  ///< sample standard deviation / sqrt(samples)
  long long samples = 0;
};

/// Empirical payoff of the policy against the instance: per sample, draw
/// v_max by inverse CDF, expand it through the instance builder, draw one
/// threshold from the policy, and take the first offer crossing it (0 if
/// none).  Deterministic given cfg: sampling is sharded into fixed
/// 2^16-sample blocks, block b drawing from a generator seeded by
/// (cfg.seed, b), and block partials are merged in block order — so the
/// result is bitwise reproducible and independent of any execution
/// schedule.  The generator is xoshiro256++ with splitmix64 seeding (see
/// rng.hpp); antithetic pairs never straddle block boundaries.
SimResult simulate_policy_vs_instance(const Distribution& d,
                                      const WorstCaseInstance& instance,
                                      const ThresholdPolicy& policy,
                                      const SimConfig& cfg);

}  // namespace stopping
