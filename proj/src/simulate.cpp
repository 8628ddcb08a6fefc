#include "stopping/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <variant>
#include <vector>

#include "stopping/error.hpp"
#include "stopping/rng.hpp"

namespace stopping {

namespace {

/// Per-sample threshold draw, precomputed once per run.
struct ThresholdDrawer {
  enum Kind { fixed, atoms, window } kind = fixed;
  double a = 0.0, b = 0.0;         // fixed value / window ends
  std::vector<double> thresholds;  // atom values
  std::vector<double> cum;         // cumulative atom probabilities

  explicit ThresholdDrawer(const ThresholdPolicy& policy) {
    if (const auto* det = std::get_if<Deterministic>(&policy)) {
      kind = fixed;
      a = det->t;
    } else if (const auto* fin = std::get_if<FiniteRandom>(&policy)) {
      kind = atoms;
      thresholds = fin->thresholds;
      cum.reserve(fin->probs.size());
      double acc = 0.0;
      for (double p : fin->probs) {
        acc += p;
        cum.push_back(acc);
      }
      cum.back() = 1.0;  // guard against rounding in the final bucket
    } else {
      const auto& uni = std::get<UniformRandom>(policy);
      kind = window;
      a = uni.lo;
      b = uni.hi;
    }
  }

  double draw(double u) const {
    switch (kind) {
      case fixed:
        return a;
      case atoms: {
        const std::size_t idx = static_cast<std::size_t>(
            std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
        return thresholds[std::min(idx, thresholds.size() - 1)];
      }
      case window:
      default:
        return a + u * (b - a);
    }
  }
};

/// One pipeline pass: maximum draw -> adversarial tuple -> threshold draw
/// -> first-crossing payoff.
double one_payoff(const Distribution& d, const WorstCaseInstance& instance,
                  const ThresholdDrawer& drawer, Xoshiro256pp& rng,
                  double u_max, std::vector<double>& tuple) {
  const double v_max = d.quantile(u_max);
  instance.fill(v_max, tuple);
  const double threshold = drawer.draw(rng.uniform01());
  for (double offer : tuple)
    if (offer >= threshold) return offer;
  return 0.0;
}

}  // namespace

SimResult simulate_policy_vs_instance(const Distribution& d,
                                      const WorstCaseInstance& instance,
                                      const ThresholdPolicy& policy,
                                      const SimConfig& cfg) {
  if (cfg.samples < 1)
    fail(errc::invalid_argument, "samples must be >= 1");
  validate_policy(policy);
  const ThresholdDrawer drawer(policy);

  constexpr long long kBlock = 1LL << 16;
  const long long blocks = (cfg.samples + kBlock - 1) / kBlock;
  std::vector<double> block_sum(static_cast<std::size_t>(blocks), 0.0);
  std::vector<double> block_sumsq(static_cast<std::size_t>(blocks), 0.0);

  std::vector<double> tuple;
  for (long long b = 0; b < blocks; ++b) {
    Xoshiro256pp rng(cfg.seed, static_cast<std::uint64_t>(b));
    const long long lo = b * kBlock;
    const long long hi = std::min(cfg.samples, lo + kBlock);
    double s = 0.0, s2 = 0.0;
    if (cfg.antithetic) {
      for (long long i = lo; i < hi; i += 2) {
        const double u = rng.uniform01();
        const double p1 = one_payoff(d, instance, drawer, rng, u, tuple);
        s += p1;
        s2 += p1 * p1;
        if (i + 1 < hi) {
          const double p2 =
              one_payoff(d, instance, drawer, rng, 1.0 - u, tuple);
          s += p2;
          s2 += p2 * p2;
        }
      }
    } else {
      for (long long i = lo; i < hi; ++i) {
        const double u = rng.uniform01();
        const double p = one_payoff(d, instance, drawer, rng, u, tuple);
        s += p;
        s2 += p * p;
      }
    }
    block_sum[static_cast<std::size_t>(b)] = s;
    block_sumsq[static_cast<std::size_t>(b)] = s2;
  }

  double total = 0.0, total_sq = 0.0;
  for (long long b = 0; b < blocks; ++b) {
    total += block_sum[static_cast<std::size_t>(b)];
    total_sq += block_sumsq[static_cast<std::size_t>(b)];
  }
  SimResult out;
  out.samples = cfg.samples;
  out.mean_payoff = total / static_cast<double>(cfg.samples);
  double var = 0.0;
  if (cfg.samples > 1) {
    var = (total_sq -
           static_cast<double>(cfg.samples) * out.mean_payoff *
               out.mean_payoff) /
          static_cast<double>(cfg.samples - 1);
    var = std::max(0.0, var);
  }
  out.std_error = std::sqrt(var / static_cast<double>(cfg.samples));
  return out;
}

}  // namespace stopping
