#include "stopping/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stopping/error.hpp"
#include "stopping/numerics.hpp"

namespace stopping {

namespace {

/// P(X = x) recovered from the cdf/survival conventions (0 for continuous
/// laws up to rounding; clamped at 0).
double atom_mass_at(const Distribution& d, double x) {
  double m = d.cdf(x) + d.survival(x) - 1.0;
  return m > 0.0 ? m : 0.0;
}

void require_valid_vmax(double v_max) {
  if (!(v_max >= 0.0) || !std::isfinite(v_max))
    fail(errc::invalid_argument, "v_max must be finite and nonnegative");
}

}  // namespace

WorstCaseInstance::WorstCaseInstance(
    int n, std::string family,
    std::function<void(double, std::vector<double>&)> fill)
    : n_(n), family_(std::move(family)), fill_(std::move(fill)) {
  if (n_ < 1) fail(errc::invalid_argument, "an instance needs n >= 1 offers");
  if (!fill_) fail(errc::invalid_argument, "instance builder must be callable");
}

void WorstCaseInstance::fill(double v_max, std::vector<double>& out) const {
  require_valid_vmax(v_max);
  out.assign(static_cast<std::size_t>(n_), 0.0);
  fill_(v_max, out);
}

std::vector<double> WorstCaseInstance::tuple_for(double v_max) const {
  std::vector<double> out;
  fill(v_max, out);
  return out;
}

WorstCaseInstance instance_against_deterministic(double p, int n) {
  if (n < 2)
    fail(errc::invalid_argument,
         "the deterministic-threshold adversary needs n >= 2 offers");
  if (!(p >= 0.0) || !std::isfinite(p))
    fail(errc::invalid_argument, "threshold must be finite and nonnegative");
  return WorstCaseInstance(
      n, "deterministic-threshold",
      [p](double v, std::vector<double>& out) {
        if (v >= p) {
          out[0] = p;
          out[1] = v;
        } else {
          out[0] = v;
        }
      });
}

WorstCaseInstance instance_against_finite_random(const FiniteRandom& policy) {
  validate_policy(ThresholdPolicy(policy));
  const int n = static_cast<int>(policy.thresholds.size());
  if (n < 2)
    fail(errc::invalid_argument,
         "the staircase adversary needs >= 2 threshold atoms");
  // Cheapest probability-weighted gap among consecutive thresholds; this is
  // the rung the adversary is willing to sacrifice when v_max clears the
  // top threshold.
  double gamma = std::numeric_limits<double>::infinity();
  int drop = 0;
  for (int i = 0; i + 1 < n; ++i) {
    double g = policy.probs[static_cast<std::size_t>(i)] *
               (policy.thresholds[static_cast<std::size_t>(i + 1)] -
                policy.thresholds[static_cast<std::size_t>(i)]);
    if (g < gamma) {
      gamma = g;
      drop = i;
    }
  }
  return WorstCaseInstance(
      n, "staircase",
      [t = policy.thresholds, p_top = policy.probs.back(), gamma, drop,
       n](double v, std::vector<double>& out) {
        if (v < t.front()) {
          out[0] = v;
          return;
        }
        if (v >= t.back()) {
          // Either extend the full staircase by v (forfeiting only the top
          // increment, worth p_n (v - t_n) capped at the sacrificial gap) or
          // drop the cheapest interior rung, whichever is cheaper.
          if (p_top * (v - t.back()) <= gamma) {
            for (int i = 0; i + 1 < n; ++i)
              out[static_cast<std::size_t>(i)] =
                  t[static_cast<std::size_t>(i)];
          } else {
            int k = 0;
            for (int i = 0; i < n; ++i) {
              if (i == drop) continue;
              out[static_cast<std::size_t>(k++)] =
                  t[static_cast<std::size_t>(i)];
            }
          }
          out[static_cast<std::size_t>(n - 1)] = v;
          return;
        }
        // t_m <= v < t_{m+1}: walk the staircase as far as it goes, then v.
        auto it = std::upper_bound(t.begin(), t.end(), v);
        int m = static_cast<int>(it - t.begin());  // thresholds <= v
        for (int i = 0; i < m; ++i)
          out[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(m)] = v;
      });
}

WorstCaseInstance instance_against_uniform(double t1, double t2, int n) {
  if (!(t1 >= 0.0) || !(t1 < t2) || !std::isfinite(t2))
    fail(errc::invalid_argument, "need 0 <= t1 < t2 < infinity");
  if (n < 2)
    fail(errc::invalid_argument, "the ladder adversary needs n >= 2 offers");
  const double u_star = t2 + (t2 - t1) / (n - 1);
  return WorstCaseInstance(
      n, "ladder", [t1, t2, u_star, n](double v, std::vector<double>& out) {
        if (v < t1) {
          out[0] = v;
          return;
        }
        if (v <= u_star) {
          for (int i = 1; i <= n; ++i)
            out[static_cast<std::size_t>(i - 1)] =
                t1 + (static_cast<double>(i) / n) * (v - t1);
        } else {
          for (int i = 1; i < n; ++i)
            out[static_cast<std::size_t>(i - 1)] =
                t1 + (static_cast<double>(i) / (n - 1)) * (t2 - t1);
          out[static_cast<std::size_t>(n - 1)] = v;
        }
      });
}

double min_payoff_finite_random(const Distribution& d,
                                const FiniteRandom& policy, int n) {
  if (static_cast<int>(policy.thresholds.size()) != n)
    fail(errc::arity_mismatch,
         "policy has " + std::to_string(policy.thresholds.size()) +
             " threshold atoms but n = " + std::to_string(n));
  validate_policy(ThresholdPolicy(policy));
  if (n < 2)
    fail(errc::invalid_argument,
         "the worst-case payoff formula needs n >= 2");
  const auto& t = policy.thresholds;
  const auto& pr = policy.probs;

  double total = 0.0;
  for (int i = 0; i < n; ++i)
    total += pr[static_cast<std::size_t>(i)] *
             t[static_cast<std::size_t>(i)] *
             d.survival(t[static_cast<std::size_t>(i)]);

  double gamma = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < n; ++i)
    gamma = std::min(gamma, pr[static_cast<std::size_t>(i)] *
                                (t[static_cast<std::size_t>(i + 1)] -
                                 t[static_cast<std::size_t>(i)]));
  const double p_top = pr.back();
  const double t_top = t.back();
  const double edge = t_top + gamma / p_top;

  // gamma * P(X > edge): beyond the edge the adversary prefers dropping the
  // sacrificial rung, which costs it exactly gamma.
  total += gamma * (d.survival(edge) - atom_mass_at(d, edge));
  // p_n * E[(X - t_n) 1{t_n < X <= edge}]: in between, extending the
  // staircase by v_max itself is cheaper.
  double window_mean =
      d.partial_expectation(t_top, edge) - t_top * atom_mass_at(d, t_top);
  double window_prob = d.cdf(edge) - d.cdf(t_top);
  total += p_top * (window_mean - t_top * window_prob);
  return total;
}

std::vector<double> worst_tuple_uniform(double t1, double t2, int n,
                                        double v_max) {
  if (!(t1 >= 0.0) || !(t1 < t2) || !std::isfinite(t2))
    fail(errc::invalid_argument, "need 0 <= t1 < t2 < infinity");
  if (n < 2) fail(errc::invalid_argument, "ladder tuples need n >= 2");
  require_valid_vmax(v_max);
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  if (v_max < t1) {
    out[0] = v_max;
    return out;
  }
  const double u_star = t2 + (t2 - t1) / (n - 1);
  if (v_max <= u_star) {
    for (int i = 1; i <= n; ++i)
      out[static_cast<std::size_t>(i - 1)] =
          t1 + (static_cast<double>(i) / n) * (v_max - t1);
  } else {
    for (int i = 1; i < n; ++i)
      out[static_cast<std::size_t>(i - 1)] =
          t1 + (static_cast<double>(i) / (n - 1)) * (t2 - t1);
    out[static_cast<std::size_t>(n - 1)] = v_max;
  }
  return out;
}

double min_payoff_uniform(const Distribution& d, double t1, double t2, int n,
                          bool exact) {
  if (d.discrete())
    fail(errc::unsupported_for_discrete,
         "the ladder payoff integral needs a density");
  if (!(t1 >= 0.0) || !(t1 < t2) || !std::isfinite(t2))
    fail(errc::invalid_argument, "need 0 <= t1 < t2 < infinity");
  if (n < 2) fail(errc::invalid_argument, "need n >= 2");

  const double u_star = t2 + (t2 - t1) / (n - 1);
  // Payoff of the even ladder when the maximum lands inside (t1, t2]...
  auto f1 = [t1, t2, n](double x) {
    return (x - t1) / (t2 - t1) *
           (t1 + ((n + 1.0) / (2.0 * n)) * (x - t1));
  };
  // ... and when it lands in (t2, u*]; constant at f2(u*) beyond u* because
  // the saturated ladder no longer depends on v_max below the top offer.
  auto f2 = [t1, t2, n](double x) {
    return x - ((n - 1.0) / (2.0 * n)) * (x - t1) * (x - t1) / (t2 - t1);
  };
  auto density = [&d](double x) {
    if (x <= d.support_lo() || x >= d.support_hi()) return 0.0;
    return d.derivative(x, 1);
  };
  const std::vector<double> support_edges = {d.support_lo(), d.support_hi()};

  double value = integrate_split(
      [&](double x) { return f1(x) * density(x); }, t1, t2, support_edges,
      1e-11);
  const auto atom_list = d.atoms();
  for (const auto& [x, m] : atom_list)
    if (x >= t1 && x <= t2) value += m * f1(x);

  if (exact) {
    value += integrate_split([&](double x) { return f2(x) * density(x); },
                             t2, u_star, support_edges, 1e-11);
    for (const auto& [x, m] : atom_list)
      if (x > t2 && x <= u_star) value += m * f2(x);
    value += f2(u_star) * (d.survival(u_star) - atom_mass_at(d, u_star));
  } else {
    value += f2(t2) * (d.survival(t2) - atom_mass_at(d, t2));
  }
  return value;
}

namespace {

/// Number of nondecreasing k-tuples drawn from m values, as a double so the
/// budget check cannot overflow: C(m + k - 1, k).
double multiset_count(std::size_t m, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j)
    c *= static_cast<double>(m + static_cast<std::size_t>(k) - j) / j;
  return c;
}

/// First-crossing payoff of sorted threshold atoms against a nondecreasing
/// tuple: threshold t_j is met first at the lowest index with value >= t_j,
/// which moves monotonically as t_j grows.
double staircase_payoff(const std::vector<double>& thresholds,
                        const std::vector<double>& weights,
                        const std::vector<double>& tuple) {
  double pay = 0.0;
  std::size_t i = 0;
  for (std::size_t j = 0; j < thresholds.size(); ++j) {
    while (i < tuple.size() && tuple[i] < thresholds[j]) ++i;
    if (i == tuple.size()) break;  // larger thresholds never cross either
    pay += weights[j] * tuple[i];
  }
  return pay;
}

/// Enumerates nondecreasing prefixes tuple[slot..n-2] over pool[start..],
/// with tuple[n-1] already fixed at v_max, tracking the minimum payoff.
void min_over_prefixes(const std::vector<double>& pool, int slot, int slots,
                       std::size_t start, std::vector<double>& tuple,
                       const std::vector<double>& thresholds,
                       const std::vector<double>& weights, double& best) {
  if (slot == slots) {
    best = std::min(best, staircase_payoff(thresholds, weights, tuple));
    return;
  }
  for (std::size_t j = start; j < pool.size(); ++j) {
    tuple[static_cast<std::size_t>(slot)] = pool[j];
    min_over_prefixes(pool, slot + 1, slots, j, tuple, thresholds, weights,
                      best);
  }
}

}  // namespace

double brute_force_adversary(
    const std::vector<std::pair<double, double>>& d_grid,
    const ThresholdPolicy& policy, int n, std::vector<double> value_grid) {
  if (n < 1 || n > 5)
    fail(errc::invalid_argument,
         "exhaustive search supports 1 <= n <= 5 offers");
  validate_policy(policy);
  if (d_grid.empty())
    fail(errc::invalid_argument, "the maximum-value grid is empty");
  double mass_sum = 0.0;
  for (const auto& [v, m] : d_grid) {
    if (!(v >= 0.0) || !std::isfinite(v) || !(m >= 0.0))
      fail(errc::invalid_argument,
           "grid atoms need nonnegative finite values and masses");
    mass_sum += m;
  }
  if (std::fabs(mass_sum - 1.0) > 1e-6)
    fail(errc::invalid_argument, "grid masses must sum to 1");

  // Flatten the policy to sorted threshold atoms; a uniform draw becomes
  // 200 equiprobable midpoints (the oracle only needs grid-level accuracy).
  std::vector<double> thresholds, weights;
  if (const auto* det = std::get_if<Deterministic>(&policy)) {
    thresholds = {det->t};
    weights = {1.0};
  } else if (const auto* fin = std::get_if<FiniteRandom>(&policy)) {
    thresholds = fin->thresholds;
    weights = fin->probs;
  } else {
    const auto& uni = std::get<UniformRandom>(policy);
    const int cells = 200;
    thresholds.reserve(cells);
    weights.reserve(cells);
    for (int j = 0; j < cells; ++j) {
      thresholds.push_back(uni.lo +
                           ((j + 0.5) / cells) * (uni.hi - uni.lo));
      weights.push_back(1.0 / cells);
    }
  }

  std::sort(value_grid.begin(), value_grid.end());
  value_grid.erase(std::unique(value_grid.begin(), value_grid.end()),
                   value_grid.end());
  for (double x : value_grid)
    if (!(x >= 0.0) || !std::isfinite(x))
      fail(errc::invalid_argument,
           "value grid entries must be finite and nonnegative");

  // Budget check before enumerating anything.
  double total_candidates = 0.0;
  for (const auto& [v, m] : d_grid) {
    (void)m;
    std::size_t pool_size =
        static_cast<std::size_t>(std::upper_bound(value_grid.begin(),
                                                  value_grid.end(), v) -
                                 value_grid.begin());
    bool v_in_grid =
        pool_size > 0 && value_grid[pool_size - 1] == v;
    if (!v_in_grid) ++pool_size;
    total_candidates += multiset_count(pool_size, n - 1);
    if (total_candidates > 1e7)
      fail(errc::search_too_large,
           "more than 1e7 candidate tuples; coarsen the grids");
  }

  double expected = 0.0;
  std::vector<double> pool;
  pool.reserve(value_grid.size() + 1);
  std::vector<double> tuple(static_cast<std::size_t>(n));
  for (const auto& [v, mass] : d_grid) {
    pool.clear();
    for (double x : value_grid) {
      if (x > v) break;
      pool.push_back(x);
    }
    if (pool.empty() || pool.back() != v) pool.push_back(v);
    tuple.back() = v;
    double best = std::numeric_limits<double>::infinity();
    min_over_prefixes(pool, 0, n - 1, 0, tuple, thresholds, weights, best);
    expected += mass * best;
  }
  return expected;
}

}  // namespace stopping
