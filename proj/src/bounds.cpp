#include "stopping/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stopping/adversary.hpp"
#include "stopping/error.hpp"
#include "stopping/monopoly.hpp"

namespace stopping {

namespace {

/// E[X 1{X >= s}], nonincreasing in s.
double tail_expectation(const Distribution& d, double s) {
  return d.partial_expectation(s, std::numeric_limits<double>::infinity());
}

}  // namespace

double lower_bound_uniform(const Distribution& d, int n) {
  if (n < 2)
    fail(errc::invalid_argument,
         "the uniform-threshold bound needs n >= 2 offers");
  const MonopolyResult mono = solve_monopoly(d);
  // Window half-width 3 (1-F(p*)) / ((2F' + p* F'') n), written via the
  // curvature constant C = (1-F)^2 / (2F' + p* F'') to share its checks.
  const double c = c_constant(d, mono.p_star);
  const double surv = d.survival(mono.p_star);
  if (!(surv > 0.0))
    fail(errc::precondition_failed, "no mass at or above p*");
  const double eps = 3.0 * c / (surv * n);
  if (!(eps < 1.0) || !(eps < mono.p_star))
    fail(errc::precondition_failed,
         "window half-width " + std::to_string(eps) +
             " must stay below min(1, p*); increase n");
  const double value =
      min_payoff_uniform(d, mono.p_star - eps, mono.p_star + eps, n, true);
  if (value < mono.pi_star - 1e-10)
    fail(errc::precondition_failed,
         "construction check failed: the randomized policy's certified "
         "value fell below the deterministic baseline");
  return value;
}

double upper_bound_universal(const Distribution& d, int n) {
  if (n < 1) fail(errc::invalid_argument, "n must be >= 1");
  const double mean = d.mean();  // divergent-mean propagates
  return solve_monopoly(d).pi_star + mean / n;
}

double beta_cutoff(const Distribution& d) {
  (void)d.mean();  // reject divergent-mean inputs up front
  const MonopolyResult mono = solve_monopoly(d);
  const double pi = mono.pi_star;
  double lo = mono.p_star;
  if (tail_expectation(d, lo) <= pi) return lo;
  double hi = d.quantile(1.0 - 1e-12);
  if (hi <= lo || tail_expectation(d, hi) > pi) return hi;
  // tail(lo) > pi >= tail(hi); shrink until the tail expectation brackets
  // pi within 1e-9 (an atom can keep the value gap open, hence the width
  // safety cap).  hi always keeps the tail condition.
  const double width_cap = 1e-13 * std::max(1.0, hi);
  while (tail_expectation(d, lo) - tail_expectation(d, hi) > 1e-9 &&
         hi - lo > width_cap) {
    double mid = 0.5 * (lo + hi);
    (tail_expectation(d, mid) <= pi ? hi : lo) = mid;
  }
  return hi;
}

long long count_iterations(const Distribution& d, double pi_star, double eps,
                           double w0, double beta) {
  if (!(eps > 0.0)) fail(errc::invalid_argument, "eps must be positive");
  if (!(w0 < beta))
    fail(errc::precondition_failed, "w0 must start below beta");
  double w = w0;
  long long k = 0;
  while (w < beta) {
    if (k >= 10'000'000)
      fail(errc::search_too_large,
           "iteration cap of 1e7 reached before the sequence cleared beta");
    const double surv = d.survival(w);
    const double next = surv > 0.0
                            ? (pi_star + eps) / surv
                            : std::numeric_limits<double>::infinity();
    if (next < beta && !(next > w + 1e-15))
      fail(errc::not_progressing,
           "step size fell below 1e-15; eps is too small for the numeric "
           "precision");
    w = next;
    ++k;
  }
  return k;
}

PartitionDetail upper_bound_partition_detail(const Distribution& d, int n) {
  if (n < 2)
    fail(errc::invalid_argument, "the partition bound needs n >= 2");
  const double mean = d.mean();  // divergent-mean propagates
  const MonopolyResult mono = solve_monopoly(d);

  PartitionDetail out;
  if (d.discrete() &&
      static_cast<int>(d.atoms().size()) <= n) {
    // With at most n support points the staircase of offers can visit every
    // atom, so the deterministic baseline is already the exact value.
    out.value = mono.pi_star;
    out.eps_star = 0.0;
    out.iterations = 0;
    out.beta = beta_cutoff(d);
    out.provenance = "discrete-collapse";
    return out;
  }

  const double beta = beta_cutoff(d);
  const double w0 = d.support_lo();
  auto feasible = [&](double eps) {
    try {
      return count_iterations(d, mono.pi_star, eps, w0, beta) <=
             static_cast<long long>(n - 1);
    } catch (const Error&) {
      return false;  // stalled or over budget: eps cannot certify the bound
    }
  };

  // One slack of beta - pi_star clears beta in a single step from w0
  // (survival there is 1), so the bracket top is always feasible; the
  // plain mean can fall short of it at small n.
  double lo = 1e-12;
  double hi = std::max(mean, beta - mono.pi_star) * (1.0 + 1e-9) + 1e-12;
  if (!feasible(hi))
    fail(errc::infeasible,
         "even the largest bracket slack needs more than n-1 steps");
  while (hi - lo > 1e-6 * hi) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }

  out.eps_star = hi;  // feasible endpoint: a certified upper bound
  out.value = mono.pi_star + hi;
  out.iterations = count_iterations(d, mono.pi_star, hi, w0, beta);
  out.beta = beta;
  out.provenance = "iterated";
  return out;
}

double upper_bound_partition(const Distribution& d, int n) {
  return upper_bound_partition_detail(d, n).value;
}

BoundReport bound_report(const Distribution& d, int n) {
  if (n < 1) fail(errc::invalid_argument, "n must be >= 1");
  const double mean = d.mean();  // divergent-mean fails the whole report
  const MonopolyResult mono = solve_monopoly(d);

  BoundReport r;
  r.n = n;
  r.lower_det = mono.pi_star;
  r.upper_universal = mono.pi_star + mean / n;
  try {
    r.meta.beta = beta_cutoff(d);
  } catch (const Error& e) {
    r.meta.notes.push_back(std::string("beta:") + errc_name(e.code()));
  }

  try {
    r.lower_uniform = lower_bound_uniform(d, n);
    const double c = c_constant(d, mono.p_star);
    r.meta.eps_uniform = 3.0 * c / (d.survival(mono.p_star) * n);
  } catch (const Error& e) {
    r.meta.notes.push_back(std::string("lower_uniform:") +
                           errc_name(e.code()));
  }

  try {
    const PartitionDetail pd = upper_bound_partition_detail(d, n);
    r.upper_partition = pd.value;
    r.meta.eps_partition = pd.eps_star;
    r.meta.iterations = pd.iterations;
    if (!r.meta.beta) r.meta.beta = pd.beta;
    if (pd.provenance != "iterated")
      r.meta.notes.push_back("upper_partition:" + pd.provenance);
  } catch (const Error& e) {
    if (e.code() == errc::infeasible) {
      r.upper_partition = r.upper_universal;
      r.meta.notes.push_back("upper_partition:fell-back-to-universal");
    } else {
      r.meta.notes.push_back(std::string("upper_partition:") +
                             errc_name(e.code()));
    }
  }

  // Ordering among the fields actually computed.  A violation here is a
  // library defect (each bound is individually certified), so fail loudly
  // rather than reporting inconsistent numbers.
  const double upper_cap =
      std::min(r.upper_universal,
               r.upper_partition.value_or(
                   std::numeric_limits<double>::infinity()));
  if (r.lower_det > upper_cap + 1e-9)
    fail(errc::precondition_failed,
         "bound ordering violated: deterministic baseline exceeds an upper "
         "bound");
  if (r.lower_uniform &&
      (*r.lower_uniform > upper_cap + 1e-9 ||
       r.lower_det > *r.lower_uniform + 1e-9))
    fail(errc::precondition_failed,
         "bound ordering violated: the randomized lower bound left the "
         "certified sandwich");
  return r;
}

}  // namespace stopping
