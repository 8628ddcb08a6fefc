#include "stopping/monopoly.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stopping/error.hpp"
#include "stopping/numerics.hpp"

namespace stopping {

namespace {

// Scan resolution; also the yardstick of the `unique` heuristic.
constexpr int kGridPoints = 10'000;
constexpr double kTieTol = 1e-9;

MonopolyResult solve_discrete(const Distribution& d) {
  const auto atom_list = d.atoms();
  double best = -1.0;
  for (const auto& [value, mass] : atom_list) {
    (void)mass;
    best = std::max(best, value * d.survival(value));
  }
  double p_star = 0.0;
  int near_best = 0;
  for (const auto& [value, mass] : atom_list) {
    (void)mass;
    if (value * d.survival(value) >= best - kTieTol) {
      if (near_best == 0) p_star = value;  // atoms ascend: first = smallest
      ++near_best;
    }
  }
  return MonopolyResult{p_star, p_star * d.survival(p_star), std::nullopt,
                        near_best <= 1};
}

}  // namespace

double revenue(const Distribution& d, double p) { return p * d.survival(p); }

double c_constant(const Distribution& d, double p) {
  const double denom = 2.0 * d.derivative(p, 1) + p * d.derivative(p, 2);
  if (!(denom > 1e-12)) {
    fail(errc::degenerate_curvature,
         "revenue curvature at p = " + std::to_string(p) +
             " is not positive for " + d.describe());
  }
  const double s = d.survival(p);
  return s * s / denom;
}

MonopolyResult solve_monopoly(const Distribution& d) {
  d.mean();  // rejects with divergent-mean before any pricing work

  if (d.discrete()) return solve_discrete(d);

  const double lo = d.support_lo();
  const double hi = d.quantile(1.0 - 1e-9);
  if (!(hi > lo)) {
    // zero-width support: the only price worth posting is the support point
    return MonopolyResult{lo, revenue(d, lo), std::nullopt, true};
  }

  std::vector<double> r(kGridPoints + 1);
  const double step = (hi - lo) / kGridPoints;
  for (int i = 0; i <= kGridPoints; ++i) {
    r[i] = revenue(d, lo + i * step);
  }

  const auto best_it = std::max_element(r.begin(), r.end());
  const double scan_max = *best_it;

  // `unique` heuristic: a rival cell within 1e-6 of the maximum but more
  // than 10 cells away signals a tie or plateau.
  int first_near = -1, last_near = -1;
  for (int i = 0; i <= kGridPoints; ++i) {
    if (r[i] >= scan_max - 1e-6) {
      if (first_near < 0) first_near = i;
      last_near = i;
    }
  }
  const bool unique = (last_near - first_near) <= 10;

  // Refine every local maximum of the scan that is near the global one;
  // keep support_lo as a candidate so plateaus resolve to their left edge.
  auto rev = [&d](double p) { return revenue(d, p); };
  std::vector<double> candidates{lo};
  std::vector<std::pair<double, int>> local;  // (value, index)
  for (int i = 0; i <= kGridPoints; ++i) {
    const bool left_ok = i == 0 || r[i] >= r[i - 1];
    const bool right_ok = i == kGridPoints || r[i] >= r[i + 1];
    if (left_ok && right_ok && r[i] >= scan_max - 1e-3) {
      local.emplace_back(r[i], i);
    }
  }
  std::sort(local.rbegin(), local.rend());
  if (local.size() > 8) local.resize(8);
  for (const auto& [value, i] : local) {
    (void)value;
    const double a = lo + std::max(i - 1, 0) * step;
    const double b = lo + std::min(i + 1, kGridPoints) * step;
    candidates.push_back(golden_max(rev, a, b));
  }

  double best_rev = -1.0;
  for (double p : candidates) best_rev = std::max(best_rev, rev(p));

  // smallest maximiser wins ties at 1e-9 resolution
  double p_star = hi;
  for (double p : candidates) {
    if (rev(p) >= best_rev - kTieTol && p < p_star) p_star = p;
  }

  std::optional<double> c;
  try {
    c = c_constant(d, p_star);
  } catch (const Error&) {
    c = std::nullopt;  // flat or non-smooth revenue at the optimum
  }

  return MonopolyResult{p_star, revenue(d, p_star), c, unique};
}

}  // namespace stopping
