#include "stopping/numerics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>

#include "stopping/error.hpp"

namespace stopping {

namespace {

constexpr std::int64_t kMaxIntervals = 1'000'000;

struct SimpsonState {
  const std::function<double(double)>& f;
  std::int64_t intervals = 0;
};

// One Simpson estimate over [a, b] with midpoint m and cached f values.
double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(SimpsonState& st, double a, double b, double fa, double fm,
                double fb, double whole, double tol, int depth) {
  if (++st.intervals > kMaxIntervals) {
    fail(errc::search_too_large,
         "adaptive quadrature exceeded 1e6 subintervals");
  }
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  // Richardson error estimate for Simpson: |delta|/15.
  if (depth > 0 && std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth > 48 || m <= a || m >= b) {
    return left + right;  // interval exhausted at double precision
  }
  return adaptive(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         adaptive(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    fail(errc::invalid_argument, "quadrature bounds must be finite");
  }
  if (a > b) fail(errc::invalid_argument, "quadrature bounds out of order");
  if (a == b) return 0.0;
  SimpsonState st{f};
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return adaptive(st, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), abs_tol, 0);
}

double integrate_split(const std::function<double(double)>& f, double a,
                       double b, const std::vector<double>& breakpoints,
                       double abs_tol) {
  std::vector<double> cuts{a, b};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate(f, cuts[i], cuts[i + 1],
                       abs_tol / static_cast<double>(cuts.size() - 1));
  }
  return total;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    fail(errc::invalid_argument, "bisection bracket does not straddle a root");
  }
  for (int it = 0; it < 200 && hi - lo > xtol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double bisect_predicate(const std::function<bool(double)>& predicate,
                        double lo, double hi, double xtol) {
  if (predicate(lo)) return lo;
  if (!predicate(hi)) {
    fail(errc::invalid_argument, "predicate bisection: hi must satisfy");
  }
  for (int it = 0; it < 200 && hi - lo > xtol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (predicate(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;  // feasible endpoint
}

double golden_max(const std::function<double(double)>& f, double a, double b,
                  double width) {
  assert(a <= b);
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 300 && b - a > width; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? x1 : x2;
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    fail(errc::invalid_argument, "slope fit needs >= 2 paired points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace stopping
