#pragma once

#include <functional>
#include <vector>

namespace stopping {

/// Adaptive Simpson quadrature of f over the finite interval [a, b].
///
/// @param f        integrand, evaluated at interior and endpoint abscissae
/// @param a,b      finite bounds, a <= b
/// @param abs_tol  absolute error target (default 1e-10)
/// @return approximation of the integral
///
/// Throws errc::search_too_large if more than ~1e6 subintervals are needed
/// (the integrand is then too rough for this scheme) and
/// errc::invalid_argument for non-finite bounds.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

/// Same as integrate() but forces subdivision at the given interior
/// breakpoints (kinks, atoms of a reference measure, piece boundaries).
/// Breakpoints outside (a, b) are ignored.
double integrate_split(const std::function<double(double)>& f, double a,
                       double b, const std::vector<double>& breakpoints,
                       double abs_tol = 1e-10);

/// Bisection root find for continuous f with f(lo) and f(hi) of opposite
/// sign (either order).  Returns a point within xtol of a sign change.
///
/// Throws errc::invalid_argument if the bracket does not straddle a root.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol = 1e-12);

/// Smallest x in [lo, hi] with predicate(x) true, assuming the predicate is
/// monotone (false ... false true ... true), located to within xtol.
/// predicate(hi) must be true.  Returns a feasible point (predicate holds).
double bisect_predicate(const std::function<bool(double)>& predicate,
                        double lo, double hi, double xtol);

/// Golden-section maximisation of a unimodal f on [a, b]; shrinks the
/// bracket to the given width and returns the abscissa of the best point.
double golden_max(const std::function<double(double)>& f, double a, double b,
                  double width = 1e-10);

/// Ordinary least-squares slope of y against x.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace stopping
