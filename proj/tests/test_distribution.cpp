#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "stopping/distribution.hpp"
#include "stopping/error.hpp"
#include "stopping/numerics.hpp"

using namespace stopping;

namespace {

// Central finite difference of the cdf, the yardstick the analytic
// derivatives must reproduce (1e-4 relative).
double fd_density(const Distribution& d, double t) {
  const double h = std::max(1e-5, 1e-5 * t);
  return (d.cdf(t + h) - d.cdf(t - h)) / (2.0 * h);
}

double fd_of(const Distribution& d, double t, int order) {
  const double h = std::max(1e-5, 1e-5 * t);
  return (d.derivative(t + h, order - 1) - d.derivative(t - h, order - 1)) /
         (2.0 * h);
}

}  // namespace

TEST_CASE("exponential closed forms") {
  const DistPtr d = make_exponential(1.0);
  CHECK(d->cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(d->survival(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(d->survival(0.0) == 1.0);
  CHECK(d->mean() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d->variance() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d->quantile(1.0 - std::exp(-1.0)) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(d->partial_expectation(0.0,
                               std::numeric_limits<double>::infinity()) ==
        doctest::Approx(1.0).epsilon(1e-8));
  // E[X 1{X >= s}] = (s+1) e^{-s}
  CHECK(d->partial_expectation(2.0,
                               std::numeric_limits<double>::infinity()) ==
        doctest::Approx(3.0 * std::exp(-2.0)).epsilon(1e-8));
  CHECK(d->derivative(1.0, 1) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(d->derivative(1.0, 2) ==
        doctest::Approx(-std::exp(-1.0)).epsilon(1e-12));
  CHECK(d->derivative(1.0, 3) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("survival rejects negative arguments") {
  const DistPtr d = make_exponential(1.0);
  CHECK_THROWS_AS(d->survival(-0.5), Error);
}

TEST_CASE("frechet calibration: mean 1, variance 3") {
  const DistPtr d = make_frechet(2.197, 0.613);
  CHECK(d->mean() == doctest::Approx(1.0).epsilon(0.003));
  CHECK(d->variance() == doctest::Approx(3.0).epsilon(0.02 / 3.0));
  // pinned regression values
  CHECK(d->mean() == doctest::Approx(0.9996651239).epsilon(1e-8));
  CHECK(d->variance() == doctest::Approx(3.0052805238).epsilon(1e-8));
  // closed-form survival at the monopoly price
  CHECK(d->survival(0.524) ==
        doctest::Approx(1.0 - std::exp(-std::pow(0.524 / 0.613, -2.197)))
            .epsilon(1e-12));
  // median from the closed-form inverse
  CHECK(d->quantile(0.5) ==
        doctest::Approx(0.613 * std::pow(std::log(2.0), -1.0 / 2.197))
            .epsilon(1e-10));
}

TEST_CASE("analytic derivatives match finite differences") {
  const std::vector<DistPtr> laws = {make_exponential(0.7),
                                     make_frechet(2.197, 0.613),
                                     make_frechet(3.1, 1.4)};
  for (const auto& d : laws) {
    for (double t : {0.4, 0.8, 1.3, 2.0}) {
      CHECK(d->derivative(t, 1) ==
            doctest::Approx(fd_density(*d, t)).epsilon(1e-4));
      CHECK(d->derivative(t, 2) ==
            doctest::Approx(fd_of(*d, t, 2)).epsilon(1e-4));
      CHECK(d->derivative(t, 3) ==
            doctest::Approx(fd_of(*d, t, 3)).epsilon(1e-4));
    }
  }
}

TEST_CASE("density integrates back to the cdf") {
  const std::vector<DistPtr> laws = {make_exponential(1.0),
                                     make_frechet(2.197, 0.613)};
  const std::vector<std::pair<double, double>> windows = {{0.2, 1.7},
                                                          {0.3, 2.0}};
  for (const auto& d : laws) {
    for (const auto& [a, b] : windows) {
      const double integral =
          integrate([&d](double x) { return d->derivative(x, 1); }, a, b);
      CHECK(integral ==
            doctest::Approx(d->cdf(b) - d->cdf(a)).epsilon(1e-8));
    }
  }
}

TEST_CASE("quantile round-trips where the density is positive") {
  const std::vector<DistPtr> laws = {make_exponential(1.0),
                                     make_frechet(2.197, 0.613)};
  for (const auto& d : laws) {
    for (double t : {0.3, 0.7, 1.0, 1.9, 3.5}) {
      if (d->derivative(t, 1) <= 1e-10) continue;
      CHECK(std::abs(d->quantile(d->cdf(t)) - t) <= 1e-8);
    }
  }
}

TEST_CASE("quantile domain is the open unit interval") {
  const DistPtr d = make_exponential(1.0);
  CHECK_THROWS_AS(d->quantile(0.0), Error);
  CHECK_THROWS_AS(d->quantile(1.0), Error);
}

TEST_CASE("point masses: atoms, steps, partial expectations") {
  const DistPtr d = make_point_masses({{1.0, 0.5}, {2.0, 0.5}});
  CHECK(d->discrete());
  CHECK(d->atoms().size() == 2);
  CHECK(d->cdf(0.99) == 0.0);
  CHECK(d->cdf(1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d->survival(1.0) == 1.0);  // atom at 1 included in P(X >= 1)
  CHECK(d->survival(2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d->survival(2.5) == 0.0);
  CHECK(d->quantile(0.5) == 1.0);
  CHECK(d->quantile(0.75) == 2.0);
  CHECK(d->mean() == doctest::Approx(1.5).epsilon(1e-15));
  // only the atom at 2 lies in [1.5, inf)
  CHECK(d->partial_expectation(1.5,
                               std::numeric_limits<double>::infinity()) ==
        doctest::Approx(1.0).epsilon(1e-15));
  // atoms at both endpoints are included
  CHECK(d->partial_expectation(1.0, 2.0) ==
        doctest::Approx(1.5).epsilon(1e-15));
  CHECK_THROWS_AS(d->derivative(1.5, 1), Error);
}

TEST_CASE("point-mass construction is validated") {
  CHECK_THROWS_AS(make_point_masses({{1.0, 0.4}, {2.0, 0.4}}), Error);
  CHECK_THROWS_AS(make_point_masses({{2.0, 0.5}, {1.0, 0.5}}), Error);
  CHECK_THROWS_AS(make_point_masses({}), Error);
}

TEST_CASE("equal-revenue law: flat revenue and top atom") {
  const double pi = 0.3, top = 2.0;
  const DistPtr d = make_truncated_pareto(pi, top);
  for (double p : {0.3, 0.5, 1.0, 1.7, 2.0}) {
    CHECK(p * d->survival(p) == doctest::Approx(pi).epsilon(1e-12));
  }
  CHECK(d->survival(top) == doctest::Approx(pi / top).epsilon(1e-12));
  REQUIRE(d->atoms().size() == 1);
  CHECK(d->atoms()[0].first == top);
  CHECK(d->atoms()[0].second == doctest::Approx(pi / top).epsilon(1e-12));
  // mean = pi (1 + log(top/pi)); second moment = 2 pi top - pi^2
  const double mean = pi * (1.0 + std::log(top / pi));
  CHECK(d->mean() == doctest::Approx(mean).epsilon(1e-10));
  CHECK(d->variance() ==
        doctest::Approx(2.0 * pi * top - pi * pi - mean * mean)
            .epsilon(1e-9));
  CHECK(d->partial_expectation(d->support_lo(),
                               std::numeric_limits<double>::infinity()) ==
        doctest::Approx(mean).epsilon(1e-8));
  // degenerate segment: a point mass
  const DistPtr pm = make_truncated_pareto(1.0, 1.0);
  CHECK(pm->mean() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pm->variance() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("scaled law: exact homogeneity") {
  const DistPtr base = make_exponential(1.0);
  const DistPtr d = make_scaled(base, 2.0);
  CHECK(d->cdf(3.0) == doctest::Approx(base->cdf(1.5)).epsilon(1e-14));
  CHECK(d->mean() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d->variance() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(d->quantile(0.3) ==
        doctest::Approx(2.0 * base->quantile(0.3)).epsilon(1e-12));
  CHECK(d->partial_expectation(0.8, 2.6) ==
        doctest::Approx(2.0 * base->partial_expectation(0.4, 1.3))
            .epsilon(1e-8));
  // chain rule: F'(t) = base'(t/2) / 2
  CHECK(d->derivative(2.0, 1) ==
        doctest::Approx(base->derivative(1.0, 1) / 2.0).epsilon(1e-12));
  CHECK(d->derivative(2.0, 2) ==
        doctest::Approx(base->derivative(1.0, 2) / 4.0).epsilon(1e-12));
}

TEST_CASE("divergent moments are rejected by kind") {
  const DistPtr heavy = make_frechet(0.9, 1.0);  // infinite mean
  CHECK_THROWS_AS(heavy->mean(), Error);
  try {
    heavy->mean();
  } catch (const Error& e) {
    CHECK(e.code() == errc::divergent_mean);
  }
  const DistPtr mid = make_frechet(1.5, 1.0);  // finite mean, infinite var
  CHECK(mid->mean() > 0.0);
  CHECK_THROWS_AS(mid->variance(), Error);
}

TEST_CASE("factory parameter validation") {
  CHECK_THROWS_AS(make_exponential(0.0), Error);
  CHECK_THROWS_AS(make_frechet(-1.0, 1.0), Error);
  CHECK_THROWS_AS(make_scaled(make_exponential(1.0), 0.0), Error);
}
