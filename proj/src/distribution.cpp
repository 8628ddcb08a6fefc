#include "stopping/distribution.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

#include "stopping/error.hpp"
#include "stopping/numerics.hpp"

namespace stopping {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_order(double a, double b) {
  if (!(a >= 0.0) || !(a <= b)) {
    fail(errc::invalid_argument,
         "partial_expectation needs 0 <= a <= b, got [" + std::to_string(a) +
             ", " + std::to_string(b) + "]");
  }
}

void require_probability(double q) {
  if (!(q > 0.0) || !(q < 1.0)) {
    fail(errc::invalid_argument,
         "quantile argument must lie strictly inside (0,1), got " +
             std::to_string(q));
  }
}

void require_derivative_order(int order) {
  if (order < 1 || order > 3) {
    fail(errc::invalid_argument,
         "cdf derivative order must be 1, 2, or 3, got " +
             std::to_string(order));
  }
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

void Distribution::require_nonnegative(double t) {
  if (!(t >= 0.0)) {
    fail(errc::invalid_argument,
         "survival argument must be >= 0, got " + std::to_string(t));
  }
}

double Distribution::survival(double t) const {
  require_nonnegative(t);
  if (t <= support_lo()) return 1.0;
  return 1.0 - cdf(t);  // continuous laws: no atom correction needed
}

double Distribution::derivative(double t, int order) const {
  (void)t;
  require_derivative_order(order);
  fail(errc::unsupported_for_discrete,
       "cdf derivative undefined for " + describe());
}

// ----------------------------------------------------------------- Exponential

class Exponential final : public Distribution {
 public:
  explicit Exponential(double rate) : rate_(rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
      fail(errc::invalid_argument, "exponential rate must be positive");
    }
  }

  double cdf(double t) const override {
    return t > 0.0 ? -std::expm1(-rate_ * t) : 0.0;
  }

  double survival(double t) const override {
    require_nonnegative(t);
    return t > 0.0 ? std::exp(-rate_ * t) : 1.0;
  }

  double quantile(double q) const override {
    require_probability(q);
    return -std::log1p(-q) / rate_;
  }

  double mean() const override { return 1.0 / rate_; }
  double variance() const override { return 1.0 / (rate_ * rate_); }

  double partial_expectation(double a, double b) const override {
    require_order(a, b);
    // antiderivative of t rate e^{-rate t}: -(t + 1/rate) e^{-rate t}
    auto anti = [this](double t) {
      return -(t + 1.0 / rate_) * std::exp(-rate_ * t);
    };
    const double upper = std::isinf(b) ? 0.0 : anti(b);
    return upper - anti(a);
  }

  double derivative(double t, int order) const override {
    require_derivative_order(order);
    if (!(t > 0.0)) {
      fail(errc::invalid_argument, "derivative needs an interior point t > 0");
    }
    const double density = rate_ * std::exp(-rate_ * t);
    if (order == 1) return density;
    if (order == 2) return -rate_ * density;
    return rate_ * rate_ * density;
  }

  std::string describe() const override {
    return "exponential(" + num(rate_) + ")";
  }

 private:
  double rate_;
};

// --------------------------------------------------------------------- Frechet

class Frechet final : public Distribution {
 public:
  Frechet(double shape, double scale) : shape_(shape), scale_(scale) {
    if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) ||
        !std::isfinite(scale)) {
      fail(errc::invalid_argument, "frechet shape and scale must be positive");
    }
  }

  double cdf(double t) const override {
    if (t <= 0.0) return 0.0;
    return std::exp(-z(t));
  }

  double survival(double t) const override {
    require_nonnegative(t);
    if (t <= 0.0) return 1.0;
    return -std::expm1(-z(t));
  }

  double quantile(double q) const override {
    require_probability(q);
    return scale_ * std::pow(-std::log(q), -1.0 / shape_);
  }

  double mean() const override {
    if (shape_ <= 1.0) {
      fail(errc::divergent_mean,
           "mean of " + describe() + " diverges (shape <= 1)");
    }
    return scale_ * std::tgamma(1.0 - 1.0 / shape_);
  }

  double variance() const override {
    if (shape_ <= 2.0) {
      fail(errc::divergent_mean,
           "variance of " + describe() + " diverges (shape <= 2)");
    }
    const double g1 = std::tgamma(1.0 - 1.0 / shape_);
    const double g2 = std::tgamma(1.0 - 2.0 / shape_);
    return scale_ * scale_ * (g2 - g1 * g1);
  }

  double partial_expectation(double a, double b) const override {
    require_order(a, b);
    if (std::isinf(b)) {
      if (shape_ <= 1.0) {
        fail(errc::divergent_tail,
             "tail expectation of " + describe() + " diverges (shape <= 1)");
      }
      return upper_tail(a);
    }
    if (shape_ <= 1.0) {
      // finite window with a divergent-tail shape: the incomplete-gamma form
      // is unusable, but the windowed integral itself is finite
      const double lo = std::max(a, 1e-300);
      if (b <= lo) return 0.0;
      return integrate([this](double x) { return x * density(x); }, lo, b);
    }
    return upper_tail(a) - upper_tail(b);
  }

  double derivative(double t, int order) const override {
    require_derivative_order(order);
    if (!(t > 0.0)) {
      fail(errc::invalid_argument, "derivative needs an interior point t > 0");
    }
    const double g = shape_;
    const double zz = z(t);
    const double e = std::exp(-zz);
    if (order == 1) return g * e * zz / t;
    if (order == 2) return g * e * (g * zz * zz - (g + 1.0) * zz) / (t * t);
    return g * e *
           (g * g * zz * zz * zz - (3.0 * g * g + 3.0 * g) * zz * zz +
            (g + 1.0) * (g + 2.0) * zz) /
           (t * t * t);
  }

  std::string describe() const override {
    return "frechet(" + num(shape_) + ", " + num(scale_) + ")";
  }

 private:
  double z(double t) const { return std::pow(t / scale_, -shape_); }

  double density(double t) const { return shape_ * std::exp(-z(t)) * z(t) / t; }

  // E[X 1{X >= a}] = scale * gamma_lower(1 - 1/shape, z(a)); needs shape > 1.
  double upper_tail(double a) const {
    if (a <= 0.0) return mean();
    return scale_ *
           boost::math::tgamma_lower(1.0 - 1.0 / shape_, z(a));
  }

  double shape_;
  double scale_;
};

// ----------------------------------------------------------------- PointMasses

class PointMasses final : public Distribution {
 public:
  explicit PointMasses(std::vector<std::pair<double, double>> atoms)
      : atoms_(std::move(atoms)) {
    if (atoms_.empty()) {
      fail(errc::invalid_argument, "point-mass law needs at least one atom");
    }
    double total = 0.0;
    double prev = -kInf;
    for (const auto& [value, mass] : atoms_) {
      if (!(value >= 0.0) || !std::isfinite(value)) {
        fail(errc::invalid_argument, "atom values must be finite and >= 0");
      }
      if (!(value > prev)) {
        fail(errc::invalid_argument, "atom values must be strictly increasing");
      }
      if (!(mass > 0.0)) {
        fail(errc::invalid_argument, "atom masses must be positive");
      }
      prev = value;
      total += mass;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      fail(errc::invalid_argument,
           "atom masses must sum to 1 within 1e-12, got " + num(total));
    }
  }

  double cdf(double t) const override {
    double acc = 0.0;
    for (const auto& [value, mass] : atoms_) {
      if (value <= t) acc += mass;
    }
    return acc;
  }

  double survival(double t) const override {
    require_nonnegative(t);
    double acc = 0.0;
    for (const auto& [value, mass] : atoms_) {
      if (value >= t) acc += mass;
    }
    return acc;
  }

  double quantile(double q) const override {
    require_probability(q);
    double acc = 0.0;
    for (const auto& [value, mass] : atoms_) {
      acc += mass;
      if (acc >= q) return value;
    }
    return atoms_.back().first;  // guards rounding of the final partial sum
  }

  double mean() const override {
    double acc = 0.0;
    for (const auto& [value, mass] : atoms_) acc += value * mass;
    return acc;
  }

  double variance() const override {
    const double m = mean();
    double acc = 0.0;
    for (const auto& [value, mass] : atoms_) {
      acc += (value - m) * (value - m) * mass;
    }
    return acc;
  }

  double partial_expectation(double a, double b) const override {
    require_order(a, b);
    double acc = 0.0;
    for (const auto& [value, mass] : atoms_) {
      if (value >= a && value <= b) acc += value * mass;
    }
    return acc;
  }

  bool discrete() const override { return true; }

  std::vector<std::pair<double, double>> atoms() const override {
    return atoms_;
  }

  double support_lo() const override { return atoms_.front().first; }
  double support_hi() const override { return atoms_.back().first; }

  std::string describe() const override {
    std::string out = "pointmasses(";
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (i) out += ", ";
      out += "(" + num(atoms_[i].first) + ", " + num(atoms_[i].second) + ")";
    }
    return out + ")";
  }

 private:
  std::vector<std::pair<double, double>> atoms_;
};

// ------------------------------------------------------------ TruncatedPareto

class TruncatedPareto final : public Distribution {
 public:
  TruncatedPareto(double pi_lo, double top) : pi_(pi_lo), top_(top) {
    if (!(pi_lo > 0.0) || !(top >= pi_lo) || !std::isfinite(top)) {
      fail(errc::invalid_argument,
           "equal-revenue segment needs 0 < pi_lo <= top < infinity");
    }
  }

  double cdf(double t) const override {
    if (t >= top_) return 1.0;
    if (t <= pi_) return 0.0;
    return 1.0 - pi_ / t;
  }

  double survival(double t) const override {
    require_nonnegative(t);
    if (t <= pi_) return 1.0;
    if (t > top_) return 0.0;
    return pi_ / t;  // includes the atom pi/top at the top of the support
  }

  double quantile(double q) const override {
    require_probability(q);
    if (pi_ == top_) return top_;
    const double x = pi_ / (1.0 - q);
    return x < top_ ? x : top_;
  }

  double mean() const override { return pi_ * (1.0 + std::log(top_ / pi_)); }

  double variance() const override {
    // E[X^2] = 2 pi top - pi^2 (density part pi(top - pi) plus atom pi top)
    const double m = mean();
    return 2.0 * pi_ * top_ - pi_ * pi_ - m * m;
  }

  double partial_expectation(double a, double b) const override {
    require_order(a, b);
    double acc = 0.0;
    const double lo = std::max(a, pi_);
    const double hi = std::min(b, top_);
    if (hi > lo) acc += pi_ * std::log(hi / lo);  // integral of x * pi/x^2
    if (a <= top_ && b >= top_) acc += top_ * (pi_ / top_);  // atom at the top
    return acc;
  }

  double derivative(double t, int order) const override {
    require_derivative_order(order);
    if (pi_ == top_) {
      fail(errc::unsupported_for_discrete,
           "degenerate equal-revenue segment is a point mass");
    }
    if (!(t >= pi_) || !(t < top_)) {
      fail(errc::invalid_argument,
           "derivative defined on [pi_lo, top) for the equal-revenue law");
    }
    if (order == 1) return pi_ / (t * t);
    if (order == 2) return -2.0 * pi_ / (t * t * t);
    return 6.0 * pi_ / (t * t * t * t);
  }

  std::vector<std::pair<double, double>> atoms() const override {
    return {{top_, pi_ == top_ ? 1.0 : pi_ / top_}};
  }

  bool discrete() const override { return pi_ == top_; }

  double support_lo() const override { return pi_; }
  double support_hi() const override { return top_; }

  std::string describe() const override {
    return "truncated_pareto(" + num(pi_) + ", " + num(top_) + ")";
  }

 private:
  double pi_;
  double top_;
};

// ---------------------------------------------------------------------- Scaled

class Scaled final : public Distribution {
 public:
  Scaled(DistPtr base, double factor) : base_(std::move(base)), c_(factor) {
    if (!base_) fail(errc::invalid_argument, "scaled law needs a base");
    if (!(factor > 0.0) || !std::isfinite(factor)) {
      fail(errc::invalid_argument, "scale factor must be positive and finite");
    }
  }

  double cdf(double t) const override { return base_->cdf(t / c_); }

  double survival(double t) const override {
    require_nonnegative(t);
    return base_->survival(t / c_);
  }

  double quantile(double q) const override { return c_ * base_->quantile(q); }

  double mean() const override { return c_ * base_->mean(); }
  double variance() const override { return c_ * c_ * base_->variance(); }

  double partial_expectation(double a, double b) const override {
    require_order(a, b);
    return c_ * base_->partial_expectation(a / c_, std::isinf(b) ? b : b / c_);
  }

  double derivative(double t, int order) const override {
    require_derivative_order(order);
    return base_->derivative(t / c_, order) / std::pow(c_, order);
  }

  bool discrete() const override { return base_->discrete(); }

  std::vector<std::pair<double, double>> atoms() const override {
    auto list = base_->atoms();
    for (auto& [value, mass] : list) value *= c_;
    return list;
  }

  double support_lo() const override { return c_ * base_->support_lo(); }
  double support_hi() const override { return c_ * base_->support_hi(); }

  std::string describe() const override {
    return "scaled(" + base_->describe() + ", " + num(c_) + ")";
  }

 private:
  DistPtr base_;
  double c_;
};

// ------------------------------------------------------------------- factories

DistPtr make_exponential(double rate) {
  return std::make_shared<Exponential>(rate);
}

DistPtr make_frechet(double shape, double scale) {
  return std::make_shared<Frechet>(shape, scale);
}

DistPtr make_point_masses(std::vector<std::pair<double, double>> atoms) {
  return std::make_shared<PointMasses>(std::move(atoms));
}

DistPtr make_truncated_pareto(double pi_lo, double top) {
  return std::make_shared<TruncatedPareto>(pi_lo, top);
}

DistPtr make_scaled(DistPtr base, double factor) {
  return std::make_shared<Scaled>(std::move(base), factor);
}

}  // namespace stopping
