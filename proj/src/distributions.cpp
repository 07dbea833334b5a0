#include "censim/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "censim/numeric.hpp"

namespace censim {
namespace {

// Regularized incomplete beta I_x(a,b) via the continued fraction, with the
// symmetry split at x = (a+1)/(a+b+2). Absolute error well under 1e-12.
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw SolverError("incomplete beta: continued fraction did not converge");
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * betacf(a, b, x) / a;
  }
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double beta_pdf(double a, double b, double x) {
  if (x <= 0.0 || x >= 1.0) {
    // Endpoint densities: finite only when the exponent vanishes.
    if (x == 0.0 && a == 1.0) return std::exp(-log_beta(a, b));
    if (x == 1.0 && b == 1.0) return std::exp(-log_beta(a, b));
    return (x < 0.0 || x > 1.0) ? 0.0
                                : std::numeric_limits<double>::infinity();
  }
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) -
                  log_beta(a, b));
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + ": non-finite argument");
  }
}

}  // namespace

ValueDistribution ValueDistribution::uniform_unit() {
  return ValueDistribution(Family::UniformUnit, 1.0, 0.0, 0.0);
}

ValueDistribution ValueDistribution::uniform_scaled(double kappa) {
  require_finite(kappa, "uniform_scaled");
  if (kappa < 1.0) {
    throw std::invalid_argument("uniform_scaled: kappa must be >= 1");
  }
  return ValueDistribution(Family::UniformScaled, kappa, 0.0, 0.0);
}

ValueDistribution ValueDistribution::beta(double alpha, double beta) {
  require_finite(alpha, "beta");
  require_finite(beta, "beta");
  if (alpha <= 0.0 || beta <= 0.0) {
    throw std::invalid_argument("beta: shape parameters must be positive");
  }
  return ValueDistribution(Family::Beta, 1.0, alpha, beta);
}

bool ValueDistribution::is_uniform_unit() const {
  if (family_ == Family::UniformUnit) return true;
  return family_ == Family::Beta && a_ == 1.0 && b_ == 1.0;
}

double ValueDistribution::cdf(double v) const {
  require_finite(v, "cdf");
  if (v <= 0.0) return 0.0;
  if (v >= upper_) return 1.0;
  switch (family_) {
    case Family::UniformUnit:
      return v;
    case Family::UniformScaled:
      return v / upper_;
    case Family::Beta:
      return reg_inc_beta(a_, b_, v);
  }
  return 0.0;
}

double ValueDistribution::pdf(double v) const {
  require_finite(v, "pdf");
  if (v < 0.0 || v > upper_) return 0.0;
  switch (family_) {
    case Family::UniformUnit:
      return 1.0;
    case Family::UniformScaled:
      return 1.0 / upper_;
    case Family::Beta:
      return beta_pdf(a_, b_, v);
  }
  return 0.0;
}

double ValueDistribution::quantile(double u) const {
  require_finite(u, "quantile");
  if (u < 0.0 || u > 1.0) {
    throw std::invalid_argument("quantile: u outside [0,1]");
  }
  switch (family_) {
    case Family::UniformUnit:
      return u;
    case Family::UniformScaled:
      return u * upper_;
    case Family::Beta: {
      if (u == 0.0) return 0.0;
      if (u == 1.0) return 1.0;
      double lo = 0.0;
      double hi = 1.0;
      for (int i = 0; i < 100 && (hi - lo) > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (reg_inc_beta(a_, b_, mid) < u) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
  }
  return 0.0;
}

DistEval eval(const ValueDistribution& dist, double v) {
  return DistEval{dist.cdf(v), dist.pdf(v)};
}

RegularityReport check_regularity(const ValueDistribution& dist,
                                  int grid_points, double tolerance) {
  if (grid_points < 2) {
    throw std::invalid_argument("check_regularity: need at least 2 points");
  }
  const double lo = dist.lower();
  const double hi = dist.upper();
  double prev_ratio = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= grid_points; ++i) {
    const double v =
        lo + (hi - lo) * static_cast<double>(i) / (grid_points + 1);
    const DistEval e = eval(dist, v);
    if (!(e.pdf > 0.0)) {
      return RegularityReport{false, v};  // F/f undefined on the interior
    }
    const double ratio = e.cdf / e.pdf;
    if (ratio < prev_ratio - tolerance) {
      return RegularityReport{false, v};
    }
    prev_ratio = ratio;
  }
  return RegularityReport{true, std::nullopt};
}

Assumption1Report check_assumption1(const ValueDistribution& dist, int n,
                                    int grid_points, double tolerance) {
  if (n < 1) throw std::invalid_argument("check_assumption1: n must be >= 1");
  if (grid_points < 2) {
    throw std::invalid_argument("check_assumption1: need at least 2 points");
  }
  if (dist.upper() != 1.0) {
    throw std::invalid_argument("check_assumption1: support must be [0,1]");
  }
  double cum = 0.0;
  double prev_v = 0.0;
  double max_ratio = 0.0;
  for (int i = 1; i <= grid_points; ++i) {
    const double v = static_cast<double>(i) / grid_points;
    cum += integral_F_pow(dist, n - 1, prev_v, v);
    prev_v = v;
    const double ratio = n * cum / v;
    if (ratio > max_ratio) max_ratio = ratio;
  }
  return Assumption1Report{max_ratio <= 1.0 + tolerance, max_ratio};
}

double integral_F_pow(const ValueDistribution& dist, int k, double a,
                      double b) {
  require_finite(a, "integral_F_pow");
  require_finite(b, "integral_F_pow");
  if (k < 0) throw std::invalid_argument("integral_F_pow: negative power");
  if (a > b) throw std::invalid_argument("integral_F_pow: a > b");
  if (a < dist.lower() || b > dist.upper()) {
    throw std::invalid_argument("integral_F_pow: interval outside support");
  }
  if (k == 0) return b - a;
  return integrate(
      [&](double theta) { return std::pow(dist.cdf(theta), k); }, a, b);
}

}  // namespace censim
