#pragma once

#include <optional>

#include "censim/random.hpp"

namespace censim {

// Value distribution on [0, upper]. Three families cover every configuration
// the solvers and simulators accept: Uniform[0,1], Uniform[0,kappa] for the
// briber in multi-block settings, and Beta(alpha, beta) on [0,1].
class ValueDistribution {
 public:
  enum class Family { UniformUnit, UniformScaled, Beta };

  static ValueDistribution uniform_unit();
  static ValueDistribution uniform_scaled(double kappa);  // kappa >= 1
  static ValueDistribution beta(double alpha, double beta);

  Family family() const { return family_; }
  double lower() const { return 0.0; }
  double upper() const { return upper_; }
  double alpha() const { return a_; }
  double beta_param() const { return b_; }

  // Uniform[0,1] in the sense the solvers care about (Beta(1,1) included).
  bool is_uniform_unit() const;

  // cdf clamps to {0,1} outside the support; pdf is 0 outside.
  double cdf(double v) const;
  double pdf(double v) const;

  // Inverse cdf for u in [0,1]; Beta quantiles are bisected to ~1e-14.
  double quantile(double u) const;

  // Inverse-transform draw; deterministic given the stream state.
  double sample(RandomStream& rng) const { return quantile(rng.next_uniform()); }

 private:
  ValueDistribution(Family f, double upper, double a, double b)
      : family_(f), upper_(upper), a_(a), b_(b) {}

  Family family_;
  double upper_;
  double a_, b_;
};

struct DistEval {
  double cdf;
  double pdf;
};

DistEval eval(const ValueDistribution& dist, double v);

// Checks F/f nondecreasing on an interior grid (reversed-hazard regularity).
struct RegularityReport {
  bool holds;
  std::optional<double> first_violation;  // grid point where it first fails
};

RegularityReport check_regularity(const ValueDistribution& dist,
                                  int grid_points = 10001,
                                  double tolerance = 1e-9);

// Checks the tipping-solver hypothesis: integral_0^v F^{n-1} <= v/n on (0,1].
struct Assumption1Report {
  bool holds;
  double max_ratio;  // max over the grid of n * integral_0^v F^{n-1} / v
};

Assumption1Report check_assumption1(const ValueDistribution& dist, int n,
                                    int grid_points = 10001,
                                    double tolerance = 1e-9);

// integral_a^b F(theta)^k dtheta by adaptive Simpson (abs tol 1e-10).
double integral_F_pow(const ValueDistribution& dist, int k, double a, double b);

}  // namespace censim
