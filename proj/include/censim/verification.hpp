#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "censim/equilibrium.hpp"

namespace censim {

// Expected payoff of one honest bidder with value v tipping t while the
// other n-1 honest bidders follow the candidate schedule and the briber's
// value is Uniform[0,1]:
//
//   U(v,t) = (n-1) * int_0^v f(w) tau(w) [Sa(v) - Sa(w)] dw + t * Sb(v)
//            - t * ((n-1) * mean(tau) + t)
//
// with Sa(x) = int_0^x F^(n-2), Sb(x) = int_0^x F^(n-1). The first group is
// the expected win margin times the inclusion probability (the briber only
// walks away when the posted tips beat his value); the last is the expected
// tip bill. For n = 1 this collapses to t * (v - t).
class HonestUtility {
 public:
  HonestUtility(const EquilibriumSolution& sol, int n);

  double operator()(double v, double t) const;

  // The t-dependent part of U(v,t): t * Sb(v) - t * ((n-1) * mean(tau) + t).
  // U(v,t) minus this is a function of v alone, so deviation gains at fixed
  // v can compare tip_component values without the rivals quadrature.
  double tip_component(double v, double t) const;

 private:
  int n_;
  double mean_tip_;
  std::function<double(double)> tip_;
  ValueDistribution F_;
  std::vector<double> sa_nodes_;  // cumulative int F^(n-2) on a fixed grid
  std::vector<double> sb_nodes_;  // cumulative int F^(n-1)
  double step_;

  double sa(double x) const;
  double sb(double x) const;
  double cum_lookup(const std::vector<double>& nodes, int power,
                    double x) const;
};

double utility_honest(double v, double t, const EquilibriumSolution& sol,
                      int n);

struct DeviationReport {
  double max_gain;   // best grid deviation utility minus schedule utility
  double arg_v;      // value where the largest gain was found
  double arg_t;      // deviating tip there
  double tolerance;  // threshold the caller considers an equilibrium pass
  bool pass;         // max_gain <= tolerance
};

// Grid search for profitable unilateral tip deviations against the
// schedule: v over [0,1] (v_grid points), t over [0,v] (t_grid points).
DeviationReport verify_honest_br(const EquilibriumSolution& sol, int n,
                                 int v_grid = 201, int t_grid = 2001,
                                 double tolerance = 1e-3);

// Copy of sol whose schedule is shifted by delta (clamped at 0); feed it to
// verify_honest_br to confirm the verifier flags a broken schedule.
EquilibriumSolution with_tip_shift(const EquilibriumSolution& sol,
                                   double delta);

// Exhaustive check of bidder 0's censorship choice for one realized auction:
// for every subset S of honest bidders, pay sum of tips over S to censor S,
// then bid v0 against the surviving bids in a second-price auction.
struct SubsetReport {
  std::uint32_t best_subset;  // bitmask, bit i-1 = honest bidder i censored
  double best_payoff;
  double full_set_payoff;
  double max_gain;  // best_payoff - full_set_payoff (0 when full set wins)
  bool full_set_optimal;
};

SubsetReport verify_bidder0_subsets(std::span<const double> values,
                                    std::span<const double> tips, double v0,
                                    double r = 0.0);

}  // namespace censim
