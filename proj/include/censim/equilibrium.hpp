#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "censim/distributions.hpp"

namespace censim {

// Solved tipping equilibrium. tip(v) is the honest bidder's flat tip at value
// v; v_lo is the lowest value that tips a positive amount; mean_tip is
// E[tip(v)] under the honest value law. Treat instances as immutable.
struct EquilibriumSolution {
  enum class Kind { TwoBidder, UniformN, GeneralN };

  Kind kind;
  int n;            // number of honest bidders
  double reserve;
  double v_lo;
  double mean_tip;
  ValueDistribution honest_dist;  // law of each honest value
  ValueDistribution briber_dist;  // law of the colluding bidder's value
  std::function<double(double)> tip;
};

// One honest bidder against a briber with value law f0 and reserve r.
// tip(v) solves (v - r - t) f0(r+t) = F0(r+t); v_lo = r + F0(r)/f0(r).
EquilibriumSolution solve_two_bidder(const ValueDistribution& f0, double r);

// n >= 2 honest bidders, everyone Uniform[0,1], no reserve. v_lo is the root
// of (n+1)v^n/(n(n-1)) - v^(n+1)/(n+1) - 1/(n(n+1)) = 0 and
// tip(v) = (v^n - v_lo^n)/(2n) above it.
EquilibriumSolution solve_uniform_n(int n);

// n >= 2 honest bidders with value law F (support [0,1], Assumption-1
// checked), briber Uniform[0,1]. tip(v) = (1/2) integral_{v_lo}^v F^{n-1}.
EquilibriumSolution solve_general_n(const ValueDistribution& F, int n);

// Uniform honest bidders with reserve r in [0,1). The schedule mean c_r is
// the fixed point of c = E[max(0, (v^n/n - (n-1)c - r - r^n/n)/2)].
EquilibriumSolution solve_uniform_n_reserve(int n, double r);

// Expected sum of all n honest tips; equals v_lo^n/(n-1) for the uniform
// no-reserve solution and n * mean_tip in general.
double expected_total_tip(const EquilibriumSolution& sol, int n);

// Threshold mass v_lo^n against the 1/n and 1/sqrt(n) reference curves.
struct BoundsRow {
  int n;
  double v_lo;
  double v_lo_pow_n;
  double inv_n;
  double inv_sqrt_n;
  bool lower_holds;  // 1/n <= v_lo^n
  bool upper_holds;  // v_lo^n <= 1/sqrt(n)
};

struct BoundsReport {
  std::vector<BoundsRow> rows;
  // Smallest n from which lower_holds stays true through n_max, if any.
  std::optional<int> lower_stable_from;
  // Same for upper_holds.
  std::optional<int> upper_stable_from;
};

BoundsReport bounds_report(int n_min, int n_max);

}  // namespace censim
