#pragma once

#include <cstdint>

#include "censim/board.hpp"
#include "censim/distributions.hpp"
#include "censim/montecarlo.hpp"

namespace censim {

// m >= 2 proposers build the same slot; a bid lands on the board unless all
// of them censor it. n honest bidders (values ~ F1) each post the
// conditional tip (t, T) = (0, 1); the briber's value follows F0.
struct MultiProposerConfig {
  int m;
  int n = 1;
  ValueDistribution F0;
  ValueDistribution F1;
};

void validate(const MultiProposerConfig& config);

// Mixed-strategy censoring probability of a single proposer offered z
// against a conditional tip: 0 below t, ((z-t)/(T-t))^(1/(m-1)) on [t,T),
// 1 from T up. T = t collapses to the step at z >= T.
double censor_prob(double z, ConditionalTip tip, int m);

// Briber's expected payoff from offering z to each proposer when full
// censorship is worth C: C*p^m - m*z*p at p = censor_prob(z, tip, m).
double briber_payoff(double C, double z, ConditionalTip tip, int m);

// In terms of the mixing probability p the payoff reads
// (C - m(T-t)) p^m - m t p. A nonpositive leading coefficient makes every
// interior mix lose money; a positive one makes the payoff convex in p.
// Either way the optimum sits at an endpoint: t (no effective bribe) when
// C < m*T, else T.
double optimal_bribe(double C, ConditionalTip tip, int m);

// Value of erasing the rivals entirely: v0 minus the second-price surplus
// bidder 0 already gets against `rivals` draws from F1. Equals
// v0 - integral_0^v0 F1(theta)^rivals dtheta; never exceeds v0.
double net_censor_value(double v0, const ValueDistribution& F1,
                        int rivals = 1);

// Seeded simulation of the concurrent-proposer game; same determinism
// contract as simulate(). On the equilibrium path optimal_bribe returns t=0,
// no proposer censors, tips collapse to 0 and the auction is a plain SPA
// between bidder 0 and the honest bidders.
SimulationReport simulate_multiproposer(const MultiProposerConfig& config,
                                        std::uint64_t trials,
                                        std::uint64_t seed, int threads = 0);

}  // namespace censim
