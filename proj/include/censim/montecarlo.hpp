#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "censim/game.hpp"

namespace censim {

struct Estimate {
  double mean;
  double std_error;  // sample standard deviation / sqrt(trials)
};

struct SimulationReport {
  std::uint64_t trials;
  Estimate win_prob_bidder0;
  Estimate win_prob_honest;
  Estimate no_sale_prob;
  Estimate surplus_bidder0;
  Estimate surplus_honest_per_bidder;  // honest surplus summed, divided by n
  Estimate seller_revenue;
  Estimate proposer_revenue;
  Estimate censor_frequency;
  Estimate total_tip;  // sum of tips attached to honest bids

  std::vector<std::pair<std::string, Estimate>> rows() const;
};

// Seeded Monte Carlo over play_game. Each trial draws its values from a
// substream keyed by (seed, trial index) and partial sums are merged in a
// fixed chunk order, so the report is bit-identical for a given seed no
// matter how many threads run it (threads = 0 picks a machine default).
SimulationReport simulate(const AuctionConfig& config,
                          const EquilibriumSolution& sol, std::uint64_t trials,
                          std::uint64_t seed, int threads = 0);

// Plain second-price auction among n_total honest bidders (no briber, no
// tips); the no-censorship reference line.
SimulationReport baseline_spa(int n_total, const ValueDistribution& F,
                              double r, std::uint64_t trials,
                              std::uint64_t seed, int threads = 0);

// Threshold and expected-total-tip curve over n. Uniform-family inputs use
// the closed-form uniform solver; other laws go through the general solver,
// and rows whose law fails Assumption 1 at that n are flagged rather than
// dropped.
struct FigureRow {
  int n;
  double v_lo;
  double total_tip;
  bool assumption1_ok;
};

std::vector<FigureRow> figure_data(int n_min, int n_max,
                                   const ValueDistribution& F);

}  // namespace censim
