#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "censim/board.hpp"
#include "censim/distributions.hpp"
#include "censim/equilibrium.hpp"

namespace censim {

// One auction instance: n honest bidders with value law F, a colluding
// bidder 0 with law F0, reserve r, played on the given board. Sequential
// boards with m >= 2 require F0's support to reach beyond m so the briber
// can sometimes afford the multiplied bribe.
struct AuctionConfig {
  int n;
  double r;
  ValueDistribution F;
  ValueDistribution F0;
  BoardSpec board;
};

void validate(const AuctionConfig& config);

struct BribeDecision {
  bool bribe;
  double payment;  // multiplier * sum of tips when bribing, else 0
};

// Bidder 0 buys out the whole tip schedule iff it costs no more than v0.
BribeDecision bribe_decision(double v0, std::span<const double> tips,
                             double multiplier);

// A proposer takes the bribe iff it covers the tips it would forgo
// (indifference resolved in the briber's favor).
bool proposer_decision(double tips_of_subset, double offered_payment);

struct Settlement {
  std::optional<int> winner;  // bidder id, absent if no bid meets the reserve
  double price;
};

// Second-price settlement: highest bid >= r wins and pays
// max(r, best losing included bid); ties go to the lowest bidder id.
Settlement settle_auction(std::span<const std::pair<int, double>> bids,
                          double r);

struct GameOutcome {
  std::vector<double> values;   // index 0 is bidder 0
  std::vector<double> tips;     // honest tips, index i-1 for bidder i
  bool bribed;
  double bribe_paid;
  std::vector<int> included;    // bidder ids whose bids reached the board
  std::optional<int> winner;
  double price;
  std::vector<double> surplus;  // per bidder, index 0 is bidder 0
  double seller_revenue;
  double proposer_revenue;      // tips collected plus bribe
  double total_tip;             // sum of tips attached to honest bids
};

// Diagnostic switch: Disabled forces bidder 0 out of the game entirely, so
// the outcome is the plain second-price auction among honest bidders.
enum class BribeMode { Equilibrium, Disabled };

// Plays one auction at the given values (index 0 is bidder 0). Honest
// bidders bid truthfully and tip per the solution; bidder 0 observes the
// tips and bribes iff multiplier * sum(tips) + r <= v0, bidding only when
// he bribes.
GameOutcome play_game(const AuctionConfig& config,
                      const EquilibriumSolution& sol,
                      std::span<const double> values,
                      BribeMode mode = BribeMode::Equilibrium);

}  // namespace censim
