#include "censim/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace censim {
namespace {

double board_multiplier(const BoardSpec& board) {
  if (std::holds_alternative<SingleBlock>(board)) return 1.0;
  if (const auto* seq = std::get_if<SequentialBlocks>(&board)) {
    return static_cast<double>(seq->m);
  }
  throw std::invalid_argument(
      "play_game: concurrent-proposer boards are handled by the "
      "multi-proposer simulator");
}

}  // namespace

void validate(const AuctionConfig& config) {
  if (config.n < 1) {
    throw std::invalid_argument("AuctionConfig: n must be >= 1");
  }
  if (!std::isfinite(config.r) || config.r < 0.0 || config.r >= 1.0) {
    throw std::invalid_argument("AuctionConfig: reserve must lie in [0, 1)");
  }
  validate(config.board);
  if (const auto* seq = std::get_if<SequentialBlocks>(&config.board)) {
    if (seq->m >= 2 && config.F0.upper() <= static_cast<double>(seq->m)) {
      throw std::invalid_argument(
          "AuctionConfig: sequential board needs briber support beyond m");
    }
  }
}

BribeDecision bribe_decision(double v0, std::span<const double> tips,
                             double multiplier) {
  if (!(multiplier >= 1.0)) {
    throw std::invalid_argument("bribe_decision: multiplier must be >= 1");
  }
  double sum = 0.0;
  for (double t : tips) {
    if (!(t >= 0.0)) {
      throw std::invalid_argument("bribe_decision: tips must be >= 0");
    }
    sum += t;
  }
  const double cost = multiplier * sum;
  if (cost <= v0) return BribeDecision{true, cost};
  return BribeDecision{false, 0.0};
}

bool proposer_decision(double tips_of_subset, double offered_payment) {
  return offered_payment >= tips_of_subset;
}

Settlement settle_auction(std::span<const std::pair<int, double>> bids,
                          double r) {
  Settlement s{std::nullopt, 0.0};
  double best = -1.0;
  double second = -1.0;
  for (const auto& [id, bid] : bids) {
    if (!(std::isfinite(bid) && bid >= 0.0)) {
      throw std::invalid_argument("settle_auction: bids must be >= 0");
    }
    const bool beats_best =
        bid > best || (bid == best && s.winner && id < *s.winner);
    if (beats_best) {
      if (s.winner) second = std::max(second, best);
      best = bid;
      s.winner = id;
    } else {
      second = std::max(second, bid);
    }
  }
  if (!s.winner || best < r) {
    return Settlement{std::nullopt, 0.0};
  }
  s.price = std::max(r, second < 0.0 ? r : second);
  return s;
}

GameOutcome play_game(const AuctionConfig& config,
                      const EquilibriumSolution& sol,
                      std::span<const double> values, BribeMode mode) {
  validate(config);
  if (values.size() != static_cast<std::size_t>(config.n) + 1) {
    throw std::invalid_argument("play_game: need n+1 values (bidder 0 first)");
  }
  if (sol.n != config.n || sol.reserve != config.r) {
    throw std::invalid_argument("play_game: solution does not match config");
  }
  const double v0 = values[0];
  if (!(v0 >= 0.0 && v0 <= config.F0.upper())) {
    throw std::invalid_argument("play_game: bidder-0 value outside support");
  }

  GameOutcome out;
  out.values.assign(values.begin(), values.end());
  out.tips.resize(config.n);
  out.surplus.assign(config.n + 1, 0.0);

  double sum_tips = 0.0;
  for (int i = 1; i <= config.n; ++i) {
    const double v = values[i];
    if (!(v >= 0.0 && v <= config.F.upper())) {
      throw std::invalid_argument("play_game: honest value outside support");
    }
    out.tips[i - 1] = sol.tip(v);
    sum_tips += out.tips[i - 1];
  }
  out.total_tip = sum_tips;

  const double multiplier = board_multiplier(config.board);
  BribeDecision bd{false, 0.0};
  if (mode == BribeMode::Equilibrium) {
    // The bribe pays off only if bidder 0 can also clear the reserve.
    bd = bribe_decision(v0 - config.r, out.tips, multiplier);
  }
  out.bribed = bd.bribe;
  out.bribe_paid = bd.payment;

  std::vector<std::pair<int, double>> bids;
  if (bd.bribe) {
    // Every proposer involved takes the deal: the payment matches the tips
    // it displaces. Compare totals; dividing the payment back into a
    // per-block share can round below the per-block tips.
    if (!proposer_decision(multiplier * sum_tips, bd.payment)) {
      throw std::logic_error("play_game: proposer refused a covering bribe");
    }
    out.included.push_back(0);
    bids.emplace_back(0, v0);
  } else {
    for (int i = 1; i <= config.n; ++i) {
      out.included.push_back(i);
      bids.emplace_back(i, values[i]);
    }
  }

  const Settlement st = settle_auction(bids, config.r);
  out.winner = st.winner;
  out.price = st.price;
  out.seller_revenue = st.winner ? st.price : 0.0;

  double tips_collected = 0.0;
  for (int id : out.included) {
    if (id == 0) continue;
    tips_collected += out.tips[id - 1];
  }
  out.proposer_revenue = tips_collected + out.bribe_paid;

  for (int id : out.included) {
    if (id == 0) continue;
    out.surplus[id] -= out.tips[id - 1];
  }
  if (out.winner) {
    out.surplus[*out.winner] += out.values[*out.winner] - out.price;
  }
  out.surplus[0] -= out.bribe_paid;
  return out;
}

}  // namespace censim
