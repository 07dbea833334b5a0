#include "censim/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "censim/detail/mc_runner.hpp"
#include "censim/random.hpp"

namespace censim {

using detail::Accumulator;
using detail::Metrics;
using detail::kCensored;
using detail::kNoSale;
using detail::kProposer;
using detail::kSeller;
using detail::kSurplus0;
using detail::kSurplusHonest;
using detail::kTotalTip;
using detail::kWin0;
using detail::kWinHonest;

std::vector<std::pair<std::string, Estimate>> SimulationReport::rows() const {
  return {
      {"win_prob_bidder0", win_prob_bidder0},
      {"win_prob_honest", win_prob_honest},
      {"no_sale_prob", no_sale_prob},
      {"surplus_bidder0", surplus_bidder0},
      {"surplus_honest_per_bidder", surplus_honest_per_bidder},
      {"seller_revenue", seller_revenue},
      {"proposer_revenue", proposer_revenue},
      {"censor_frequency", censor_frequency},
      {"total_tip", total_tip},
  };
}

SimulationReport simulate(const AuctionConfig& config,
                          const EquilibriumSolution& sol, std::uint64_t trials,
                          std::uint64_t seed, int threads) {
  validate(config);
  if (trials == 0) throw std::invalid_argument("simulate: trials must be > 0");
  if (sol.n != config.n || sol.reserve != config.r) {
    throw std::invalid_argument("simulate: solution does not match config");
  }

  const int n = config.n;
  const Accumulator acc = detail::run_chunked(
      trials, threads, [&](std::uint64_t i, Metrics& m) {
        RandomStream rng = RandomStream::substream(seed, i);
        std::vector<double> values(n + 1);
        values[0] = config.F0.sample(rng);
        for (int j = 1; j <= n; ++j) values[j] = config.F.sample(rng);
        const GameOutcome out = play_game(config, sol, values);

        const bool honest_won = out.winner && *out.winner != 0;
        m[kWin0] = (out.winner && *out.winner == 0) ? 1.0 : 0.0;
        m[kWinHonest] = honest_won ? 1.0 : 0.0;
        m[kNoSale] = out.winner ? 0.0 : 1.0;
        m[kSurplus0] = out.surplus[0];
        double honest_surplus = 0.0;
        for (int j = 1; j <= n; ++j) honest_surplus += out.surplus[j];
        m[kSurplusHonest] = honest_surplus / n;
        m[kSeller] = out.seller_revenue;
        m[kProposer] = out.proposer_revenue;
        m[kCensored] = out.bribed ? 1.0 : 0.0;
        m[kTotalTip] = out.total_tip;
      });
  return detail::make_report(acc, trials);
}

SimulationReport baseline_spa(int n_total, const ValueDistribution& F,
                              double r, std::uint64_t trials,
                              std::uint64_t seed, int threads) {
  if (n_total < 1) {
    throw std::invalid_argument("baseline_spa: need at least one bidder");
  }
  if (!std::isfinite(r) || r < 0.0 || r >= 1.0) {
    throw std::invalid_argument("baseline_spa: reserve must lie in [0, 1)");
  }
  if (trials == 0) {
    throw std::invalid_argument("baseline_spa: trials must be > 0");
  }

  const Accumulator acc = detail::run_chunked(
      trials, threads, [&](std::uint64_t i, Metrics& m) {
        RandomStream rng = RandomStream::substream(seed, i);
        std::vector<std::pair<int, double>> bids(n_total);
        for (int j = 0; j < n_total; ++j) {
          bids[j] = {j + 1, F.sample(rng)};
        }
        const Settlement st = settle_auction(bids, r);

        m.fill(0.0);
        m[kWinHonest] = st.winner ? 1.0 : 0.0;
        m[kNoSale] = st.winner ? 0.0 : 1.0;
        if (st.winner) {
          const double winner_value = bids[*st.winner - 1].second;
          m[kSurplusHonest] = (winner_value - st.price) / n_total;
          m[kSeller] = st.price;
        }
      });
  return detail::make_report(acc, trials);
}

std::vector<FigureRow> figure_data(int n_min, int n_max,
                                   const ValueDistribution& F) {
  if (n_min < 2 || n_max < n_min) {
    throw std::invalid_argument("figure_data: need 2 <= n_min <= n_max");
  }
  std::vector<FigureRow> rows;
  rows.reserve(n_max - n_min + 1);
  for (int n = n_min; n <= n_max; ++n) {
    if (F.is_uniform_unit()) {
      const EquilibriumSolution sol = solve_uniform_n(n);
      rows.push_back(FigureRow{n, sol.v_lo, expected_total_tip(sol, n), true});
      continue;
    }
    if (!check_assumption1(F, n).holds) {
      rows.push_back(FigureRow{n, std::nan(""), std::nan(""), false});
      continue;
    }
    const EquilibriumSolution sol = solve_general_n(F, n);
    rows.push_back(FigureRow{n, sol.v_lo, expected_total_tip(sol, n), true});
  }
  return rows;
}

}  // namespace censim
