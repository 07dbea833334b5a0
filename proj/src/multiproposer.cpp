#include "censim/multiproposer.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "censim/detail/mc_runner.hpp"
#include "censim/game.hpp"
#include "censim/random.hpp"

namespace censim {
namespace {

void require_proposers(int m) {
  if (m < 2) {
    throw std::invalid_argument("multiproposer: m must be >= 2");
  }
}

}  // namespace

void validate(const MultiProposerConfig& config) {
  require_proposers(config.m);
  if (config.n < 1) {
    throw std::invalid_argument("MultiProposerConfig: n must be >= 1");
  }
}

double censor_prob(double z, ConditionalTip tip, int m) {
  require_proposers(m);
  validate(TipOffer{tip});
  if (!std::isfinite(z)) {
    throw std::invalid_argument("censor_prob: z must be finite");
  }
  if (z >= tip.T) return 1.0;
  if (z < tip.t) return 0.0;
  return std::pow((z - tip.t) / (tip.T - tip.t), 1.0 / (m - 1.0));
}

double briber_payoff(double C, double z, ConditionalTip tip, int m) {
  const double p = censor_prob(z, tip, m);
  return C * std::pow(p, m) - m * z * p;
}

double optimal_bribe(double C, ConditionalTip tip, int m) {
  require_proposers(m);
  validate(TipOffer{tip});
  if (!(C >= 0.0)) {
    throw std::invalid_argument("optimal_bribe: C must be >= 0");
  }
  return C < m * tip.T ? tip.t : tip.T;
}

double net_censor_value(double v0, const ValueDistribution& F1, int rivals) {
  if (rivals < 1) {
    throw std::invalid_argument("net_censor_value: rivals must be >= 1");
  }
  if (!(v0 >= 0.0)) {
    throw std::invalid_argument("net_censor_value: v0 must be >= 0");
  }
  // Second-price surplus against the rivals is integral_0^v0 F1^rivals; the
  // cdf is 1 past the support, so split the tail off explicitly.
  const double inside = std::min(v0, F1.upper());
  double surplus = integral_F_pow(F1, rivals, 0.0, inside);
  surplus += v0 - inside;
  return v0 - surplus;
}

SimulationReport simulate_multiproposer(const MultiProposerConfig& config,
                                        std::uint64_t trials,
                                        std::uint64_t seed, int threads) {
  validate(config);
  if (trials == 0) {
    throw std::invalid_argument("simulate_multiproposer: trials must be > 0");
  }

  const int proposers = config.m;
  const int n = config.n;
  const ConditionalTip posted{0.0, 1.0};

  const detail::Accumulator acc = detail::run_chunked(
      trials, threads, [&](std::uint64_t i, detail::Metrics& met) {
        RandomStream rng = RandomStream::substream(seed, i);
        const double v0 = config.F0.sample(rng);
        std::vector<double> honest(n);
        for (int j = 0; j < n; ++j) honest[j] = config.F1.sample(rng);

        // Bidder 0's take-it-or-leave-it offer and the proposers' mixed
        // censoring response. A proposer who censors drops every honest
        // bid from its block and collects z; a bid reaches the board
        // unless all proposers censor.
        const double C = net_censor_value(v0, config.F1, n);
        const double z = optimal_bribe(C, posted, proposers);
        const double p = censor_prob(z, posted, proposers);
        int censor_count = 0;
        if (p > 0.0) {
          for (int k = 0; k < proposers; ++k) {
            if (rng.next_uniform() < p) ++censor_count;
          }
        }
        const int includer_count = proposers - censor_count;
        const bool censored = includer_count == 0;

        // Conditional tip: a bid pays T to a sole includer, t to each of
        // several includers, nothing when it never lands.
        double outlay_per_bid = 0.0;
        if (includer_count == 1) {
          outlay_per_bid = posted.T;
        } else if (includer_count >= 2) {
          outlay_per_bid = posted.t * includer_count;
        }
        const double tips_paid = censored ? 0.0 : outlay_per_bid * n;
        const double bribe_paid = z * censor_count;

        std::vector<std::pair<int, double>> bids;
        bids.reserve(n + 1);
        bids.emplace_back(0, v0);
        if (!censored) {
          for (int j = 0; j < n; ++j) bids.emplace_back(j + 1, honest[j]);
        }
        const Settlement st = settle_auction(bids, 0.0);

        const bool won0 = st.winner && *st.winner == 0;
        met[detail::kWin0] = won0 ? 1.0 : 0.0;
        met[detail::kWinHonest] = (st.winner && *st.winner != 0) ? 1.0 : 0.0;
        met[detail::kNoSale] = st.winner ? 0.0 : 1.0;
        met[detail::kSurplus0] = (won0 ? v0 - st.price : 0.0) - bribe_paid;
        double honest_surplus = -tips_paid;
        if (st.winner && *st.winner != 0) {
          honest_surplus += honest[*st.winner - 1] - st.price;
        }
        met[detail::kSurplusHonest] = honest_surplus / n;
        met[detail::kSeller] = st.winner ? st.price : 0.0;
        met[detail::kProposer] = tips_paid + bribe_paid;
        met[detail::kCensored] = censored ? 1.0 : 0.0;
        met[detail::kTotalTip] = tips_paid;
      });
  return detail::make_report(acc, trials);
}

}  // namespace censim
