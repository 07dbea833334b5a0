#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "censim/montecarlo.hpp"

namespace censim::detail {

inline constexpr int kMetricCount = 9;
using Metrics = std::array<double, kMetricCount>;

enum MetricIndex {
  kWin0,
  kWinHonest,
  kNoSale,
  kSurplus0,
  kSurplusHonest,
  kSeller,
  kProposer,
  kCensored,
  kTotalTip,
};

struct Accumulator {
  Metrics sum{};
  Metrics sumsq{};

  void add(const Metrics& m) {
    for (int i = 0; i < kMetricCount; ++i) {
      sum[i] += m[i];
      sumsq[i] += m[i] * m[i];
    }
  }

  void merge(const Accumulator& other) {
    for (int i = 0; i < kMetricCount; ++i) {
      sum[i] += other.sum[i];
      sumsq[i] += other.sumsq[i];
    }
  }
};

inline int resolve_threads(int threads) {
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  if (threads == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
  }
  return threads;
}

// Runs `trials` trials split into fixed-size chunks. Workers pull chunk
// indices from an atomic counter; every chunk's partial sums land in a slot
// owned by its index and the final merge walks the slots in order, so the
// totals do not depend on the thread schedule.
template <class TrialFn>
Accumulator run_chunked(std::uint64_t trials, int threads,
                        const TrialFn& trial) {
  constexpr std::uint64_t kChunk = 16384;
  const std::uint64_t chunk_count = (trials + kChunk - 1) / kChunk;
  std::vector<Accumulator> partials(chunk_count);

  auto worker = [&](std::atomic<std::uint64_t>& next) {
    Metrics m{};
    for (std::uint64_t c = next.fetch_add(1); c < chunk_count;
         c = next.fetch_add(1)) {
      Accumulator acc;
      const std::uint64_t begin = c * kChunk;
      const std::uint64_t end = std::min(trials, begin + kChunk);
      for (std::uint64_t i = begin; i < end; ++i) {
        trial(i, m);
        acc.add(m);
      }
      partials[c] = acc;
    }
  };

  std::atomic<std::uint64_t> next{0};
  const int worker_count = static_cast<int>(std::min<std::uint64_t>(
      static_cast<std::uint64_t>(resolve_threads(threads)), chunk_count));
  if (worker_count <= 1) {
    worker(next);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (int t = 0; t < worker_count; ++t) {
      pool.emplace_back([&] { worker(next); });
    }
    for (std::thread& t : pool) t.join();
  }

  Accumulator total;
  for (const Accumulator& p : partials) total.merge(p);
  return total;
}

inline Estimate to_estimate(double sum, double sumsq, std::uint64_t n) {
  const double mean = sum / static_cast<double>(n);
  if (n < 2) return Estimate{mean, 0.0};
  double var = (sumsq - static_cast<double>(n) * mean * mean) /
               (static_cast<double>(n) - 1.0);
  if (var < 0.0) var = 0.0;  // rounding guard for constant metrics
  return Estimate{mean, std::sqrt(var / static_cast<double>(n))};
}

inline SimulationReport make_report(const Accumulator& acc,
                                    std::uint64_t trials) {
  auto est = [&](int i) {
    return to_estimate(acc.sum[i], acc.sumsq[i], trials);
  };
  SimulationReport r;
  r.trials = trials;
  r.win_prob_bidder0 = est(kWin0);
  r.win_prob_honest = est(kWinHonest);
  r.no_sale_prob = est(kNoSale);
  r.surplus_bidder0 = est(kSurplus0);
  r.surplus_honest_per_bidder = est(kSurplusHonest);
  r.seller_revenue = est(kSeller);
  r.proposer_revenue = est(kProposer);
  r.censor_frequency = est(kCensored);
  r.total_tip = est(kTotalTip);
  return r;
}

}  // namespace censim::detail
