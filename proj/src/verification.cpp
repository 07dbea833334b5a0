#include "censim/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "censim/numeric.hpp"

namespace censim {
namespace {

constexpr int kCumPanels = 8192;  // composite-Simpson resolution for Sa/Sb

// Cumulative integral of F^power at the panel nodes over [0,1].
std::vector<double> build_cumulative(const ValueDistribution& F, int power) {
  std::vector<double> nodes(kCumPanels + 1);
  nodes[0] = 0.0;
  const double h = 1.0 / kCumPanels;
  auto f = [&](double x) { return std::pow(F.cdf(x), power); };
  for (int i = 0; i < kCumPanels; ++i) {
    const double a = i * h;
    const double b = a + h;
    nodes[i + 1] =
        nodes[i] + h / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
  }
  return nodes;
}

}  // namespace

HonestUtility::HonestUtility(const EquilibriumSolution& sol, int n)
    : n_(n), tip_(sol.tip), F_(sol.honest_dist), step_(1.0 / kCumPanels) {
  if (n < 1) throw std::invalid_argument("HonestUtility: n must be >= 1");
  if (!sol.briber_dist.is_uniform_unit()) {
    throw std::invalid_argument(
        "HonestUtility: requires a Uniform[0,1] briber law");
  }
  if (F_.upper() != 1.0) {
    throw std::invalid_argument("HonestUtility: honest support must be [0,1]");
  }
  mean_tip_ = integrate([&](double w) { return tip_(w) * F_.pdf(w); }, 0.0,
                        1.0, 1e-10);
  if (n_ >= 2) {
    sa_nodes_ = build_cumulative(F_, n_ - 2);
    sb_nodes_ = build_cumulative(F_, n_ - 1);
  }
}

double HonestUtility::cum_lookup(const std::vector<double>& nodes, int power,
                                 double x) const {
  // Cumulative value at the node below x plus a local Simpson correction, so
  // accuracy does not hinge on linear interpolation between nodes.
  const int i = std::min(static_cast<int>(x / step_), kCumPanels - 1);
  const double a = i * step_;
  auto f = [&](double w) { return std::pow(F_.cdf(w), power); };
  return nodes[i] +
         (x - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + x)) + f(x));
}

double HonestUtility::sa(double x) const {
  return cum_lookup(sa_nodes_, n_ - 2, x);
}

double HonestUtility::sb(double x) const {
  return cum_lookup(sb_nodes_, n_ - 1, x);
}

double HonestUtility::tip_component(double v, double t) const {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument("HonestUtility: v outside [0,1]");
  }
  if (!(t >= 0.0)) {
    throw std::invalid_argument("HonestUtility: tip must be >= 0");
  }
  // Sb collapses to v when n = 1 (integral of F^0).
  const double sb_v = n_ == 1 ? v : sb(v);
  return t * sb_v - t * ((n_ - 1.0) * mean_tip_ + t);
}

double HonestUtility::operator()(double v, double t) const {
  const double tip_part = tip_component(v, t);
  if (n_ == 1) {
    return tip_part;
  }
  const double sa_v = sa(v);
  double rivals_term = 0.0;
  if (v > 0.0) {
    rivals_term =
        (n_ - 1.0) *
        integrate(
            [&](double w) {
              return F_.pdf(w) * tip_(w) * (sa_v - sa(w));
            },
            0.0, v, 1e-10);
  }
  return rivals_term + tip_part;
}

double utility_honest(double v, double t, const EquilibriumSolution& sol,
                      int n) {
  return HonestUtility(sol, n)(v, t);
}

DeviationReport verify_honest_br(const EquilibriumSolution& sol, int n,
                                 int v_grid, int t_grid, double tolerance) {
  if (v_grid < 2 || t_grid < 2) {
    throw std::invalid_argument("verify_honest_br: grids need >= 2 points");
  }
  const HonestUtility utility(sol, n);

  DeviationReport report{-std::numeric_limits<double>::infinity(), 0.0, 0.0,
                         tolerance, false};
  for (int i = 0; i < v_grid; ++i) {
    const double v = static_cast<double>(i) / (v_grid - 1);
    const double schedule_tip = sol.tip(v);
    // U(v,t) - U(v,t') depends on t only through tip_component, so the
    // rivals quadrature never needs to run inside the deviation scan.
    const double base = utility.tip_component(v, schedule_tip);
    for (int j = 0; j < t_grid; ++j) {
      const double t = v * static_cast<double>(j) / (t_grid - 1);
      const double gain = utility.tip_component(v, t) - base;
      if (gain > report.max_gain) {
        report.max_gain = gain;
        report.arg_v = v;
        report.arg_t = t;
      }
    }
  }
  report.pass = report.max_gain <= tolerance;
  return report;
}

EquilibriumSolution with_tip_shift(const EquilibriumSolution& sol,
                                   double delta) {
  EquilibriumSolution shifted = sol;
  auto base = sol.tip;
  shifted.tip = [base, delta](double v) {
    return std::max(0.0, base(v) + delta);
  };
  shifted.mean_tip = integrate(
      [&](double w) { return shifted.tip(w) * shifted.honest_dist.pdf(w); },
      0.0, shifted.honest_dist.upper(), 1e-10);
  return shifted;
}

SubsetReport verify_bidder0_subsets(std::span<const double> values,
                                    std::span<const double> tips, double v0,
                                    double r) {
  const std::size_t n = values.size();
  if (n == 0 || n > 20) {
    throw std::invalid_argument(
        "verify_bidder0_subsets: supports 1..20 honest bidders");
  }
  if (tips.size() != n) {
    throw std::invalid_argument(
        "verify_bidder0_subsets: values/tips size mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(values[i] >= 0.0) || !(tips[i] >= 0.0)) {
      throw std::invalid_argument(
          "verify_bidder0_subsets: values and tips must be >= 0");
    }
  }

  auto payoff = [&](std::uint32_t mask) {
    double cost = 0.0;
    double top_rival = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        cost += tips[i];
      } else {
        top_rival = std::max(top_rival, values[i]);
      }
    }
    // Bidder 0 wins ties (lowest id); a lone bid still pays the reserve.
    const bool wins = v0 >= r && v0 >= top_rival;
    if (!wins) return -cost;
    const double price = std::max(r, top_rival < 0.0 ? r : top_rival);
    return v0 - price - cost;
  };

  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
  SubsetReport report;
  report.full_set_payoff = payoff(full);
  report.best_subset = full;
  report.best_payoff = report.full_set_payoff;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    const double p = payoff(mask);
    if (p > report.best_payoff) {
      report.best_payoff = p;
      report.best_subset = mask;
    }
  }
  report.max_gain = report.best_payoff - report.full_set_payoff;
  report.full_set_optimal = report.best_subset == full;
  return report;
}

}  // namespace censim
