#include "censim/equilibrium.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "censim/numeric.hpp"

namespace censim {
namespace {

constexpr double kRootTol = 1e-12;
constexpr int kRootIter = 200;

void require_reserve(double r) {
  if (!std::isfinite(r) || r < 0.0 || r >= 1.0) {
    throw std::invalid_argument("reserve must lie in [0, 1)");
  }
}

double schedule_mean(const std::function<double(double)>& tip,
                     const ValueDistribution& F) {
  return integrate([&](double v) { return tip(v) * F.pdf(v); }, 0.0,
                   F.upper());
}

// Left side of the threshold equation for the uniform n-bidder schedule.
double uniform_threshold_eq(double v, int n) {
  const double nn = n;
  return (nn + 1.0) * std::pow(v, n) / (nn * (nn - 1.0)) -
         std::pow(v, n + 1) / (nn + 1.0) - 1.0 / (nn * (nn + 1.0));
}

}  // namespace

EquilibriumSolution solve_two_bidder(const ValueDistribution& f0, double r) {
  require_reserve(r);
  const RegularityReport reg = check_regularity(f0);
  if (!reg.holds) {
    throw SolverError(
        "solve_two_bidder: briber law fails regularity (F0/f0 not "
        "nondecreasing) near v = " +
        std::to_string(reg.first_violation.value_or(-1.0)));
  }
  if (r >= f0.upper()) {
    throw std::invalid_argument("solve_two_bidder: reserve outside F0 support");
  }

  const double F0_r = f0.cdf(r);
  const double f0_r = f0.pdf(r);
  const double v_lo = (F0_r == 0.0) ? r : r + F0_r / f0_r;

  auto tip = [f0, r, v_lo](double v) -> double {
    if (!(v > v_lo)) return 0.0;
    // First-order condition for the honest tip at value v.
    auto foc = [&](double t) {
      return (v - r - t) * f0.pdf(r + t) - f0.cdf(r + t);
    };
    const double hi = std::min(v - r, f0.upper() - r);
    // foc(0) >= 0 once v > v_lo and foc(hi) < 0; keep the bisection invariant
    // "foc(lo) >= 0 > foc(hi)" so a zero-density left endpoint still works.
    double lo_t = 0.0;
    double hi_t = hi;
    if (foc(hi_t) >= 0.0) return hi_t;
    for (int i = 0; i < kRootIter && (hi_t - lo_t) > kRootTol; ++i) {
      const double mid = 0.5 * (lo_t + hi_t);
      if (foc(mid) >= 0.0) {
        lo_t = mid;
      } else {
        hi_t = mid;
      }
    }
    return 0.5 * (lo_t + hi_t);
  };

  EquilibriumSolution sol{EquilibriumSolution::Kind::TwoBidder,
                          1,
                          r,
                          v_lo,
                          0.0,
                          ValueDistribution::uniform_unit(),
                          f0,
                          tip};
  sol.mean_tip = schedule_mean(sol.tip, sol.honest_dist);
  return sol;
}

EquilibriumSolution solve_uniform_n(int n) {
  if (n < 2) {
    throw std::invalid_argument(
        "solve_uniform_n: needs n >= 2 (use solve_two_bidder for n = 1)");
  }
  const double v_lo = bisect([n](double v) { return uniform_threshold_eq(v, n); },
                             0.0, 1.0, kRootTol, kRootIter);
  const double v_lo_n = std::pow(v_lo, n);
  const double c = v_lo_n / (static_cast<double>(n) * (n - 1.0));
  auto tip = [n, v_lo, v_lo_n](double v) -> double {
    if (!(v > v_lo)) return 0.0;
    return (std::pow(v, n) - v_lo_n) / (2.0 * n);
  };
  return EquilibriumSolution{EquilibriumSolution::Kind::UniformN,
                             n,
                             0.0,
                             v_lo,
                             c,
                             ValueDistribution::uniform_unit(),
                             ValueDistribution::uniform_unit(),
                             tip};
}

EquilibriumSolution solve_general_n(const ValueDistribution& F, int n) {
  if (n < 2) {
    throw std::invalid_argument("solve_general_n: needs n >= 2");
  }
  if (F.upper() != 1.0) {
    throw std::invalid_argument("solve_general_n: support must be [0,1]");
  }
  const Assumption1Report a1 = check_assumption1(F, n);
  if (!a1.holds) {
    throw SolverError(
        "solve_general_n: integral of F^(n-1) exceeds v/n (max ratio " +
        std::to_string(a1.max_ratio) + "), schedule would not be enforceable");
  }

  const double S1 = integral_F_pow(F, n - 1, 0.0, 1.0);
  const double ratio = (n + 1.0) / (n - 1.0);
  // Decreasing in v: positive at 0 (F^n < F^(n-1) on the interior), negative
  // at 1.
  auto threshold = [&](double v) {
    return S1 - integral_F_pow(F, n, v, 1.0) -
           ratio * integral_F_pow(F, n - 1, 0.0, v);
  };
  if (!(threshold(0.0) >= 0.0 && threshold(1.0) <= 0.0)) {
    throw SolverError("solve_general_n: threshold equation has no sign change");
  }
  const double v_lo = bisect(threshold, 0.0, 1.0, kRootTol, kRootIter);
  const double c = integral_F_pow(F, n - 1, 0.0, v_lo) / (n - 1.0);

  auto tip = [F, n, v_lo](double v) -> double {
    if (!(v > v_lo)) return 0.0;
    return 0.5 * integral_F_pow(F, n - 1, v_lo, v);
  };
  return EquilibriumSolution{EquilibriumSolution::Kind::GeneralN,
                             n,
                             0.0,
                             v_lo,
                             c,
                             F,
                             ValueDistribution::uniform_unit(),
                             tip};
}

EquilibriumSolution solve_uniform_n_reserve(int n, double r) {
  if (n < 2) {
    throw std::invalid_argument("solve_uniform_n_reserve: needs n >= 2");
  }
  require_reserve(r);

  const double c0 = solve_uniform_n(n).mean_tip;
  const double base = r + std::pow(r, n) / n;

  // E[tip(v)] for a candidate mean c, in closed form for uniform values.
  auto mean_for = [&](double c) {
    const double K = (n - 1.0) * c + base;
    const double nK = n * K;
    if (nK >= 1.0) return 0.0;
    const double v_star = std::pow(nK, 1.0 / n);
    return 0.5 * ((1.0 - std::pow(v_star, n + 1)) / (n * (n + 1.0)) -
                  K * (1.0 - v_star));
  };
  auto gap = [&](double c) { return mean_for(c) - c; };

  double c_r;
  if (r == 0.0 || gap(c0) >= 0.0) {
    c_r = c0;  // fixed point sits at the no-reserve mean
  } else {
    c_r = bisect(gap, 0.0, c0, 1e-15, kRootIter);
  }

  const double K = (n - 1.0) * c_r + base;
  const double nK = n * K;
  const double v_lo = (nK >= 1.0) ? 1.0 : std::pow(nK, 1.0 / n);
  auto tip = [n, K, v_lo](double v) -> double {
    if (!(v > v_lo)) return 0.0;
    return 0.5 * (std::pow(v, n) / n - K);
  };
  return EquilibriumSolution{EquilibriumSolution::Kind::UniformN,
                             n,
                             r,
                             v_lo,
                             c_r,
                             ValueDistribution::uniform_unit(),
                             ValueDistribution::uniform_unit(),
                             tip};
}

double expected_total_tip(const EquilibriumSolution& sol, int n) {
  if (n != sol.n) {
    throw std::invalid_argument("expected_total_tip: n does not match solution");
  }
  if (sol.kind == EquilibriumSolution::Kind::UniformN && sol.reserve == 0.0) {
    return std::pow(sol.v_lo, n) / (n - 1.0);
  }
  return n * sol.mean_tip;
}

BoundsReport bounds_report(int n_min, int n_max) {
  if (n_min < 2 || n_max < n_min) {
    throw std::invalid_argument("bounds_report: need 2 <= n_min <= n_max");
  }
  BoundsReport report;
  report.rows.reserve(n_max - n_min + 1);
  for (int n = n_min; n <= n_max; ++n) {
    const EquilibriumSolution sol = solve_uniform_n(n);
    BoundsRow row;
    row.n = n;
    row.v_lo = sol.v_lo;
    row.v_lo_pow_n = std::pow(sol.v_lo, n);
    row.inv_n = 1.0 / n;
    row.inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    row.lower_holds = row.inv_n <= row.v_lo_pow_n;
    row.upper_holds = row.v_lo_pow_n <= row.inv_sqrt_n;
    report.rows.push_back(row);
  }
  auto stable_from = [&](auto holds) -> std::optional<int> {
    std::optional<int> from;
    for (const BoundsRow& row : report.rows) {
      if (holds(row)) {
        if (!from) from = row.n;
      } else {
        from.reset();
      }
    }
    return from;
  };
  report.lower_stable_from =
      stable_from([](const BoundsRow& r) { return r.lower_holds; });
  report.upper_stable_from =
      stable_from([](const BoundsRow& r) { return r.upper_holds; });
  return report;
}

}  // namespace censim
