// Acceptance gate: one line per criterion, [PASS]/[FAIL], exit 1 on any
// failure. argv[1] must be the path to the censim CLI binary (used by the
// end-to-end determinism criterion).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "censim/board.hpp"
#include "censim/equilibrium.hpp"
#include "censim/game.hpp"
#include "censim/montecarlo.hpp"
#include "censim/multiproposer.hpp"
#include "censim/random.hpp"
#include "censim/verification.hpp"
#include "support/oracles.hpp"

using namespace censim;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass,
            const std::vector<std::string>& notes = {}) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", id,
              name.c_str());
  for (const std::string& note : notes) {
    std::printf("         %s\n", note.c_str());
  }
  if (!pass) ++g_failures;
}

bool within(double x, double target, double tol) {
  return std::fabs(x - target) <= tol;
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

AuctionConfig collusion_config(int n, double r) {
  return AuctionConfig{n, r, ValueDistribution::uniform_unit(),
                       ValueDistribution::uniform_unit(), SingleBlock{}};
}

// Threshold equation for the uniform n-bidder schedule, restated locally.
double threshold_eq(double v, int n) {
  const double nn = n;
  return (nn + 1.0) * std::pow(v, n) / (nn * (nn - 1.0)) -
         std::pow(v, n + 1) / (nn + 1.0) - 1.0 / (nn * (nn + 1.0));
}

// --------------------------------------------------------------------------
// 1. Single honest bidder, no reserve: simulated moments match integration.
// --------------------------------------------------------------------------
void criterion1() {
  const auto cfg = collusion_config(1, 0.0);
  const auto sol = solve_two_bidder(cfg.F0, 0.0);

  const auto start = std::chrono::steady_clock::now();
  const SimulationReport rep = simulate(cfg, sol, 1000000, 101);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  const auto bench = oracle::collusion_benchmarks(0.0);
  bool ok = secs < 30.0;
  ok = within(rep.win_prob_bidder0.mean, 0.75, 0.005) && ok;
  ok = within(rep.win_prob_honest.mean, 0.25, 0.005) && ok;
  ok = within(rep.surplus_honest_per_bidder.mean, 1.0 / 12.0, 0.003) && ok;
  ok = (rep.seller_revenue.mean == 0.0) && ok;
  ok = within(rep.proposer_revenue.mean, 0.25, 0.003) && ok;
  ok = within(rep.surplus_bidder0.mean, bench.surplus0, 0.003) && ok;

  report(1, "single honest bidder, no reserve: simulated moments", ok,
         {"1000000 trials in " + num(secs) + " s",
          "win prob bidder0 " + num(rep.win_prob_bidder0.mean) +
              " (target 0.75), honest " + num(rep.win_prob_honest.mean) +
              " (target 0.25)",
          "briber surplus " + num(rep.surplus_bidder0.mean) +
              " vs integration oracle " + num(bench.surplus0) +
              " (= 7/24); a commonly quoted reference of 13/48 = " +
              num(13.0 / 48.0) + " does not match this strategy profile"});
}

// --------------------------------------------------------------------------
// 2. Single honest bidder, reserve 1/4: posted reference values.
// --------------------------------------------------------------------------
void criterion2() {
  const double r = 0.25;
  const auto cfg = collusion_config(1, r);
  const auto sol = solve_two_bidder(cfg.F0, r);
  const SimulationReport rep = simulate(cfg, sol, 1000000, 102);
  const auto bench = oracle::collusion_benchmarks(r);

  const bool win0_ok = within(rep.win_prob_bidder0.mean, 0.703125, 0.005);
  const bool win1_ok = within(rep.win_prob_honest.mean, 0.1875, 0.005);
  const bool seller_ok = within(rep.seller_revenue.mean, 0.234375, 0.003);
  const bool proposer_ok = within(rep.proposer_revenue.mean, 0.0625, 0.003);
  const bool ok = win0_ok && win1_ok && seller_ok && proposer_ok;

  report(
      2, "single honest bidder, reserve 1/4: posted reference values", ok,
      {"win prob bidder0 " + num(rep.win_prob_bidder0.mean) +
           ", posted target 0.703125 +- 0.005, integration oracle " +
           num(bench.win0) + (win0_ok ? " (ok)" : " (off target)"),
       "win prob honest  " + num(rep.win_prob_honest.mean) +
           ", posted target 0.187500 +- 0.005, integration oracle " +
           num(bench.win1) + (win1_ok ? " (ok)" : " (off target)"),
       "seller revenue   " + num(rep.seller_revenue.mean) +
           ", posted target 0.234375 +- 0.003, integration oracle " +
           num(bench.seller) + (seller_ok ? " (ok)" : " (off target)"),
       "proposer revenue " + num(rep.proposer_revenue.mean) +
           ", posted target 0.062500 +- 0.003, integration oracle " +
           num(bench.proposer) + (proposer_ok ? " (ok)" : " (off target)"),
       "the two win-probability targets disagree with direct integration of "
       "this strategy profile (11/16 and 1/4); the revenue targets agree"});
}

// --------------------------------------------------------------------------
// 3. Baseline second-price auction, two bidders.
// --------------------------------------------------------------------------
void criterion3() {
  const SimulationReport rep = baseline_spa(
      2, ValueDistribution::uniform_unit(), 0.0, 1000000, 103);
  const bool revenue_ok = within(rep.seller_revenue.mean, 1.0 / 3.0, 0.003);
  const bool surplus_ok =
      within(rep.surplus_honest_per_bidder.mean, 1.0 / 6.0, 0.003);
  report(3, "baseline second-price auction, two bidders",
         revenue_ok && surplus_ok,
         {"revenue " + num(rep.seller_revenue.mean) +
              " (target 1/3), per-bidder surplus " +
              num(rep.surplus_honest_per_bidder.mean) + " (target 1/6)"});
}

// --------------------------------------------------------------------------
// 4. Threshold equation residual and tip cap across n = 2..200.
// --------------------------------------------------------------------------
void criterion4() {
  double worst_residual = 0.0;
  double worst_excess = -1.0;
  bool ok = true;
  for (int n = 2; n <= 200; ++n) {
    const auto sol = solve_uniform_n(n);
    const double residual = std::fabs(threshold_eq(sol.v_lo, n));
    worst_residual = std::max(worst_residual, residual);
    if (residual > 1e-10) ok = false;
    for (int i = 0; i <= 10000; ++i) {
      const double v = i / 10000.0;
      const double excess = sol.tip(v) - v / n;
      worst_excess = std::max(worst_excess, excess);
      if (excess > 1e-12) ok = false;
    }
  }
  report(4, "threshold equation residual and tip cap across n = 2..200", ok,
         {"max |residual| = " + num(worst_residual * 1e12) +
              "e-12, max tip - v/n = " + num(worst_excess * 1e12) + "e-12"});
}

// --------------------------------------------------------------------------
// 5. Threshold mass bounds: 1/n floor stabilizes and 1/sqrt(n) cap holds.
// --------------------------------------------------------------------------
void criterion5() {
  const BoundsReport rep = bounds_report(2, 200);

  const bool floor_reported = rep.lower_stable_from.has_value();
  bool cap_holds = true;
  std::optional<BoundsRow> first_violation;
  for (const BoundsRow& row : rep.rows) {
    if (!row.upper_holds) {
      cap_holds = false;
      if (!first_violation) first_violation = row;
    }
  }

  std::vector<std::string> notes;
  if (floor_reported) {
    notes.push_back("floor 1/n <= v_lo^n holds from n = " +
                    std::to_string(*rep.lower_stable_from) +
                    " through 200 (reported)");
  } else {
    notes.push_back("no stable onset found for the 1/n floor");
  }
  if (first_violation) {
    notes.push_back("cap v_lo^n <= 1/sqrt(n) first fails at n = " +
                    std::to_string(first_violation->n) + ": v_lo^n = " +
                    num(first_violation->v_lo_pow_n) + " > 1/sqrt(n) = " +
                    num(first_violation->inv_sqrt_n));
    notes.push_back(
        "v_lo^n keeps rising toward " + num(rep.rows.back().v_lo_pow_n) +
        " at n = 200 while 1/sqrt(n) falls, so the cap fails for every "
        "larger n in range");
  }

  report(5, "threshold mass bounds: 1/n floor stabilizes, 1/sqrt(n) cap",
         floor_reported && cap_holds, notes);
}

// --------------------------------------------------------------------------
// 6. General solver agrees with the uniform closed form.
// --------------------------------------------------------------------------
void criterion6() {
  bool ok = true;
  double worst = 0.0;
  for (int n : {2, 5, 10}) {
    const auto closed = solve_uniform_n(n);
    const auto general =
        solve_general_n(ValueDistribution::uniform_unit(), n);
    double sup = std::fabs(general.v_lo - closed.v_lo);
    for (int i = 0; i <= 1000; ++i) {
      const double v = i / 1000.0;
      sup = std::max(sup, std::fabs(general.tip(v) - closed.tip(v)));
    }
    worst = std::max(worst, sup);
    if (sup > 1e-8) ok = false;
  }
  report(6, "general solver matches the uniform closed form (n = 2, 5, 10)",
         ok, {"worst sup-norm gap = " + num(worst * 1e9) + "e-9"});
}

// --------------------------------------------------------------------------
// 7. Total tip decays in n and matches simulation.
// --------------------------------------------------------------------------
void criterion7() {
  bool decreasing = true;
  double prev = 0.0;
  for (int n = 2; n <= 50; ++n) {
    const auto sol = solve_uniform_n(n);
    const double total = expected_total_tip(sol, n);
    if (n > 2 && total >= prev) decreasing = false;
    prev = total;
  }

  bool mc_ok = true;
  std::string mc_note = "simulated vs closed form:";
  for (int n : {2, 5, 10}) {
    const auto sol = solve_uniform_n(n);
    const auto cfg = collusion_config(n, 0.0);
    const SimulationReport rep = simulate(cfg, sol, 100000, 107);
    const double target = expected_total_tip(sol, n);
    const double gap = std::fabs(rep.total_tip.mean - target);
    if (gap > 4.0 * rep.total_tip.std_error) mc_ok = false;
    mc_note += " n=" + std::to_string(n) + " " + num(rep.total_tip.mean) +
               "/" + num(target);
  }

  report(7, "total tip strictly decreasing over n = 2..50, matches MC",
         decreasing && mc_ok, {mc_note});
}

// --------------------------------------------------------------------------
// 8. Full-set censorship optimal over all subsets.
// --------------------------------------------------------------------------
void criterion8() {
  RandomStream rng(88);
  bool ok = true;
  int checked = 0;
  for (int instance = 0; instance < 1000; ++instance) {
    const int n = 2 + instance % 7;
    std::vector<double> values(n);
    std::vector<double> tips(n);
    double tip_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      values[i] = rng.next_uniform();
      tips[i] = values[i] / n * rng.next_uniform();
      tip_sum += tips[i];
    }
    const double v0 = tip_sum + (1.0 - tip_sum) * rng.next_uniform();
    const SubsetReport rep = verify_bidder0_subsets(values, tips, v0);
    if (!rep.full_set_optimal) ok = false;
    ++checked;
  }
  report(8, "full-set censorship optimal over all subsets", ok,
         {std::to_string(checked) +
          " random instances, n in 2..8, tips below value/n"});
}

// --------------------------------------------------------------------------
// 9. No profitable tip deviation; the verifier catches a broken schedule.
// --------------------------------------------------------------------------
void criterion9() {
  bool ok = true;
  std::vector<std::string> notes;
  for (int n : {1, 2, 3}) {
    const auto sol = n == 1
                         ? solve_two_bidder(ValueDistribution::uniform_unit(), 0.0)
                         : solve_uniform_n(n);
    const double tol = n == 1 ? 1e-6 : 1e-3;
    const DeviationReport clean = verify_honest_br(sol, n, 201, 2001, tol);
    if (!clean.pass) ok = false;

    const auto broken = with_tip_shift(sol, 0.05);
    const DeviationReport power = verify_honest_br(broken, n, 201, 2001, tol);
    const bool detected = power.max_gain > 1e-3;
    if (!detected) ok = false;

    notes.push_back("n=" + std::to_string(n) + ": max_gain " +
                    num(clean.max_gain) + " <= " + num(tol) +
                    ", perturbed schedule gain " + num(power.max_gain) +
                    (detected ? " (detected)" : " (missed)"));
  }
  report(9, "no profitable tip deviation; perturbed schedule detected", ok,
         notes);
}

// --------------------------------------------------------------------------
// 10. Longer review windows reduce censorship; schedule unchanged.
// --------------------------------------------------------------------------
void criterion10() {
  // The tip solver takes no board input, so the schedule is identical across
  // window lengths by construction; assert it on a grid anyway, then check
  // the censorship frequencies separate cleanly.
  const auto sol = solve_uniform_n(10);

  bool schedule_same = true;
  bool ordered = true;
  bool separated = true;
  std::string note = "censor frequency:";
  double prev_mean = 2.0;
  double prev_low = 2.0;
  for (int m : {1, 2, 5}) {
    const ValueDistribution F0 =
        ValueDistribution::uniform_scaled(static_cast<double>(m) + 1.0);
    const BoardSpec board =
        m == 1 ? BoardSpec{SingleBlock{}} : BoardSpec{SequentialBlocks{m}};
    const AuctionConfig cfg{10, 0.0, ValueDistribution::uniform_unit(), F0,
                            board};
    validate(cfg);

    const auto sol_m = solve_uniform_n(10);
    for (int i = 0; i <= 1000; ++i) {
      const double v = i / 1000.0;
      if (sol_m.tip(v) != sol.tip(v)) schedule_same = false;
    }

    const SimulationReport rep = simulate(cfg, sol, 100000, 110);
    const double mean = rep.censor_frequency.mean;
    const double se = rep.censor_frequency.std_error;
    if (mean >= prev_mean) ordered = false;
    if (mean + 3.0 * se >= prev_low) separated = false;
    prev_mean = mean;
    prev_low = mean - 3.0 * se;
    note += " m=" + std::to_string(m) + " " + num(mean) + "+-" + num(se);
  }

  report(10, "longer review windows reduce censorship, schedule unchanged",
         schedule_same && ordered && separated, {note});
}

// --------------------------------------------------------------------------
// 11. Concurrent proposers: censorship deterred, indifference, endpoints.
// --------------------------------------------------------------------------
void criterion11() {
  const MultiProposerConfig cfg{2, 1, ValueDistribution::uniform_unit(),
                                ValueDistribution::uniform_unit()};
  const SimulationReport rep = simulate_multiproposer(cfg, 1000000, 111);

  bool ok = rep.censor_frequency.mean == 0.0 &&
            rep.censor_frequency.std_error == 0.0;
  ok = within(rep.seller_revenue.mean, 1.0 / 3.0, 0.005) && ok;
  ok = within(rep.surplus_bidder0.mean, 1.0 / 6.0, 0.005) && ok;
  ok = within(rep.surplus_honest_per_bidder.mean, 1.0 / 6.0, 0.005) && ok;

  // Interior mixing makes each proposer exactly indifferent.
  double worst_residual = 0.0;
  for (int m : {2, 3}) {
    const ConditionalTip tip{0.1, 0.9};
    for (int i = 1; i < 1000; ++i) {
      const double z = 0.1 + 0.8 * i / 1000.0;
      const double p = censor_prob(z, tip, m);
      const double refuse = tip.t + (tip.T - tip.t) * std::pow(p, m - 1);
      worst_residual = std::max(worst_residual, std::fabs(z - refuse));
    }
  }
  ok = worst_residual <= 1e-10 && ok;

  // The optimal bribe beats a dense grid search.
  double worst_gap = 0.0;
  for (double C : {0.5, 1.0, 2.5}) {
    const ConditionalTip tip{0.1, 0.9};
    const double star = briber_payoff(C, optimal_bribe(C, tip, 2), tip, 2);
    double best = -1e30;
    for (int i = 0; i <= 10000; ++i) {
      const double z = 0.1 + 0.8 * i / 10000.0;
      best = std::max(best, briber_payoff(C, z, tip, 2));
    }
    worst_gap = std::max(worst_gap, best - star);
  }
  ok = worst_gap <= 1e-9 && ok;

  report(11, "concurrent proposers deter censorship on path", ok,
         {"censor frequency " + num(rep.censor_frequency.mean) +
              ", revenue " + num(rep.seller_revenue.mean) +
              " (target 1/3), surpluses " + num(rep.surplus_bidder0.mean) +
              "/" + num(rep.surplus_honest_per_bidder.mean) + " (target 1/6)",
          "indifference residual <= " + num(worst_residual * 1e12) +
              "e-12, endpoint-vs-grid gap <= " + num(worst_gap * 1e12) +
              "e-12"});
}

// --------------------------------------------------------------------------
// 12. Censorship-resistance identities.
// --------------------------------------------------------------------------
void criterion12() {
  RandomStream rng(12);
  bool ok = true;
  for (int i = 0; i < 100; ++i) {
    const double t = 2.0 * rng.next_uniform();
    if (censorship_resistance(SingleBlock{}, FlatTip{t}) != t) ok = false;
  }
  for (int i = 0; i < 100; ++i) {
    const int m = 1 + static_cast<int>(rng.next_uniform() * 20.0);
    const double t = 2.0 * rng.next_uniform();
    if (censorship_resistance(SequentialBlocks{m}, FlatTip{t}) !=
        static_cast<double>(m) * t) {
      ok = false;
    }
  }
  for (int i = 0; i < 100; ++i) {
    const int k = 2 + static_cast<int>(rng.next_uniform() * 19.0);
    const double t = rng.next_uniform();
    const double T = t + rng.next_uniform();
    if (censorship_resistance(ConcurrentProposers{k}, ConditionalTip{t, T}) !=
        static_cast<double>(k) * T) {
      ok = false;
    }
  }
  report(12, "censorship-resistance identities (single, windowed, parallel)",
         ok, {"300 random inputs, exact equality"});
}

// --------------------------------------------------------------------------
// 13. Byte-identical CSV across reruns and thread counts (via the binary).
// --------------------------------------------------------------------------
std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void criterion13(const char* binary) {
  namespace fs = std::filesystem;
  if (binary == nullptr) {
    report(13, "byte-identical CSV across reruns and thread counts", false,
           {"path to the CLI binary is required as argv[1]"});
    return;
  }

  const fs::path dir = fs::temp_directory_path() / "censim_acceptance13";
  fs::remove_all(dir);
  fs::create_directories(dir);

  auto write_cfg = [&](const std::string& name, int threads) {
    const fs::path p = dir / name;
    std::ofstream f(p);
    f << "{\"n\":2,\"trials\":20000,\"seed\":9,\"threads\":" << threads
      << "}";
    return p.string();
  };
  const std::string cfg1 = write_cfg("t1.json", 1);
  const std::string cfg4 = write_cfg("t4.json", 4);

  bool ok = true;
  auto run = [&](const std::string& cfg, const std::string& out) {
    const std::string cmd = std::string(binary) + " simulate --config " +
                            cfg + " --out " + (dir / out).string() +
                            " > /dev/null 2>&1";
    if (std::system(cmd.c_str()) != 0) ok = false;
  };
  run(cfg1, "a");
  run(cfg1, "b");
  run(cfg4, "c");

  const std::string a = slurp(dir / "a" / "simulate.csv");
  const std::string b = slurp(dir / "b" / "simulate.csv");
  const std::string c = slurp(dir / "c" / "simulate.csv");
  ok = ok && !a.empty() && a == b && a == c;

  fs::remove_all(dir);
  report(13, "byte-identical CSV across reruns and thread counts", ok,
         {"same seed, two runs at 1 thread and one at 4 threads"});
}

}  // namespace

int main(int argc, char** argv) {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  criterion13(argc > 1 ? argv[1] : nullptr);

  std::printf("%d/13 criteria passed\n", 13 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
