#include "censim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "censim/board.hpp"
#include "censim/csv.hpp"
#include "censim/distributions.hpp"
#include "censim/equilibrium.hpp"
#include "censim/game.hpp"
#include "censim/montecarlo.hpp"
#include "censim/multiproposer.hpp"
#include "censim/numeric.hpp"
#include "censim/random.hpp"
#include "censim/verification.hpp"

namespace censim::cli {
namespace {

using nlohmann::json;

// Distinguishes "could not even read the config" from "config read fine but
// a value is unusable"; both carry a human-readable message.
struct ConfigError {
  std::string message;
};
struct ParameterError {
  std::string message;
};

json load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError{"cannot read config file: " + path};
  }
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw ConfigError{"config file is not valid JSON: " + path};
  }
  if (!j.is_object()) {
    throw ConfigError{"config root must be a JSON object: " + path};
  }
  return j;
}

void require_known_keys(const json& j, const std::set<std::string>& allowed) {
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw ParameterError{"unknown config key: " + item.key()};
    }
  }
}

int get_int(const json& j, const std::string& key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) {
    throw ParameterError{"config key '" + key + "' must be an integer"};
  }
  return j[key].get<int>();
}

double get_double(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) {
    throw ParameterError{"config key '" + key + "' must be a number"};
  }
  return j[key].get<double>();
}

double require_double(const json& j, const std::string& key) {
  if (!j.contains(key)) {
    throw ParameterError{"missing required config key: " + key};
  }
  return get_double(j, key, 0.0);
}

std::uint64_t get_u64(const json& j, const std::string& key,
                      std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_unsigned() && !j[key].is_number_integer()) {
    throw ParameterError{"config key '" + key +
                         "' must be a nonnegative integer"};
  }
  if (j[key].is_number_integer() && j[key].get<std::int64_t>() < 0) {
    throw ParameterError{"config key '" + key + "' must be >= 0"};
  }
  return j[key].get<std::uint64_t>();
}

std::string get_string(const json& j, const std::string& key,
                       const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) {
    throw ParameterError{"config key '" + key + "' must be a string"};
  }
  return j[key].get<std::string>();
}

// Distribution keys come in prefixed families: <p>_family plus the
// parameters that family needs, e.g. f0_family="beta", f0_alpha, f0_beta.
ValueDistribution dist_from(const json& j, const std::string& prefix) {
  const std::string family = get_string(j, prefix + "_family", "uniform");
  const bool has_kappa = j.contains(prefix + "_kappa");
  const bool has_alpha = j.contains(prefix + "_alpha");
  const bool has_beta = j.contains(prefix + "_beta");
  if (family == "uniform") {
    if (has_kappa || has_alpha || has_beta) {
      throw ParameterError{"family 'uniform' for '" + prefix +
                           "' takes no parameters"};
    }
    return ValueDistribution::uniform_unit();
  }
  if (family == "uniform_scaled") {
    if (!has_kappa || has_alpha || has_beta) {
      throw ParameterError{"family 'uniform_scaled' for '" + prefix +
                           "' needs exactly '" + prefix + "_kappa'"};
    }
    return ValueDistribution::uniform_scaled(
        require_double(j, prefix + "_kappa"));
  }
  if (family == "beta") {
    if (!has_alpha || !has_beta || has_kappa) {
      throw ParameterError{"family 'beta' for '" + prefix +
                           "' needs exactly '" + prefix + "_alpha' and '" +
                           prefix + "_beta'"};
    }
    return ValueDistribution::beta(require_double(j, prefix + "_alpha"),
                                   require_double(j, prefix + "_beta"));
  }
  throw ParameterError{"unknown distribution family '" + family + "' for '" +
                       prefix + "'"};
}

std::set<std::string> dist_keys(const std::string& prefix) {
  return {prefix + "_family", prefix + "_kappa", prefix + "_alpha",
          prefix + "_beta"};
}

void merge_keys(std::set<std::string>& into, const std::set<std::string>& ks) {
  into.insert(ks.begin(), ks.end());
}

// Picks the solver for (n, r, F, F0). "auto" routes by shape; explicit
// names are validated against their preconditions so a config cannot ask
// for a solver its parameters do not fit.
EquilibriumSolution solve_selected(const std::string& solver, int n, double r,
                                   const ValueDistribution& F,
                                   const ValueDistribution& F0) {
  if (solver == "auto") {
    if (n == 1) return solve_two_bidder(F0, r);
    if (F.is_uniform_unit()) {
      return r == 0.0 ? solve_uniform_n(n) : solve_uniform_n_reserve(n, r);
    }
    if (r == 0.0) return solve_general_n(F, n);
    throw ParameterError{
        "no solver covers non-uniform honest values with a reserve"};
  }
  if (solver == "two_bidder") {
    if (n != 1) throw ParameterError{"solver 'two_bidder' requires n = 1"};
    return solve_two_bidder(F0, r);
  }
  if (solver == "uniform_n") {
    if (n < 2) throw ParameterError{"solver 'uniform_n' requires n >= 2"};
    if (r != 0.0) {
      throw ParameterError{
          "solver 'uniform_n' has no reserve; use 'uniform_n_reserve'"};
    }
    if (!F.is_uniform_unit()) {
      throw ParameterError{"solver 'uniform_n' requires uniform honest values"};
    }
    return solve_uniform_n(n);
  }
  if (solver == "uniform_n_reserve") {
    if (n < 2) {
      throw ParameterError{"solver 'uniform_n_reserve' requires n >= 2"};
    }
    if (!F.is_uniform_unit()) {
      throw ParameterError{
          "solver 'uniform_n_reserve' requires uniform honest values"};
    }
    return solve_uniform_n_reserve(n, r);
  }
  if (solver == "general_n") {
    if (n < 2) throw ParameterError{"solver 'general_n' requires n >= 2"};
    if (r != 0.0) throw ParameterError{"solver 'general_n' requires r = 0"};
    return solve_general_n(F, n);
  }
  throw ParameterError{"unknown solver '" + solver + "'"};
}

const char* kind_name(EquilibriumSolution::Kind kind) {
  switch (kind) {
    case EquilibriumSolution::Kind::TwoBidder:
      return "two_bidder";
    case EquilibriumSolution::Kind::UniformN:
      return "uniform_n";
    case EquilibriumSolution::Kind::GeneralN:
      return "general_n";
  }
  return "unknown";
}

void save_text(const std::string& out_dir, const std::string& name,
               const std::string& body) {
  const std::string path = out_dir + "/" + name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << body;
}

void ensure_out_dir(const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory: " + out_dir);
  }
}

std::string report_summary(const std::string& title,
                           const SimulationReport& report,
                           std::uint64_t seed, int threads) {
  std::string s = title + "\n";
  s += "trials = " + std::to_string(report.trials) + "\n";
  s += "seed = " + std::to_string(seed) + "\n";
  s += "threads = " + std::to_string(threads) + "\n";
  for (const auto& [name, est] : report.rows()) {
    s += name + " = " + format_double(est.mean) + " (std_error " +
         format_double(est.std_error) + ")\n";
  }
  return s;
}

void save_report_csv(const std::string& out_dir, const std::string& name,
                     const SimulationReport& report) {
  CsvWriter csv({"name", "estimate", "std_error"});
  for (const auto& [metric, est] : report.rows()) {
    csv.begin_row();
    csv.add(metric);
    csv.add(est.mean);
    csv.add(est.std_error);
    csv.end_row();
  }
  ensure_out_dir(out_dir);
  csv.save(out_dir + "/" + name);
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

void cmd_solve(const json& j, const std::string& out_dir) {
  std::set<std::string> allowed = {"solver", "n", "r", "grid"};
  merge_keys(allowed, dist_keys("f"));
  merge_keys(allowed, dist_keys("f0"));
  require_known_keys(j, allowed);

  const std::string solver = get_string(j, "solver", "auto");
  const int n = get_int(j, "n", 1);
  const double r = get_double(j, "r", 0.0);
  const int grid = get_int(j, "grid", 1001);
  if (grid < 2) throw ParameterError{"'grid' must be >= 2"};
  const ValueDistribution F = dist_from(j, "f");
  const ValueDistribution F0 = dist_from(j, "f0");

  const EquilibriumSolution sol = solve_selected(solver, n, r, F, F0);

  CsvWriter csv({"v", "tip"});
  for (int i = 0; i < grid; ++i) {
    const double v = static_cast<double>(i) / (grid - 1);
    csv.begin_row();
    csv.add(v);
    csv.add(sol.tip(v));
    csv.end_row();
  }
  ensure_out_dir(out_dir);
  csv.save(out_dir + "/solve.csv");

  std::string s = "equilibrium solve\n";
  s += std::string("solver = ") + kind_name(sol.kind) + "\n";
  s += "n = " + std::to_string(sol.n) + "\n";
  s += "r = " + format_double(sol.reserve) + "\n";
  s += "v_lo = " + format_double(sol.v_lo) + "\n";
  s += "mean_tip = " + format_double(sol.mean_tip) + "\n";
  s += "expected_total_tip = " + format_double(expected_total_tip(sol, sol.n)) +
       "\n";
  save_text(out_dir, "solve_summary.txt", s);
}

void cmd_simulate(const json& j, const std::string& out_dir,
                  std::optional<std::uint64_t> seed_override) {
  std::set<std::string> allowed = {"solver", "n",    "r",       "board", "m",
                                   "trials", "seed", "threads"};
  merge_keys(allowed, dist_keys("f"));
  merge_keys(allowed, dist_keys("f0"));
  require_known_keys(j, allowed);

  const std::string solver = get_string(j, "solver", "auto");
  const int n = get_int(j, "n", 1);
  const double r = get_double(j, "r", 0.0);
  const std::uint64_t trials = get_u64(j, "trials", 1000000);
  const std::uint64_t seed =
      seed_override ? *seed_override : get_u64(j, "seed", 1);
  const int threads = get_int(j, "threads", 0);
  const ValueDistribution F = dist_from(j, "f");
  const ValueDistribution F0 = dist_from(j, "f0");

  const std::string board_name = get_string(j, "board", "single");
  BoardSpec board = SingleBlock{};
  if (board_name == "single") {
    if (j.contains("m")) {
      throw ParameterError{"'m' only applies to board 'sequential'"};
    }
  } else if (board_name == "sequential") {
    board = SequentialBlocks{get_int(j, "m", 1)};
  } else if (board_name == "concurrent") {
    throw ParameterError{
        "concurrent-proposer boards run under the 'multiproposer' subcommand"};
  } else {
    throw ParameterError{"unknown board '" + board_name + "'"};
  }

  const AuctionConfig config{n, r, F, F0, board};
  validate(config);
  const EquilibriumSolution sol = solve_selected(solver, n, r, F, F0);
  const SimulationReport report = simulate(config, sol, trials, seed, threads);

  save_report_csv(out_dir, "simulate.csv", report);
  std::string s = report_summary("bribery-game simulation", report, seed,
                                 threads);
  s += "n = " + std::to_string(n) + "\n";
  s += "r = " + format_double(r) + "\n";
  s += "board = " + board_name + "\n";
  save_text(out_dir, "simulate_summary.txt", s);
}

void cmd_baseline(const json& j, const std::string& out_dir,
                  std::optional<std::uint64_t> seed_override) {
  std::set<std::string> allowed = {"n", "r", "trials", "seed", "threads"};
  merge_keys(allowed, dist_keys("f"));
  require_known_keys(j, allowed);

  const int n = get_int(j, "n", 2);
  const double r = get_double(j, "r", 0.0);
  const std::uint64_t trials = get_u64(j, "trials", 1000000);
  const std::uint64_t seed =
      seed_override ? *seed_override : get_u64(j, "seed", 1);
  const int threads = get_int(j, "threads", 0);
  const ValueDistribution F = dist_from(j, "f");

  const SimulationReport report = baseline_spa(n, F, r, trials, seed, threads);
  save_report_csv(out_dir, "baseline.csv", report);
  std::string s = report_summary("second-price auction baseline", report,
                                 seed, threads);
  s += "n = " + std::to_string(n) + "\n";
  s += "r = " + format_double(r) + "\n";
  save_text(out_dir, "baseline_summary.txt", s);
}

void cmd_figures(const json& j, const std::string& out_dir) {
  std::set<std::string> allowed = {"n_min", "n_max"};
  merge_keys(allowed, dist_keys("f"));
  require_known_keys(j, allowed);

  const int n_min = get_int(j, "n_min", 2);
  const int n_max = get_int(j, "n_max", 50);
  const ValueDistribution F = dist_from(j, "f");

  const std::vector<FigureRow> rows = figure_data(n_min, n_max, F);

  CsvWriter csv({"n", "v_lo", "total_tip", "status"});
  int flagged = 0;
  for (const FigureRow& row : rows) {
    csv.begin_row();
    csv.add(row.n);
    csv.add(row.v_lo);
    csv.add(row.total_tip);
    csv.add(std::string(row.assumption1_ok ? "ok" : "assumption1_violated"));
    csv.end_row();
    if (!row.assumption1_ok) ++flagged;
  }
  ensure_out_dir(out_dir);
  csv.save(out_dir + "/figures.csv");

  std::string s = "threshold and total-tip curve\n";
  s += "n range = [" + std::to_string(n_min) + ", " + std::to_string(n_max) +
       "]\n";
  s += "rows = " + std::to_string(rows.size()) + "\n";
  s += "rows failing the tip-bound precondition = " + std::to_string(flagged) +
       "\n";
  save_text(out_dir, "figures_summary.txt", s);
}

void cmd_verify(const json& j, const std::string& out_dir,
                std::optional<std::uint64_t> seed_override) {
  std::set<std::string> allowed = {
      "solver",  "n",
      "r",       "v_grid",
      "t_grid",  "tolerance",
      "perturb", "subsets_instances",
      "subsets_n", "seed"};
  merge_keys(allowed, dist_keys("f"));
  merge_keys(allowed, dist_keys("f0"));
  require_known_keys(j, allowed);

  const std::string solver = get_string(j, "solver", "auto");
  const int n = get_int(j, "n", 1);
  const double r = get_double(j, "r", 0.0);
  const int v_grid = get_int(j, "v_grid", 201);
  const int t_grid = get_int(j, "t_grid", 2001);
  const double tolerance = get_double(j, "tolerance", 1e-3);
  const double perturb = get_double(j, "perturb", 0.05);
  const int subsets_instances = get_int(j, "subsets_instances", 0);
  const int subsets_n = get_int(j, "subsets_n", 3);
  const std::uint64_t seed =
      seed_override ? *seed_override : get_u64(j, "seed", 1);
  const ValueDistribution F = dist_from(j, "f");
  const ValueDistribution F0 = dist_from(j, "f0");

  const EquilibriumSolution sol = solve_selected(solver, n, r, F, F0);

  CsvWriter csv({"check", "max_gain", "tolerance", "pass"});
  std::string s = "best-response verification\n";

  const DeviationReport br = verify_honest_br(sol, n, v_grid, t_grid,
                                              tolerance);
  csv.begin_row();
  csv.add(std::string("honest_br"));
  csv.add(br.max_gain);
  csv.add(br.tolerance);
  csv.add(br.pass);
  csv.end_row();
  s += "honest_br: max_gain = " + format_double(br.max_gain) + " at v = " +
       format_double(br.arg_v) + ", t = " + format_double(br.arg_t) +
       (br.pass ? " (pass)\n" : " (FAIL)\n");

  if (perturb != 0.0) {
    const EquilibriumSolution shifted = with_tip_shift(sol, perturb);
    const DeviationReport power = verify_honest_br(shifted, n, v_grid, t_grid,
                                                   tolerance);
    const bool detected = power.max_gain > tolerance;
    csv.begin_row();
    csv.add(std::string("perturbed_schedule"));
    csv.add(power.max_gain);
    csv.add(tolerance);
    csv.add(detected);
    csv.end_row();
    s += "perturbed_schedule: max_gain = " + format_double(power.max_gain) +
         (detected ? " (deviation detected: pass)\n"
                   : " (deviation missed: FAIL)\n");
  }

  if (subsets_instances > 0) {
    if (subsets_n < 1 || subsets_n > 20) {
      throw ParameterError{"'subsets_n' must lie in [1, 20]"};
    }
    double worst_gain = 0.0;
    bool all_optimal = true;
    for (int inst = 0; inst < subsets_instances; ++inst) {
      RandomStream rng = RandomStream::substream(seed, inst);
      std::vector<double> values(subsets_n);
      std::vector<double> tips(subsets_n);
      double tip_sum = 0.0;
      for (int i = 0; i < subsets_n; ++i) {
        values[i] = rng.next_uniform();
        tips[i] = values[i] / subsets_n * rng.next_uniform();
        tip_sum += tips[i];
      }
      const double v0 = tip_sum + (1.0 - tip_sum) * rng.next_uniform();
      const SubsetReport rep = verify_bidder0_subsets(values, tips, v0);
      worst_gain = std::max(worst_gain, rep.max_gain);
      all_optimal = all_optimal && rep.full_set_optimal;
    }
    csv.begin_row();
    csv.add(std::string("bidder0_subsets"));
    csv.add(worst_gain);
    csv.add(0.0);
    csv.add(all_optimal);
    csv.end_row();
    s += "bidder0_subsets: instances = " + std::to_string(subsets_instances) +
         ", worst gain over the full-set bribe = " + format_double(worst_gain) +
         (all_optimal ? " (pass)\n" : " (FAIL)\n");
  }

  ensure_out_dir(out_dir);
  csv.save(out_dir + "/verify.csv");
  save_text(out_dir, "verify_summary.txt", s);
}

void cmd_bounds(const json& j, const std::string& out_dir) {
  require_known_keys(j, {"n_min", "n_max"});
  const int n_min = get_int(j, "n_min", 2);
  const int n_max = get_int(j, "n_max", 200);

  const BoundsReport report = bounds_report(n_min, n_max);

  CsvWriter csv({"n", "v_lo", "v_lo_pow_n", "inv_n", "inv_sqrt_n",
                 "lower_holds", "upper_holds"});
  for (const BoundsRow& row : report.rows) {
    csv.begin_row();
    csv.add(row.n);
    csv.add(row.v_lo);
    csv.add(row.v_lo_pow_n);
    csv.add(row.inv_n);
    csv.add(row.inv_sqrt_n);
    csv.add(row.lower_holds);
    csv.add(row.upper_holds);
    csv.end_row();
  }
  ensure_out_dir(out_dir);
  csv.save(out_dir + "/bounds.csv");

  auto stable_text = [](const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string("none");
  };
  std::string s = "threshold-mass bounds sweep\n";
  s += "n range = [" + std::to_string(n_min) + ", " + std::to_string(n_max) +
       "]\n";
  s += "lower bound 1/n <= v_lo^n holds from n = " +
       stable_text(report.lower_stable_from) + " through n_max\n";
  s += "upper bound v_lo^n <= 1/sqrt(n) holds from n = " +
       stable_text(report.upper_stable_from) + " through n_max\n";
  save_text(out_dir, "bounds_summary.txt", s);
}

void cmd_multiproposer(const json& j, const std::string& out_dir,
                       std::optional<std::uint64_t> seed_override) {
  std::set<std::string> allowed = {"m", "n", "trials", "seed", "threads"};
  merge_keys(allowed, dist_keys("f0"));
  merge_keys(allowed, dist_keys("f1"));
  require_known_keys(j, allowed);

  if (!j.contains("m")) throw ParameterError{"missing required config key: m"};
  const int m = get_int(j, "m", 0);
  const int n = get_int(j, "n", 1);
  const std::uint64_t trials = get_u64(j, "trials", 1000000);
  const std::uint64_t seed =
      seed_override ? *seed_override : get_u64(j, "seed", 1);
  const int threads = get_int(j, "threads", 0);

  const MultiProposerConfig config{m, n, dist_from(j, "f0"),
                                   dist_from(j, "f1")};
  const SimulationReport report =
      simulate_multiproposer(config, trials, seed, threads);

  save_report_csv(out_dir, "multiproposer.csv", report);
  std::string s = report_summary("concurrent-proposer simulation", report,
                                 seed, threads);
  s += "m = " + std::to_string(m) + "\n";
  s += "n = " + std::to_string(n) + "\n";
  save_text(out_dir, "multiproposer_summary.txt", s);
}

void cmd_phi(const json& j, std::ostream& out) {
  require_known_keys(j, {"board", "m", "k", "t", "T"});
  const std::string board_name = get_string(j, "board", "single");

  BoardSpec board = SingleBlock{};
  TipOffer offer = FlatTip{require_double(j, "t")};
  if (board_name == "single") {
    if (j.contains("m") || j.contains("k") || j.contains("T")) {
      throw ParameterError{"board 'single' takes only 't'"};
    }
  } else if (board_name == "sequential") {
    if (!j.contains("m") || j.contains("k") || j.contains("T")) {
      throw ParameterError{"board 'sequential' takes 'm' and 't'"};
    }
    board = SequentialBlocks{get_int(j, "m", 0)};
  } else if (board_name == "concurrent") {
    if (!j.contains("k") || j.contains("m") || !j.contains("T")) {
      throw ParameterError{"board 'concurrent' takes 'k', 't' and 'T'"};
    }
    board = ConcurrentProposers{get_int(j, "k", 0)};
    offer = ConditionalTip{require_double(j, "t"), require_double(j, "T")};
  } else {
    throw ParameterError{"unknown board '" + board_name + "'"};
  }

  out << format_double(censorship_resistance(board, offer)) << "\n";
}

}  // namespace

int run(const std::string& subcommand, const std::string& config_path,
        const std::string& out_dir,
        std::optional<std::uint64_t> seed_override, std::ostream& out,
        std::ostream& err) {
  try {
    const json j = load_config(config_path);
    if (subcommand == "solve") {
      cmd_solve(j, out_dir);
    } else if (subcommand == "simulate") {
      cmd_simulate(j, out_dir, seed_override);
    } else if (subcommand == "baseline") {
      cmd_baseline(j, out_dir, seed_override);
    } else if (subcommand == "figures") {
      cmd_figures(j, out_dir);
    } else if (subcommand == "verify") {
      cmd_verify(j, out_dir, seed_override);
    } else if (subcommand == "bounds") {
      cmd_bounds(j, out_dir);
    } else if (subcommand == "multiproposer") {
      cmd_multiproposer(j, out_dir, seed_override);
    } else if (subcommand == "phi") {
      cmd_phi(j, out);
    } else {
      err << "invalid parameter: unknown subcommand '" << subcommand << "'\n";
      return kInvalidParameter;
    }
    return kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.message << "\n";
    return kConfigUnreadable;
  } catch (const ParameterError& e) {
    err << "invalid parameter: " << e.message << "\n";
    return kInvalidParameter;
  } catch (const std::invalid_argument& e) {
    err << "invalid parameter: " << e.what() << "\n";
    return kInvalidParameter;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kSolverFailure;
  }
}

}  // namespace censim::cli
