#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "censim/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "censim: equilibrium solver and simulator for second-price auctions "
      "settled on a bribable bulletin board"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;

  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"solve", "Solve a tipping equilibrium and dump the schedule"},
      {"simulate", "Monte Carlo estimate of the bribery-game outcomes"},
      {"baseline", "Plain second-price auction reference run"},
      {"figures", "Threshold and total-tip curve over a range of n"},
      {"verify", "Best-response verification suite"},
      {"bounds", "Threshold-mass bounds sweep"},
      {"multiproposer", "Concurrent-proposer game simulation"},
      {"phi", "Print the censorship resistance of a board/tip pair"},
  };
  for (const auto& [name, description] : subcommands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory (default: .)");
    sub->add_option("--seed", seed, "override the config seed");
  }

  CLI11_PARSE(app, argc, argv);

  const CLI::App* sub = app.get_subcommands().front();
  return censim::cli::run(sub->get_name(), config, out_dir, seed, std::cout,
                          std::cerr);
}
