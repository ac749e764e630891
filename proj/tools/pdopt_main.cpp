// pdopt: photodetector design search from the command line.
//
//   pdopt systematic --config run.yaml --out results/
//   pdopt search     --config run.yaml --out results/ --seed 7
//   pdopt experiment --config run.yaml --out results/ --threads 4

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <thread>

#include "pdopt/app/commands.hpp"

namespace {

void add_common(CLI::App& cmd, pdopt::app::CommandOptions& opt) {
  cmd.add_option("--config", opt.config, "Run-config YAML file")->required();
  cmd.add_option("--out", opt.out, "Output directory (created if missing)")->required();
  cmd.add_option("--threads", opt.threads, "Worker threads; 0 uses every hardware thread")
      ->default_val(1);
  cmd.add_option("--seed", opt.seed, "Overrides the configured seed / base_seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photodetector (TIA + photodiode) design optimization"};
  app.set_version_flag("--version", "pdopt 0.1.0");
  app.require_subcommand(1);

  pdopt::app::CommandOptions opt;
  auto* systematic = app.add_subcommand("systematic", "Exhaustive search of the design grid");
  add_common(*systematic, opt);
  systematic->add_flag("--grid", opt.grid, "Also write the full merit grid");
  auto* search = app.add_subcommand("search", "One Monte Carlo or genetic-algorithm run");
  add_common(*search, opt);
  auto* experiment =
      app.add_subcommand("experiment", "Repeated runs, eps95 statistics and power-law fits");
  add_common(*experiment, opt);

  CLI11_PARSE(app, argc, argv);

  if (opt.threads == 0) opt.threads = std::max(1u, std::thread::hardware_concurrency());

  if (systematic->parsed()) return pdopt::app::cmd_systematic(opt, std::cout, std::cerr);
  if (search->parsed()) return pdopt::app::cmd_search(opt, std::cout, std::cerr);
  return pdopt::app::cmd_experiment(opt, std::cout, std::cerr);
}
