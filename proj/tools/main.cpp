#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dynframe/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"dynframe: frames of operator iterates, model spaces, and "
               "inner-function similarity"};

  std::string config_path;
  std::optional<std::string> csv_dir;
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;

  app.add_option("--config", config_path, "JSON analysis request")->required();
  app.add_option("--csv", csv_dir, "directory for CSV matrix exports");
  app.add_option("--output", out_path, "report path (default: stdout)");
  app.add_option("--seed", seed, "override the config seed");
  app.add_option("--tol", tol, "override the config tolerance");

  CLI11_PARSE(app, argc, argv);

  dynframe::runner::RunOptions opts;
  opts.seed_override = seed;
  opts.tol_override = tol;
  opts.csv_dir = csv_dir;
  return dynframe::runner::run_file(config_path, opts, out_path, std::cerr);
}
