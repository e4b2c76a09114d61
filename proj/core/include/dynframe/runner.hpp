#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "dynframe/serialize.hpp"

namespace dynframe::runner {

struct RunOptions {
  std::optional<std::uint64_t> seed_override;
  std::optional<double> tol_override;
  std::optional<std::string> csv_dir;
};

// Executes every task of a parsed config and assembles the report in
// task order. Throws Error on validation or certificate failures.
serialize::Json run_tasks(const serialize::Json& config, const RunOptions& opts = {});

// File-level entry point used by the CLI: reads the config, runs it,
// writes the report (stdout or out_path). Returns the process exit code:
// 0 success, 2 validation error, 3 numerical certificate failure.
int run_file(const std::string& config_path, const RunOptions& opts,
             const std::optional<std::string>& out_path, std::ostream& err);

}  // namespace dynframe::runner
