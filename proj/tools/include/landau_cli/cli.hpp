#pragma once

#include "landau_cli/run_config.hpp"

#include <landau/family_solver.hpp>
#include <landau/potential_chain.hpp>

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace landau::cli {

enum ExitCode : int {
  kOk = 0,
  kError = 1,            // numerical failure inside a stage
  kInvalidArgument = 2,  // bad flag, config key or value
  kVerificationFailed = 3,
};

/// Outcome of one pipeline stage. `status` is "ok", "failed" or an
/// informational tag such as "constant_potential" or "skipped".
struct StageResult {
  std::string stage;
  std::string status;
  nlohmann::json summary;

  bool failed() const { return status == "failed"; }
};

/// Runs the tool with argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Whole pipeline: cmatrix, family, chain, band and eigenfunction stages,
/// each persisting its artifact under cfg.out_dir.
std::vector<StageResult> run_pipeline(const RunConfig& cfg, bool with_eigenfunction = true);

}  // namespace landau::cli
