#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace landau::cli {

/// Everything a pipeline run needs. Flags fill it first; a --config JSON
/// file then overrides individual keys.
struct RunConfig {
  int m = 1;
  double b0 = 1.0;
  double eps = 0.1;
  std::vector<double> eps_grid;
  int eig_index = -1;  // < 0: largest eigenvalue

  double solver_tol = 1e-13;
  int max_iter = 200;
  double residual_tol = 1e-9;
  double chain_tol = 1e-8;
  double band_tol = 1e-6;
  double eig_tol = 1e-5;

  int series_order = 256;
  int levels = 40;
  int channels = 10;
  int k_samples = 16;
  double k0 = 0.0;

  std::string out_dir = ".";
};

/// Applies the keys of `j` to `cfg`. Unknown keys and values of the wrong
/// type raise std::invalid_argument naming the key.
void apply_overrides(RunConfig& cfg, const nlohmann::json& j);

/// Throws std::invalid_argument naming the first offending field.
void validate(const RunConfig& cfg);

nlohmann::json to_json(const RunConfig& cfg);

}  // namespace landau::cli
