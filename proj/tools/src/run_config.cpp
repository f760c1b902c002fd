#include "landau_cli/run_config.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace landau::cli {

namespace {

template <typename T>
std::function<void(RunConfig&, const nlohmann::json&)> setter(T RunConfig::*member) {
  return [member](RunConfig& cfg, const nlohmann::json& v) { cfg.*member = v.get<T>(); };
}

const std::map<std::string, std::function<void(RunConfig&, const nlohmann::json&)>>& setters() {
  static const std::map<std::string, std::function<void(RunConfig&, const nlohmann::json&)>> table = {
      {"m", setter(&RunConfig::m)},
      {"b0", setter(&RunConfig::b0)},
      {"eps", setter(&RunConfig::eps)},
      {"eps_grid", setter(&RunConfig::eps_grid)},
      {"eig_index", setter(&RunConfig::eig_index)},
      {"solver_tol", setter(&RunConfig::solver_tol)},
      {"max_iter", setter(&RunConfig::max_iter)},
      {"residual_tol", setter(&RunConfig::residual_tol)},
      {"chain_tol", setter(&RunConfig::chain_tol)},
      {"band_tol", setter(&RunConfig::band_tol)},
      {"eig_tol", setter(&RunConfig::eig_tol)},
      {"series_order", setter(&RunConfig::series_order)},
      {"levels", setter(&RunConfig::levels)},
      {"channels", setter(&RunConfig::channels)},
      {"k_samples", setter(&RunConfig::k_samples)},
      {"k0", setter(&RunConfig::k0)},
      {"out_dir", setter(&RunConfig::out_dir)},
  };
  return table;
}

void require(bool ok, const char* field, const char* rule) {
  if (!ok) throw std::invalid_argument(std::string(field) + ": " + rule);
}

bool positive(double x) { return x > 0 && std::isfinite(x); }

}  // namespace

void apply_overrides(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw std::invalid_argument(key + ": unknown config key");
    try {
      it->second(cfg, value);
    } catch (const nlohmann::json::exception&) {
      throw std::invalid_argument(key + ": value has the wrong type");
    }
  }
}

void validate(const RunConfig& cfg) {
  require(cfg.m >= 1, "m", "must be >= 1");
  require(positive(cfg.b0), "b0", "must be positive");
  require(std::isfinite(cfg.eps), "eps", "must be finite");
  for (double e : cfg.eps_grid) require(std::isfinite(e), "eps_grid", "entries must be finite");
  require(cfg.eig_index < cfg.m, "eig_index", "must be < m");
  require(positive(cfg.solver_tol), "solver_tol", "must be positive");
  require(cfg.max_iter >= 1, "max_iter", "must be >= 1");
  require(positive(cfg.residual_tol), "residual_tol", "must be positive");
  require(positive(cfg.chain_tol), "chain_tol", "must be positive");
  require(positive(cfg.band_tol), "band_tol", "must be positive");
  require(positive(cfg.eig_tol), "eig_tol", "must be positive");
  require(cfg.series_order >= 4, "series_order", "must be >= 4");
  require(cfg.levels > cfg.m, "levels", "must exceed m");
  require(cfg.channels >= 0, "channels", "must be >= 0");
  require(cfg.k_samples >= 1, "k_samples", "must be >= 1");
  require(std::isfinite(cfg.k0), "k0", "must be finite");
  require(!cfg.out_dir.empty(), "out_dir", "must not be empty");
}

nlohmann::json to_json(const RunConfig& cfg) {
  return {{"m", cfg.m},
          {"b0", cfg.b0},
          {"eps", cfg.eps},
          {"eps_grid", cfg.eps_grid},
          {"eig_index", cfg.eig_index},
          {"solver_tol", cfg.solver_tol},
          {"max_iter", cfg.max_iter},
          {"residual_tol", cfg.residual_tol},
          {"chain_tol", cfg.chain_tol},
          {"band_tol", cfg.band_tol},
          {"eig_tol", cfg.eig_tol},
          {"series_order", cfg.series_order},
          {"levels", cfg.levels},
          {"channels", cfg.channels},
          {"k_samples", cfg.k_samples},
          {"k0", cfg.k0}};
}

}  // namespace landau::cli
