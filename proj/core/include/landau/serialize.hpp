#pragma once

#include "landau/cmatrix.hpp"
#include "landau/eigenfunction.hpp"
#include "landau/family_solver.hpp"
#include "landau/fiber.hpp"
#include "landau/pendulum.hpp"
#include "landau/periodic_fn.hpp"
#include "landau/potential_chain.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace landau {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

json to_json(const PeriodicFn& f);
PeriodicFn periodic_fn_from_json(const json& j);

json to_json(const CMatrixBundle& b, const NonresonanceReport& report);

json to_json(const FamilySolution& sol, const CMatrixBundle& bundle);
/// Reads back the fields of a family artifact (w, v, tau, b, epsilon, B_eff).
FamilySolution family_from_json(const json& j);

json to_json(const ChainReport& r);
json to_json(const PotentialChain& chain, const ChainReport& report);
/// Rebuilds the chain from its u functions and B (W and V are recomputed).
PotentialChain chain_from_json(const json& j);

json to_json(const BandScan& scan);
json to_json(const EigenfunctionResult& r, bool include_amplitudes);

json to_json(const PendulumSolution& s);

/// Reads a whole file and parses it; throws std::invalid_argument naming the
/// file on failure.
json read_json_file(const std::string& path);
/// Writes `j` with two-space indentation and a trailing newline.
void write_json_file(const std::string& path, const json& j);

}  // namespace landau
