#include "landau/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace landau {

namespace {

json vec(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json int_matrix(const IntMatrix& M) {
  json out = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
    out.push_back(row);
  }
  return out;
}

json fn_list(const std::vector<PeriodicFn>& fs) {
  json out = json::array();
  for (const auto& f : fs) out.push_back(to_json(f));
  return out;
}

std::vector<PeriodicFn> fn_list_from(const json& j) {
  std::vector<PeriodicFn> out;
  for (const auto& e : j) out.push_back(periodic_fn_from_json(e));
  return out;
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw std::invalid_argument(std::string("missing field '") + name + "'");
  return j.at(name);
}

}  // namespace

json to_json(const PeriodicFn& f) {
  return {{"omega", f.omega()}, {"coeffs", std::vector<double>(f.coeffs().begin(), f.coeffs().end())}};
}

PeriodicFn periodic_fn_from_json(const json& j) {
  return PeriodicFn(field(j, "omega").get<double>(), field(j, "coeffs").get<std::vector<double>>());
}

json to_json(const CMatrixBundle& b, const NonresonanceReport& report) {
  json eig = json::array();
  for (Eigen::Index k = 0; k < b.eig.values.size(); ++k)
    eig.push_back({{"value", b.eig.values[k]}, {"vector", vec(b.eig.vectors.col(k))}});
  return {{"schema", kSchemaVersion},
          {"m", b.m},
          {"b0", b.b0},
          {"C", int_matrix(b.C)},
          {"E", int_matrix(b.E)},
          {"D", int_matrix(b.D)},
          {"det_E", integer_determinant(b.E)},
          {"eigenpairs", eig},
          {"chosen_index", b.chosen_index},
          {"lambda", b.lambda()},
          {"omega", b.omega},
          {"period", b.period},
          {"nonresonance",
           {{"ok", report.ok},
            {"near_resonance", report.near_resonance},
            {"min_relative_gap", report.worst_j < 0 ? json(nullptr) : json(report.min_relative_gap)},
            {"worst_n", report.worst_n},
            {"worst_j", report.worst_j}}}};
}

json to_json(const FamilySolution& sol, const CMatrixBundle& bundle) {
  return {{"schema", kSchemaVersion},
          {"m", bundle.m},
          {"b0", bundle.b0},
          {"chosen_index", bundle.chosen_index},
          {"lambda", bundle.lambda()},
          {"omega", bundle.omega},
          {"epsilon", sol.epsilon},
          {"tau", sol.tau},
          {"b", vec(sol.b)},
          {"B_eff", sol.B_eff},
          {"iterations", sol.iterations},
          {"final_delta", sol.final_delta},
          {"increments", sol.increments},
          {"w", fn_list(sol.w)},
          {"v", fn_list(sol.v)}};
}

FamilySolution family_from_json(const json& j) {
  FamilySolution sol;
  sol.epsilon = field(j, "epsilon").get<double>();
  sol.tau = field(j, "tau").get<double>();
  const auto b = field(j, "b").get<std::vector<double>>();
  sol.b = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  sol.B_eff = field(j, "B_eff").get<double>();
  sol.w = fn_list_from(field(j, "w"));
  sol.v = fn_list_from(field(j, "v"));
  if (j.contains("iterations")) sol.iterations = j.at("iterations").get<int>();
  if (j.contains("final_delta")) sol.final_delta = j.at("final_delta").get<double>();
  if (sol.v.empty()) throw std::invalid_argument("family artifact has no v functions");
  return sol;
}

json to_json(const ChainReport& r) {
  return {{"res_b", r.res_b},
          {"res_c", r.res_c},
          {"means", r.means},
          {"mean_errors", r.mean_errors},
          {"V_mean", r.V_mean},
          {"margins", r.margins},
          {"min_negativity", r.min_negativity},
          {"all_negative", r.all_negative},
          {"tol", r.tol},
          {"pass", r.pass}};
}

json to_json(const PotentialChain& chain, const ChainReport& report) {
  return {{"schema", kSchemaVersion},
          {"m", chain.m},
          {"B", chain.B},
          {"u", fn_list(chain.u)},
          {"W", fn_list(chain.W)},
          {"V", to_json(chain.V)},
          {"report", to_json(report)}};
}

PotentialChain chain_from_json(const json& j) {
  const auto u = fn_list_from(field(j, "u"));
  if (u.empty()) throw std::invalid_argument("chain artifact has no u functions");
  return build_chain(u, field(j, "B").get<double>());
}

json to_json(const BandScan& scan) {
  json flat = json::array();
  for (const auto& f : scan.flat_bands)
    flat.push_back({{"index", f.index},
                    {"center", f.center},
                    {"width", f.width},
                    {"at_landau_level", f.at_landau_level}});
  return {{"schema", kSchemaVersion},
          {"B", scan.B},
          {"m", scan.m},
          {"target", scan.target},
          {"k_samples", scan.options.k_samples},
          {"levels", scan.options.levels},
          {"modes", scan.options.modes},
          {"tol", scan.options.tol},
          {"max_deviation", scan.max_deviation},
          {"flatness", scan.flatness},
          {"guard_ok", scan.guard_ok},
          {"flat_bands", flat},
          {"stray_flat_bands", scan.stray_flat_bands},
          {"pass", scan.pass}};
}

json to_json(const EigenfunctionResult& r, bool include_amplitudes) {
  json out = {{"schema", kSchemaVersion},
              {"lambda", r.lambda},
              {"levels", r.phi.N},
              {"channels", r.phi.P},
              {"k0", r.phi.k0},
              {"residual", r.residual},
              {"window_residual", r.window_residual},
              {"phi_norm", r.phi_norm},
              {"unwind_error", r.unwind_error},
              {"dropped_norm2", r.phi.dropped_norm2}};
  if (include_amplitudes) {
    json amps = json::array();
    for (int n = 0; n <= r.phi.N; ++n) {
      for (int p = -r.phi.P; p <= r.phi.P; ++p) {
        const auto c = r.phi.at(n, p);
        if (std::abs(c) == 0.0) continue;
        amps.push_back({{"n", n}, {"p", p}, {"re", c.real()}, {"im", c.imag()}});
      }
    }
    out["amplitudes"] = amps;
  }
  return out;
}

json to_json(const PendulumSolution& s) {
  return {{"alpha", s.alpha}, {"B", s.B}, {"u_plus", s.u_plus}, {"u_minus", s.u_minus},
          {"T_alpha", s.T_alpha}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("cannot parse '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace landau
