#include "landau_cli/cli.hpp"

#include <landau/cmatrix.hpp>
#include <landau/eigenfunction.hpp>
#include <landau/errors.hpp>
#include <landau/fiber.hpp>
#include <landau/pendulum.hpp>
#include <landau/serialize.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace landau::cli {

namespace {

namespace fs = std::filesystem;

std::string artifact(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return (fs::path(cfg.out_dir) / name).string();
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write '" + path + "'");
  os << std::setprecision(17);
  return os;
}

FamilyOptions family_options(const RunConfig& cfg) {
  FamilyOptions opts;
  opts.tol = cfg.solver_tol;
  opts.max_iter = cfg.max_iter;
  opts.series.max_order = cfg.series_order;
  return opts;
}

CMatrixBundle bundle_for(const RunConfig& cfg) { return make_bundle(cfg.m, cfg.b0, cfg.eig_index); }

StageResult cmatrix_stage(const CMatrixBundle& bundle, json& doc) {
  const auto report = check_nonresonance(bundle);
  doc = to_json(bundle, report);
  return {"cmatrix", report.ok ? "ok" : "failed",
          {{"lambda", bundle.lambda()}, {"omega", bundle.omega}, {"nonresonant", report.ok}}};
}

StageResult family_stage(const RunConfig& cfg, const CMatrixBundle& bundle, FamilySolution& sol) {
  sol = iterate_family(cfg.eps, bundle, family_options(cfg));
  SeriesOptions series;
  series.max_order = cfg.series_order;
  const double residual = residual_check(sol, bundle, series);
  const double orth = std::abs(sol.b.dot(bundle.a()));
  const double scale = 1.0 + cfg.eps * cfg.eps * sol.tau;
  const bool ok = residual <= cfg.residual_tol && orth <= 1e-12 && scale > 0;
  return {"family", ok ? "ok" : "failed",
          {{"epsilon", sol.epsilon},
           {"tau", sol.tau},
           {"B_eff", sol.B_eff},
           {"iterations", sol.iterations},
           {"residual", residual},
           {"orthogonality", orth},
           {"contraction_ratio", max_contraction_ratio(sol)}}};
}

StageResult chain_stage(const RunConfig& cfg, const PotentialChain& chain, ChainReport& report) {
  report = verify_conditions(chain, cfg.chain_tol);
  if (chain.is_constant()) {
    return {"chain", "constant_potential",
            {{"note", "all u_j vanish; the potential is constant and carries no information"},
             {"V_mean", report.V_mean}}};
  }
  const double worst_mean = report.mean_errors.empty()
                                ? 0.0
                                : *std::max_element(report.mean_errors.begin(), report.mean_errors.end());
  const bool ok = report.pass && worst_mean <= 1e-9 && std::abs(report.V_mean) <= 1e-10;
  return {"chain", ok ? "ok" : "failed", to_json(report)};
}

StageResult band_stage(const RunConfig& cfg, const PotentialChain& chain, BandScan& scan) {
  BandOptions opts;
  opts.k_samples = cfg.k_samples;
  opts.levels = cfg.levels;
  opts.modes = cfg.channels;
  opts.tol = cfg.band_tol;
  scan = flat_band_scan(chain.V, chain.B, chain.m, opts);
  return {"band", scan.pass ? "ok" : "failed",
          {{"target", scan.target},
           {"max_deviation", scan.max_deviation},
           {"flatness", scan.flatness},
           {"stray_flat_bands", scan.stray_flat_bands}}};
}

StageResult eigfun_stage(const RunConfig& cfg, const PotentialChain& chain, EigenfunctionResult& res) {
  EigenfunctionOptions opts;
  opts.levels = cfg.levels;
  opts.channels = cfg.channels;
  opts.tol = cfg.eig_tol;
  opts.enforce = false;
  res = build_eigenfunction(chain, cfg.k0, opts);
  return {"eigfun", res.residual <= cfg.eig_tol ? "ok" : "failed",
          {{"residual", res.residual}, {"unwind_error", res.unwind_error}, {"phi_norm", res.phi_norm}}};
}

void write_band_csv(const std::string& path, const BandScan& scan) {
  auto os = open_csv(path);
  os << "kappa,lambda_near,deviation\n";
  for (const auto& p : scan.points) os << p.kappa << ',' << p.lambda_near << ',' << p.deviation << '\n';
}

void write_potential_csv(const std::string& path, const PotentialChain& chain) {
  auto os = open_csv(path);
  write_samples_csv(os, chain.V, 1024, "V");
}

json stage_json(const StageResult& s) { return {{"stage", s.stage}, {"status", s.status}, {"summary", s.summary}}; }

int exit_for(const std::vector<StageResult>& stages) {
  return std::any_of(stages.begin(), stages.end(), [](const StageResult& s) { return s.failed(); })
             ? kVerificationFailed
             : kOk;
}

void report_failures(const std::vector<StageResult>& stages, std::ostream& err) {
  for (const auto& s : stages)
    if (s.failed()) err << "verification failed in stage '" << s.stage << "'\n";
}

PotentialChain chain_from_family_file(const std::string& path) {
  const json doc = read_json_file(path);
  const FamilySolution sol = family_from_json(doc);
  return build_chain(sol.v, sol.B_eff);
}

// Numerical failures inside a stage are re-raised with the stage name.
template <typename F>
auto in_stage(const char* name, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(std::string(name) + ": " + e.what());
  }
}

}  // namespace

std::vector<StageResult> run_pipeline(const RunConfig& cfg, bool with_eigenfunction) {
  validate(cfg);
  std::vector<StageResult> stages;
  const CMatrixBundle bundle = bundle_for(cfg);

  json cm;
  stages.push_back(cmatrix_stage(bundle, cm));
  write_json_file(artifact(cfg, "cmatrix.json"), cm);
  if (stages.back().failed()) return stages;

  FamilySolution sol;
  stages.push_back(in_stage("family", [&] { return family_stage(cfg, bundle, sol); }));
  write_json_file(artifact(cfg, "family.json"), to_json(sol, bundle));

  const PotentialChain chain = build_chain(sol.v, sol.B_eff);
  ChainReport report;
  stages.push_back(chain_stage(cfg, chain, report));
  write_json_file(artifact(cfg, "chain.json"), to_json(chain, report));
  write_potential_csv(artifact(cfg, "V.csv"), chain);
  if (stages.back().status == "constant_potential") {
    stages.push_back({"band", "skipped", {{"reason", "constant potential"}}});
    return stages;
  }

  BandScan scan;
  stages.push_back(in_stage("band", [&] { return band_stage(cfg, chain, scan); }));
  write_band_csv(artifact(cfg, "band.csv"), scan);
  write_json_file(artifact(cfg, "band.json"), to_json(scan));

  if (with_eigenfunction) {
    EigenfunctionResult ef;
    stages.push_back(in_stage("eigfun", [&] { return eigfun_stage(cfg, chain, ef); }));
    write_json_file(artifact(cfg, "eigfun.json"), to_json(ef, false));
  }
  return stages;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic potentials with an eigenvalue at a Landau level"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON file whose keys override the flags");
  app.add_option("--out-dir", cfg.out_dir, "Directory for artifacts");

  auto add_problem = [&](CLI::App* sub) {
    sub->add_option("--m", cfg.m, "Landau level index m >= 1");
    sub->add_option("--b0", cfg.b0, "Field strength scale B0 > 0");
    sub->add_option("--eig-index", cfg.eig_index, "Eigenvalue index of C (default: largest)");
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.solver_tol, "Fixed-point increment tolerance");
    sub->add_option("--max-iter", cfg.max_iter, "Iteration cap");
    sub->add_option("--residual-tol", cfg.residual_tol, "Acceptance threshold for the residual");
    sub->add_option("--series-order", cfg.series_order, "Cosine series truncation order");
  };

  auto* cmatrix = app.add_subcommand("cmatrix", "Coupling matrices, spectrum and nonresonance");
  add_problem(cmatrix);

  double alpha = 1.0;
  double field = 1.0;
  std::vector<double> curve;
  bool with_ode = false;
  auto* period = app.add_subcommand("period", "Period of the scalar pendulum equation");
  period->add_option("--alpha", alpha, "Initial slope alpha > 0");
  period->add_option("--b", field, "Field strength B > 0");
  period->add_option("--curve", curve, "a_min a_max n: log-spaced curve as CSV")->expected(3);
  period->add_flag("--ode", with_ode, "Also estimate the period by integrating the ODE");

  bool want_radius = false;
  auto* family = app.add_subcommand("family", "Solve the periodic family at one epsilon");
  add_problem(family);
  add_solver(family);
  family->add_option("--eps", cfg.eps, "Family parameter epsilon");
  family->add_flag("--estimate-radius", want_radius, "Report the empirical contraction radius");

  auto* sweep = app.add_subcommand("family-sweep", "Solve the family on a grid of epsilon values");
  add_problem(sweep);
  add_solver(sweep);
  sweep->add_option("--eps-grid", cfg.eps_grid, "Comma separated epsilon values")->delimiter(',');

  std::string family_file;
  auto* chain_cmd = app.add_subcommand("chain", "Build and verify the potential chain");
  chain_cmd->add_option("--from-family", family_file, "family.json artifact")->required();
  chain_cmd->add_option("--tol", cfg.chain_tol, "Residual tolerance for the chain conditions");

  std::string chain_file;
  auto* band = app.add_subcommand("band", "Flat-band scan of the magnetic Bloch spectrum");
  band->add_option("--from-chain", chain_file, "chain.json artifact")->required();
  band->add_option("--kn", cfg.k_samples, "Number of Bloch phase samples");
  band->add_option("--levels", cfg.levels, "Landau levels kept (N)");
  band->add_option("--channels", cfg.channels, "Fourier modes of V kept");
  band->add_option("--tol", cfg.band_tol, "Deviation and flatness tolerance in units of B");

  bool amplitudes = false;
  auto* eigfun = app.add_subcommand("eigfun", "Construct the eigenfunction and its residual");
  eigfun->add_option("--from-chain", chain_file, "chain.json artifact")->required();
  eigfun->add_option("--k0", cfg.k0, "Base quasimomentum");
  eigfun->add_option("--levels", cfg.levels, "Landau levels kept (N)");
  eigfun->add_option("--channels", cfg.channels, "Momentum channels kept on each side (P)");
  eigfun->add_option("--tol", cfg.eig_tol, "Residual tolerance");
  eigfun->add_flag("--amplitudes", amplitudes, "Include the amplitude dump");

  bool skip_eigfun = false;
  auto* pipeline = app.add_subcommand("pipeline", "cmatrix, family, chain, band and eigfun in order");
  add_problem(pipeline);
  add_solver(pipeline);
  pipeline->add_option("--eps", cfg.eps, "Family parameter epsilon");
  pipeline->add_option("--chain-tol", cfg.chain_tol, "Chain residual tolerance");
  pipeline->add_option("--band-tol", cfg.band_tol, "Band tolerance in units of B");
  pipeline->add_option("--eig-tol", cfg.eig_tol, "Eigenfunction residual tolerance");
  pipeline->add_option("--levels", cfg.levels, "Landau levels kept (N)");
  pipeline->add_option("--channels", cfg.channels, "Channels / Fourier modes kept");
  pipeline->add_option("--kn", cfg.k_samples, "Number of Bloch phase samples");
  pipeline->add_flag("--no-eigfun", skip_eigfun, "Skip the eigenfunction stage");

  for (auto* sub : {cmatrix, period, family, sweep, chain_cmd, band, eigfun, pipeline}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kInvalidArgument;
  }

  try {
    if (!config_path.empty()) apply_overrides(cfg, read_json_file(config_path));
    validate(cfg);

    if (cmatrix->parsed()) {
      json doc;
      const StageResult s = cmatrix_stage(bundle_for(cfg), doc);
      out << doc.dump(2) << '\n';
      if (app.get_option("--out-dir")->count() > 0 || !config_path.empty())
        write_json_file(artifact(cfg, "cmatrix.json"), doc);
      return exit_for({s});
    }

    if (period->parsed()) {
      if (!curve.empty()) {
        if (!(curve[2] >= 1 && curve[2] == std::floor(curve[2])))
          throw std::invalid_argument("curve: n must be a positive integer");
        const auto pts = period_curve(curve[0], curve[1], static_cast<int>(curve[2]), field);
        out << std::setprecision(17) << "alpha,T_alpha\n";
        for (const auto& p : pts) out << p.alpha << ',' << p.T_alpha << '\n';
        return kOk;
      }
      json doc = to_json(solve_pendulum(alpha, field));
      doc["schema"] = kSchemaVersion;
      if (with_ode) doc["T_ode"] = period_ode(alpha, field);
      out << doc.dump(2) << '\n';
      return kOk;
    }

    if (family->parsed()) {
      const CMatrixBundle bundle = bundle_for(cfg);
      FamilySolution sol;
      StageResult s = family_stage(cfg, bundle, sol);
      json doc = to_json(sol, bundle);
      if (want_radius) {
        const double r = estimate_radius(bundle, 0.2, 0.5, 12, family_options(cfg));
        doc["empirical_radius"] = r;
        s.summary["empirical_radius"] = r;
      }
      write_json_file(artifact(cfg, "family.json"), doc);
      out << stage_json(s).dump(2) << '\n';
      report_failures({s}, err);
      return exit_for({s});
    }

    if (sweep->parsed()) {
      if (cfg.eps_grid.empty()) throw std::invalid_argument("eps_grid: must list at least one value");
      const CMatrixBundle bundle = bundle_for(cfg);
      const std::string path = artifact(cfg, "family_sweep.csv");
      auto os = open_csv(path);
      os << "epsilon,tau,B_eff,residual,iterations,status\n";
      bool all_ok = true;
      for (double eps : cfg.eps_grid) {
        RunConfig one = cfg;
        one.eps = eps;
        try {
          FamilySolution sol;
          const StageResult s = family_stage(one, bundle, sol);
          os << eps << ',' << sol.tau << ',' << sol.B_eff << ',' << s.summary["residual"].get<double>()
             << ',' << sol.iterations << ',' << s.status << '\n';
          all_ok = all_ok && !s.failed();
        } catch (const Error&) {
          os << eps << ",nan,nan,nan,0,no_convergence\n";
          all_ok = false;
        }
      }
      out << json{{"csv", path}, {"points", cfg.eps_grid.size()}, {"all_ok", all_ok}}.dump(2) << '\n';
      return all_ok ? kOk : kVerificationFailed;
    }

    if (chain_cmd->parsed()) {
      const PotentialChain chain = chain_from_family_file(family_file);
      ChainReport report;
      const StageResult s = chain_stage(cfg, chain, report);
      write_json_file(artifact(cfg, "chain.json"), to_json(chain, report));
      write_potential_csv(artifact(cfg, "V.csv"), chain);
      out << stage_json(s).dump(2) << '\n';
      report_failures({s}, err);
      return exit_for({s});
    }

    if (band->parsed()) {
      const PotentialChain chain = chain_from_json(read_json_file(chain_file));
      BandScan scan;
      const StageResult s = band_stage(cfg, chain, scan);
      write_band_csv(artifact(cfg, "band.csv"), scan);
      write_json_file(artifact(cfg, "band.json"), to_json(scan));
      out << stage_json(s).dump(2) << '\n';
      report_failures({s}, err);
      return exit_for({s});
    }

    if (eigfun->parsed()) {
      const PotentialChain chain = chain_from_json(read_json_file(chain_file));
      EigenfunctionResult res;
      const StageResult s = eigfun_stage(cfg, chain, res);
      write_json_file(artifact(cfg, "eigfun.json"), to_json(res, amplitudes));
      out << stage_json(s).dump(2) << '\n';
      report_failures({s}, err);
      return exit_for({s});
    }

    if (pipeline->parsed()) {
      const auto stages = run_pipeline(cfg, !skip_eigfun);
      json summary = {{"schema", kSchemaVersion}, {"config", to_json(cfg)}, {"stages", json::array()}};
      for (const auto& s : stages) summary["stages"].push_back(stage_json(s));
      write_json_file(artifact(cfg, "summary.json"), summary);
      out << summary.dump(2) << '\n';
      report_failures(stages, err);
      return exit_for(stages);
    }
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kInvalidArgument;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace landau::cli
