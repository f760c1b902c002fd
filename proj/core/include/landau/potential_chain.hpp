#pragma once

#include "landau/periodic_fn.hpp"

#include <span>
#include <vector>

namespace landau {

struct ChainReport {
  std::vector<double> res_b;        // j = 1..m-1
  double res_c = 0.0;
  std::vector<double> means;        // mean of W^(j), j = 0..m-1
  std::vector<double> mean_errors;  // |mean W^(j) + 2B(m-j)|
  double V_mean = 0.0;
  std::vector<double> margins;      // min over samples of -W^(j) / (B (m-j))
  double min_negativity = 0.0;      // min over j and samples of -W^(j)
  bool all_negative = false;
  bool pass = false;
  double tol = 0.0;
};

/// Negative chain W^(j-1) = -2B(m-j+1) e^{u_j}, j = 1..m, with the potential
/// V = W^(0) + 2Bm. All functions depend on x2 only.
struct PotentialChain {
  int m = 0;
  double B = 0.0;
  std::vector<PeriodicFn> u;
  std::vector<PeriodicFn> W;
  PeriodicFn V;

  double omega() const { return V.omega(); }
  /// Constant potential (all u identically zero up to round-off).
  bool is_constant(double atol = 1e-14) const;
};

PotentialChain build_chain(std::span<const PeriodicFn> u, double B, const SeriesOptions& opts = {});

/// Residuals of the telescoping conditions computed through
/// d^2/dt^2 ln|W^(s)| = u_{s+1}'' and of the mean and sign conditions.
ChainReport verify_conditions(const PotentialChain& chain, double tol = 1e-8, int samples = 1024);

/// W^(j) for j = 0..m obtained from the telescoping formula (W^(m) should vanish).
std::vector<PeriodicFn> telescoped_chain(const PotentialChain& chain);

/// Residual functions (LHS - RHS) of the three equivalent forms of the
/// reduced system: cumulative-weighted, cumulative and tridiagonal.
struct SystemResiduals {
  std::vector<PeriodicFn> weighted;
  std::vector<PeriodicFn> cumulative;
  std::vector<PeriodicFn> coupled;
};
SystemResiduals system_residuals(std::span<const PeriodicFn> u, double B,
                                 const SeriesOptions& opts = {});

struct SystemResidualNorms {
  double weighted = 0.0;
  double cumulative = 0.0;
  double coupled = 0.0;
};
SystemResidualNorms cross_check_systems(std::span<const PeriodicFn> u, double B,
                                        const SeriesOptions& opts = {});

}  // namespace landau
