#pragma once

#include "landau/periodic_fn.hpp"

#include <Eigen/Dense>

#include <vector>

namespace landau {

/// Matrix of H_B + V on the channel window k + p omega, |p| <= P, levels
/// 0..N, in the real Hermite basis. Index n + (N+1)(p+P). The matrix is real
/// symmetric and its entries do not depend on k: every x2-quasimomentum fiber
/// of an x2-periodic potential is the same operator.
Eigen::MatrixXcd fiber_matrix(double k, const PeriodicFn& V, double B, int N, int P);

/// Magnetic Bloch matrix of H_B + V at phase kappa:
///   B(2n+1) delta + sum_{|q|<=Q} V_q e^{-i q kappa} M(q omega / sqrt B),
/// with V_q the complex Fourier modes of V. The channel lattice is
/// translation invariant, so the spectrum of H_B + V is the union over
/// kappa in [0, 2 pi) of the spectra of these (N+1) x (N+1) matrices.
Eigen::MatrixXcd bloch_matrix(double kappa, const PeriodicFn& V, double B, int N, int Q);

struct BandOptions {
  int k_samples = 16;
  int levels = 40;           // N
  int modes = 10;            // Q, Fourier modes of V kept
  double tol = 1e-6;         // deviation and flatness tolerance, in units of B
  double guard = 0.1;        // nearest eigenvalue must lie within guard*B of the target
  double flat_tol = 1e-6;    // a band narrower than flat_tol*B counts as flat
};

struct BandPoint {
  double kappa = 0.0;
  double lambda_near = 0.0;
  double deviation = 0.0;  // lambda_near - target
};

struct FlatBand {
  int index = 0;         // position in the sorted spectrum
  double center = 0.0;
  double width = 0.0;
  bool at_landau_level = false;  // center within flat_tol*B of some (2n+1)B + V0
};

struct BandScan {
  double B = 0.0;
  int m = 0;
  double target = 0.0;         // (2m+1)B
  std::vector<BandPoint> points;
  double max_deviation = 0.0;  // max |lambda_near - target|
  double flatness = 0.0;       // max - min of lambda_near
  bool guard_ok = true;
  std::vector<FlatBand> flat_bands;  // lower half of the spectrum only
  int stray_flat_bands = 0;          // flat bands away from every (2n+1)B + V0
  bool pass = false;
  BandOptions options;
};

BandScan flat_band_scan(const PeriodicFn& V, double B, int m, const BandOptions& opts = {});

/// Eigenvalues (ascending) of the window matrix; counts eigenvalues within
/// `window` of `target` as a multiplicity signature.
int count_near(const Eigen::VectorXd& eigenvalues, double target, double window);

}  // namespace landau
