#pragma once

#include "landau/landau_rep.hpp"
#include "landau/potential_chain.hpp"

#include <Eigen/Dense>

namespace landau {

struct EigenfunctionOptions {
  int levels = 40;        // N
  int channels = 10;      // P
  int check_levels = 20;  // extra levels used when measuring the residual
  double tol = 1e-5;
  bool enforce = true;    // throw TruncationInsufficient when residual > tol
};

struct EigenfunctionResult {
  ChannelState phi;
  Eigen::MatrixXcd psi;        // row s: level-0 channel amplitudes of Psi_s
  double lambda = 0.0;         // (2m+1)B
  double residual = 0.0;       // ||(H_B + V - lambda) phi|| / ||phi|| in an enlarged window
  double window_residual = 0.0;  // same, inside the solve window
  double phi_norm = 0.0;
  double unwind_error = 0.0;   // ||(W^(m-1))^{-1} Z- ... (W^(0))^{-1} Z- phi - Psi|| / ||Psi||
};

/// Z-^{-1} W^(0) Z-^{-1} W^(1) ... Z-^{-1} W^(r-1) applied to s (r factors).
ChannelState chain_product(const PotentialChain& chain, int r, const ChannelState& s);

/// (H_B + V - lambda) s, evaluated in the window of s.
ChannelState shifted_hamiltonian_apply(const PotentialChain& chain, double lambda,
                                       const ChannelState& s);

/// Builds Phi(Psi) for Psi the lowest-level state in channel 0. The level-0
/// corrections Psi_0..Psi_{m-1} are obtained together from one least-squares
/// solve of (Z+ Z- + W^(0)) Phi = 0 over their channel amplitudes.
EigenfunctionResult build_eigenfunction(const PotentialChain& chain, double k0,
                                        const EigenfunctionOptions& opts = {});

/// Relative residual of phi measured after embedding into a window large
/// enough that multiplication by V loses no channel mass.
double eigen_residual(const PotentialChain& chain, const ChannelState& phi, double lambda,
                      int extra_levels);

}  // namespace landau
