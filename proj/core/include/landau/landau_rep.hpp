#pragma once

#include "landau/periodic_fn.hpp"
#include "landau/potential_chain.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace landau {

using cplx = std::complex<double>;

/// Complex Fourier modes f(t) = sum_q c_q e^{i q omega t}, |q| <= order.
/// Needed for odd functions such as derivatives of the chain, which a
/// PeriodicFn cannot hold.
struct FourierModes {
  double omega = 1.0;
  int order = 0;
  std::vector<cplx> c;  // c[q + order]

  cplx at(int q) const {
    return std::abs(q) <= order ? c[static_cast<size_t>(q + order)] : cplx{};
  }
  static FourierModes zero(double omega) { return {omega, 0, {cplx{}}}; }
  /// amplitude * e^{i q omega t}
  static FourierModes single(double omega, int q, cplx amplitude);
};

FourierModes to_modes(const PeriodicFn& f);
/// Modes of df/dt.
FourierModes derivative_modes(const PeriodicFn& f);
FourierModes operator+(const FourierModes& a, const FourierModes& b);
FourierModes operator*(double s, const FourierModes& a);

/// Amplitudes in the basis |n, p> = i^n h_n(sqrt(B)(x1 - k_p / B)) e^{i k_p x2}
/// with k_p = k0 + p omega. The i^n phase makes both ladder operators act
/// with real positive coefficients.
struct ChannelState {
  double B = 1.0;
  double omega = 1.0;
  double k0 = 0.0;
  int N = 0;  // highest level
  int P = 0;  // channels -P..P
  Eigen::MatrixXcd amp;  // (N+1) x (2P+1)
  double dropped_norm2 = 0.0;  // mass discarded by truncation while producing this state

  static ChannelState zeros(double B, double omega, double k0, int N, int P);
  /// value * |n, p>
  static ChannelState basis(double B, double omega, double k0, int N, int P, int n, int p,
                            cplx value = 1.0);

  cplx& at(int n, int p) { return amp(n, p + P); }
  cplx at(int n, int p) const { return amp(n, p + P); }
  double norm() const { return amp.norm(); }
  /// Mass on levels >= n (truncation diagnostic).
  double level_tail(int n) const;
  /// Mass on channels |p| >= p_min.
  double channel_tail(int p_min) const;

  ChannelState& operator+=(const ChannelState& other);
  ChannelState& operator-=(const ChannelState& other);
  ChannelState& operator*=(cplx s);
};

ChannelState operator+(ChannelState a, const ChannelState& b);
ChannelState operator-(ChannelState a, const ChannelState& b);
ChannelState operator*(cplx s, ChannelState a);

/// Same state in a larger (or equal) window; extra entries are zero.
ChannelState embed(const ChannelState& s, int N, int P);
/// <a, b>, antilinear in a.
cplx inner(const ChannelState& a, const ChannelState& b);

enum class Ladder { plus, minus, minus_inverse };

/// plus:          |n> -> sqrt(2B(n+1)) |n+1>
/// minus:         |n> -> sqrt(2Bn) |n-1>
/// minus_inverse: |n> -> (2B(n+1))^{-1/2} |n+1>
/// Mass pushed above level N is dropped and added to dropped_norm2.
ChannelState ladder_apply(const ChannelState& s, Ladder direction);

/// Level-n projection (all other levels zeroed).
ChannelState project_level(const ChannelState& s, int n);

/// Free Landau Hamiltonian: B(2n+1) on level n.
ChannelState landau_apply(const ChannelState& s);

/// Multiplication by e^{i theta x2} between shifted Hermite functions in the
/// real h_n basis; displacement d = theta / sqrt(B).
struct MulOperator {
  double theta = 0.0;
  double d = 0.0;
  Eigen::MatrixXd M;
};
MulOperator mul_matrix(double theta, double B, int N);

/// Multiplication by w(x2). Channel p feeds channel p+q through mode q;
/// channels outside -P..P are dropped into dropped_norm2.
ChannelState multiply_state(const ChannelState& s, const FourierModes& w);
ChannelState multiply_state(const ChannelState& s, const PeriodicFn& w);

/// B^(j) through the closed form
///   Z+ + Z-^{-1} W^(j-1) - sum_{s<=j} u_s'(x2),   j >= 1,
/// and B^(0) = Z-^{-1}(Z+ Z- + W^(0)).
ChannelState b_chain_apply(int j, const PotentialChain& chain, const ChannelState& s);

/// Same operator through the conjugation recursion
///   B^(j) = (W^(j-1))^{-1} Z- B^(j-1) Z-^{-1} W^(j-1).
ChannelState b_chain_apply_recursive(int j, const PotentialChain& chain, const ChannelState& s);

/// 1 / W^(j) as a series (W^(j) = -c e^{u_{j+1}} so 1/W = -e^{-u}/c).
PeriodicFn inverse_chain_element(const PotentialChain& chain, int j,
                                 const SeriesOptions& opts = {});

}  // namespace landau
