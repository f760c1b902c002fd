#include "landau/eigenfunction.hpp"

#include "landau/errors.hpp"

#include <Eigen/QR>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace landau {

namespace {

Eigen::VectorXcd flatten(const ChannelState& s) {
  return Eigen::Map<const Eigen::VectorXcd>(s.amp.data(), s.amp.size());
}

}  // namespace

ChannelState chain_product(const PotentialChain& chain, int r, const ChannelState& s) {
  if (r < 0 || r > chain.m) throw std::invalid_argument("chain_product: r must be in 0..m");
  ChannelState x = s;
  for (int i = r - 1; i >= 0; --i)
    x = ladder_apply(multiply_state(x, chain.W[static_cast<size_t>(i)]), Ladder::minus_inverse);
  return x;
}

ChannelState shifted_hamiltonian_apply(const PotentialChain& chain, double lambda,
                                       const ChannelState& s) {
  ChannelState out = landau_apply(s) + multiply_state(s, chain.V);
  out.amp -= lambda * s.amp;
  return out;
}

double eigen_residual(const PotentialChain& chain, const ChannelState& phi, double lambda,
                      int extra_levels) {
  const ChannelState big = embed(phi, phi.N + extra_levels, phi.P + chain.V.order());
  const ChannelState r = shifted_hamiltonian_apply(chain, lambda, big);
  return r.norm() / big.norm();
}

EigenfunctionResult build_eigenfunction(const PotentialChain& chain, double k0,
                                        const EigenfunctionOptions& opts) {
  if (opts.levels < chain.m + 1) throw std::invalid_argument("build_eigenfunction: levels must exceed m");
  if (opts.channels < 0) throw std::invalid_argument("build_eigenfunction: channels must be >= 0");
  const int m = chain.m;
  const double B = chain.B;
  const double omega = chain.omega();
  const int N = opts.levels;
  const int P = opts.channels;
  const int width = 2 * P + 1;

  // Z+ Z- + W^(0) = H_B - B + W^(0)
  auto L = [&](const ChannelState& s) {
    ChannelState out = landau_apply(s) + multiply_state(s, chain.W.front());
    out.amp -= B * s.amp;
    return out;
  };

  const ChannelState psi = ChannelState::basis(B, omega, k0, N, P, 0, 0);
  const ChannelState lead = chain_product(chain, m, psi);

  // Column s*width + (p+P): L K_{m-1-s} |0, p>
  Eigen::MatrixXcd A(lead.amp.size(), m * width);
  std::vector<ChannelState> corrections;
  corrections.reserve(static_cast<size_t>(m * width));
  for (int s = 0; s < m; ++s) {
    for (int p = -P; p <= P; ++p) {
      ChannelState col = chain_product(chain, m - 1 - s, ChannelState::basis(B, omega, k0, N, P, 0, p));
      A.col(s * width + p + P) = flatten(L(col));
      corrections.push_back(std::move(col));
    }
  }
  const Eigen::VectorXcd rhs = -flatten(L(lead));
  const Eigen::VectorXcd x = A.completeOrthogonalDecomposition().solve(rhs);

  EigenfunctionResult res;
  res.lambda = (2 * m + 1) * B;
  res.phi = lead;
  res.psi.resize(m, width);
  for (int s = 0; s < m; ++s) {
    for (int k = 0; k < width; ++k) {
      const cplx c = x(s * width + k);
      res.psi(s, k) = c;
      res.phi.amp += c * corrections[static_cast<size_t>(s * width + k)].amp;
    }
  }
  res.phi_norm = res.phi.norm();
  if (!(res.phi_norm > 1e-8)) throw LemmaViolation("build_eigenfunction: constructed state vanishes");

  res.window_residual = shifted_hamiltonian_apply(chain, res.lambda, res.phi).norm() / res.phi_norm;
  res.residual = eigen_residual(chain, res.phi, res.lambda, opts.check_levels);

  ChannelState back = res.phi;
  for (int i = 0; i < m; ++i)
    back = multiply_state(ladder_apply(back, Ladder::minus), inverse_chain_element(chain, i));
  res.unwind_error = (back.amp - psi.amp).norm() / psi.norm();

  if (opts.enforce && !(res.residual <= opts.tol)) {
    std::ostringstream msg;
    msg << "eigenfunction residual " << res.residual << " exceeds " << opts.tol
        << "; increase levels or channels";
    throw TruncationInsufficient(msg.str(), res.residual);
  }
  return res;
}

}  // namespace landau
