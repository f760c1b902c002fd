#include "landau/landau_rep.hpp"

#include "landau/hermite.hpp"

#include <cmath>
#include <stdexcept>

namespace landau {

namespace {

void require_compatible(const ChannelState& a, const ChannelState& b) {
  if (a.N != b.N || a.P != b.P || a.amp.rows() != b.amp.rows() || a.amp.cols() != b.amp.cols())
    throw std::invalid_argument("channel states have different truncation windows");
}

// i^k for integer k.
cplx ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Level-mixing matrix of e^{i q omega x2} in the phased basis:
// entry (n', n) = i^{n - n'} M(n', n).
Eigen::MatrixXcd phased_mul(int q, double omega, double B, int N) {
  const Eigen::MatrixXd M = mul_matrix(q * omega, B, N).M;
  Eigen::MatrixXcd T(N + 1, N + 1);
  for (int r = 0; r <= N; ++r)
    for (int c = 0; c <= N; ++c) T(r, c) = ipow(c - r) * M(r, c);
  return T;
}

}  // namespace

FourierModes FourierModes::single(double omega, int q, cplx amplitude) {
  FourierModes f{omega, std::abs(q), {}};
  f.c.assign(static_cast<size_t>(2 * f.order + 1), cplx{});
  f.c[static_cast<size_t>(q + f.order)] = amplitude;
  return f;
}

FourierModes to_modes(const PeriodicFn& f) {
  FourierModes out{f.omega(), f.order(), {}};
  out.c.assign(static_cast<size_t>(2 * out.order + 1), cplx{});
  out.c[static_cast<size_t>(out.order)] = f.coeff(0);
  for (int n = 1; n <= out.order; ++n) {
    out.c[static_cast<size_t>(out.order + n)] = 0.5 * f.coeff(n);
    out.c[static_cast<size_t>(out.order - n)] = 0.5 * f.coeff(n);
  }
  return out;
}

FourierModes derivative_modes(const PeriodicFn& f) {
  FourierModes out = to_modes(f);
  for (int q = -out.order; q <= out.order; ++q)
    out.c[static_cast<size_t>(q + out.order)] *= cplx(0.0, q * out.omega);
  return out;
}

FourierModes operator+(const FourierModes& a, const FourierModes& b) {
  if (std::abs(a.omega - b.omega) > 1e-12 * std::abs(a.omega))
    throw std::invalid_argument("FourierModes: mismatched omega");
  const int order = std::max(a.order, b.order);
  FourierModes out{a.omega, order, std::vector<cplx>(static_cast<size_t>(2 * order + 1))};
  for (int q = -order; q <= order; ++q) out.c[static_cast<size_t>(q + order)] = a.at(q) + b.at(q);
  return out;
}

FourierModes operator*(double s, const FourierModes& a) {
  FourierModes out = a;
  for (auto& v : out.c) v *= s;
  return out;
}

ChannelState ChannelState::zeros(double B, double omega, double k0, int N, int P) {
  if (!(B > 0)) throw std::invalid_argument("ChannelState: B must be positive");
  if (!(omega > 0)) throw std::invalid_argument("ChannelState: omega must be positive");
  if (N < 0 || P < 0) throw std::invalid_argument("ChannelState: N and P must be >= 0");
  ChannelState s;
  s.B = B;
  s.omega = omega;
  s.k0 = k0;
  s.N = N;
  s.P = P;
  s.amp = Eigen::MatrixXcd::Zero(N + 1, 2 * P + 1);
  return s;
}

ChannelState ChannelState::basis(double B, double omega, double k0, int N, int P, int n, int p,
                                 cplx value) {
  ChannelState s = zeros(B, omega, k0, N, P);
  if (n < 0 || n > N || std::abs(p) > P) throw std::invalid_argument("ChannelState: index out of window");
  s.at(n, p) = value;
  return s;
}

double ChannelState::level_tail(int n) const {
  if (n > N) return 0.0;
  return amp.bottomRows(N + 1 - std::max(n, 0)).norm();
}

double ChannelState::channel_tail(int p_min) const {
  double sum = 0.0;
  for (int p = -P; p <= P; ++p)
    if (std::abs(p) >= p_min) sum += amp.col(p + P).squaredNorm();
  return std::sqrt(sum);
}

ChannelState& ChannelState::operator+=(const ChannelState& other) {
  require_compatible(*this, other);
  amp += other.amp;
  dropped_norm2 += other.dropped_norm2;
  return *this;
}

ChannelState& ChannelState::operator-=(const ChannelState& other) {
  require_compatible(*this, other);
  amp -= other.amp;
  dropped_norm2 += other.dropped_norm2;
  return *this;
}

ChannelState& ChannelState::operator*=(cplx s) {
  amp *= s;
  dropped_norm2 *= std::norm(s);
  return *this;
}

ChannelState operator+(ChannelState a, const ChannelState& b) { return a += b; }
ChannelState operator-(ChannelState a, const ChannelState& b) { return a -= b; }
ChannelState operator*(cplx s, ChannelState a) { return a *= s; }

ChannelState embed(const ChannelState& s, int N, int P) {
  if (N < s.N || P < s.P) throw std::invalid_argument("embed: target window must contain the state");
  ChannelState out = ChannelState::zeros(s.B, s.omega, s.k0, N, P);
  out.amp.block(0, P - s.P, s.N + 1, 2 * s.P + 1) = s.amp;
  out.dropped_norm2 = s.dropped_norm2;
  return out;
}

cplx inner(const ChannelState& a, const ChannelState& b) {
  require_compatible(a, b);
  return a.amp.conjugate().cwiseProduct(b.amp).sum();
}

ChannelState ladder_apply(const ChannelState& s, Ladder direction) {
  ChannelState out = ChannelState::zeros(s.B, s.omega, s.k0, s.N, s.P);
  out.dropped_norm2 = s.dropped_norm2;
  const double two_b = 2.0 * s.B;
  switch (direction) {
    case Ladder::plus:
    case Ladder::minus_inverse:
      for (int n = 0; n <= s.N; ++n) {
        const double f = direction == Ladder::plus ? std::sqrt(two_b * (n + 1))
                                                   : 1.0 / std::sqrt(two_b * (n + 1));
        if (n == s.N) {
          out.dropped_norm2 += f * f * s.amp.row(n).squaredNorm();
        } else {
          out.amp.row(n + 1) = f * s.amp.row(n);
        }
      }
      break;
    case Ladder::minus:
      for (int n = 1; n <= s.N; ++n) out.amp.row(n - 1) = std::sqrt(two_b * n) * s.amp.row(n);
      break;
  }
  return out;
}

ChannelState project_level(const ChannelState& s, int n) {
  ChannelState out = ChannelState::zeros(s.B, s.omega, s.k0, s.N, s.P);
  if (n >= 0 && n <= s.N) out.amp.row(n) = s.amp.row(n);
  return out;
}

ChannelState landau_apply(const ChannelState& s) {
  ChannelState out = s;
  for (int n = 0; n <= s.N; ++n) out.amp.row(n) *= s.B * (2 * n + 1);
  return out;
}

MulOperator mul_matrix(double theta, double B, int N) {
  if (!(B > 0)) throw std::invalid_argument("mul_matrix: B must be positive");
  const double d = theta / std::sqrt(B);
  return {theta, d, displaced_overlap(d, N)};
}

ChannelState multiply_state(const ChannelState& s, const FourierModes& w) {
  if (std::abs(w.omega - s.omega) > 1e-12 * s.omega)
    throw std::invalid_argument("multiply_state: function frequency differs from channel spacing");
  ChannelState out = ChannelState::zeros(s.B, s.omega, s.k0, s.N, s.P);
  out.dropped_norm2 = s.dropped_norm2;
  for (int q = -w.order; q <= w.order; ++q) {
    const cplx c = w.at(q);
    if (c == cplx{}) continue;
    if (q == 0) {
      out.amp += c * s.amp;
      continue;
    }
    const Eigen::MatrixXcd T = phased_mul(q, s.omega, s.B, s.N);
    for (int p = -s.P; p <= s.P; ++p) {
      const int target = p + q;
      if (std::abs(target) > s.P) {
        // Unitary level mixing: the dropped mass equals the source mass.
        out.dropped_norm2 += std::norm(c) * s.amp.col(p + s.P).squaredNorm();
        continue;
      }
      out.amp.col(target + s.P) += c * (T * s.amp.col(p + s.P));
    }
  }
  return out;
}

ChannelState multiply_state(const ChannelState& s, const PeriodicFn& w) {
  return multiply_state(s, to_modes(w));
}

PeriodicFn inverse_chain_element(const PotentialChain& chain, int j, const SeriesOptions& opts) {
  if (j < 0 || j >= chain.m) throw std::invalid_argument("inverse_chain_element: j out of range");
  const PeriodicFn& u = chain.u[static_cast<size_t>(j)];
  const double c = 2.0 * chain.B * (chain.m - j);
  const PeriodicFn e = PeriodicFn::constant(u.omega(), 1.0) + exp_remainder(-u, 0, opts);
  return e * (-1.0 / c);
}

ChannelState b_chain_apply(int j, const PotentialChain& chain, const ChannelState& s) {
  if (j < 0 || j > chain.m) throw std::invalid_argument("b_chain_apply: j must be in 0..m");
  if (j == 0) {
    const ChannelState zz = ladder_apply(ladder_apply(s, Ladder::minus), Ladder::plus);
    return ladder_apply(zz + multiply_state(s, chain.W.front()), Ladder::minus_inverse);
  }
  ChannelState out = ladder_apply(s, Ladder::plus);
  out += ladder_apply(multiply_state(s, chain.W[static_cast<size_t>(j - 1)]), Ladder::minus_inverse);
  FourierModes du = FourierModes::zero(chain.omega());
  for (int r = 0; r < j; ++r) du = du + derivative_modes(chain.u[static_cast<size_t>(r)]);
  out -= multiply_state(s, du);
  return out;
}

ChannelState b_chain_apply_recursive(int j, const PotentialChain& chain, const ChannelState& s) {
  if (j < 0 || j > chain.m) throw std::invalid_argument("b_chain_apply_recursive: j must be in 0..m");
  if (j == 0) return b_chain_apply(0, chain, s);
  const ChannelState inner_state =
      ladder_apply(multiply_state(s, chain.W[static_cast<size_t>(j - 1)]), Ladder::minus_inverse);
  const ChannelState mid = ladder_apply(b_chain_apply_recursive(j - 1, chain, inner_state), Ladder::minus);
  return multiply_state(mid, inverse_chain_element(chain, j - 1));
}

}  // namespace landau
