#include "landau/potential_chain.hpp"

#include "landau/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace landau {

namespace {

std::vector<PeriodicFn> second_derivatives(std::span<const PeriodicFn> u) {
  std::vector<PeriodicFn> out;
  out.reserve(u.size());
  for (const auto& f : u) out.push_back(second_derivative(f));
  return out;
}

double sampled_min(const PeriodicFn& f, int samples) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& [t, value] : sample(f, samples)) lo = std::min(lo, value);
  return lo;
}

}  // namespace

bool PotentialChain::is_constant(double atol) const {
  return std::all_of(u.begin(), u.end(), [atol](const PeriodicFn& f) { return norm_l1(f) <= atol; });
}

PotentialChain build_chain(std::span<const PeriodicFn> u, double B, const SeriesOptions& opts) {
  if (u.empty()) throw std::invalid_argument("build_chain: need at least one function");
  if (!(B > 0) || !std::isfinite(B)) throw std::invalid_argument("build_chain: B must be positive");
  PotentialChain chain;
  chain.m = static_cast<int>(u.size());
  chain.B = B;
  chain.u.assign(u.begin(), u.end());
  const double omega = u.front().omega();
  for (const auto& f : u) {
    if (!f.same_frequency(u.front())) throw std::invalid_argument("build_chain: functions differ in frequency");
  }
  for (int j = 1; j <= chain.m; ++j) {
    const PeriodicFn exp_u =
        PeriodicFn::constant(omega, 1.0) + exp_remainder(u[static_cast<size_t>(j - 1)], 0, opts);
    chain.W.push_back(exp_u * (-2.0 * B * (chain.m - j + 1)));
  }
  chain.V = chain.W.front() + PeriodicFn::constant(omega, 2.0 * B * chain.m);
  return chain;
}

std::vector<PeriodicFn> telescoped_chain(const PotentialChain& chain) {
  const auto d2u = second_derivatives(chain.u);
  const double omega = chain.omega();
  std::vector<PeriodicFn> out;
  for (int j = 0; j <= chain.m; ++j) {
    PeriodicFn w = chain.W.front() + PeriodicFn::constant(omega, 2.0 * chain.B * j);
    for (int s = 0; s < j; ++s) w -= d2u[static_cast<size_t>(s)] * static_cast<double>(j - s);
    out.push_back(std::move(w));
  }
  return out;
}

ChainReport verify_conditions(const PotentialChain& chain, double tol, int samples) {
  ChainReport rep;
  rep.tol = tol;
  const auto tele = telescoped_chain(chain);
  for (int j = 1; j < chain.m; ++j)
    rep.res_b.push_back(norm_C(chain.W[static_cast<size_t>(j)] - tele[static_cast<size_t>(j)]));
  rep.res_c = norm_C(tele[static_cast<size_t>(chain.m)]);

  rep.min_negativity = std::numeric_limits<double>::infinity();
  for (int j = 0; j < chain.m; ++j) {
    const PeriodicFn& w = chain.W[static_cast<size_t>(j)];
    rep.means.push_back(w.mean());
    rep.mean_errors.push_back(std::abs(w.mean() + 2.0 * chain.B * (chain.m - j)));
    const double neg = sampled_min(-w, samples);
    rep.margins.push_back(neg / (chain.B * (chain.m - j)));
    rep.min_negativity = std::min(rep.min_negativity, neg);
  }
  rep.V_mean = chain.V.mean();
  rep.all_negative = rep.min_negativity > 0.0;
  const double worst_b = rep.res_b.empty() ? 0.0 : *std::max_element(rep.res_b.begin(), rep.res_b.end());
  rep.pass = rep.all_negative && worst_b <= tol && rep.res_c <= tol;
  return rep;
}

SystemResiduals system_residuals(std::span<const PeriodicFn> u, double B, const SeriesOptions& opts) {
  const int m = static_cast<int>(u.size());
  if (m == 0) throw std::invalid_argument("system_residuals: need at least one function");
  const double omega = u.front().omega();
  const auto d2u = second_derivatives(u);
  std::vector<PeriodicFn> e;
  for (const auto& f : u) e.push_back(exp_remainder(f, 0, opts));
  auto e_at = [&](int j) {  // 1-based, zero beyond m
    return j <= m ? e[static_cast<size_t>(j - 1)] : PeriodicFn(omega);
  };

  SystemResiduals r;
  for (int j = 1; j <= m; ++j) {
    PeriodicFn lhs_w(omega);
    PeriodicFn lhs_c(omega);
    for (int s = 1; s <= j; ++s) {
      lhs_w -= d2u[static_cast<size_t>(s - 1)] * static_cast<double>(j - s + 1);
      lhs_c -= d2u[static_cast<size_t>(s - 1)];
    }
    const PeriodicFn next = e_at(j + 1) * (2.0 * B * (m - j));
    r.weighted.push_back(lhs_w - e_at(1) * (2.0 * B * m) + next);
    r.cumulative.push_back(lhs_c - e_at(j) * (2.0 * B * (m - j + 1)) + next);
  }
  const IntMatrix C = build_c_matrix(m);
  for (int j = 0; j < m; ++j) {
    PeriodicFn res = -d2u[static_cast<size_t>(j)];
    for (int mu = 0; mu < m; ++mu) {
      if (C(j, mu) == 0) continue;
      res -= e[static_cast<size_t>(mu)] * (B * static_cast<double>(C(j, mu)));
    }
    r.coupled.push_back(std::move(res));
  }
  return r;
}

SystemResidualNorms cross_check_systems(std::span<const PeriodicFn> u, double B,
                                        const SeriesOptions& opts) {
  const auto r = system_residuals(u, B, opts);
  auto worst = [](const std::vector<PeriodicFn>& fs) {
    double w = 0.0;
    for (const auto& f : fs) w = std::max(w, norm_C(f));
    return w;
  };
  return {worst(r.weighted), worst(r.cumulative), worst(r.coupled)};
}

}  // namespace landau
