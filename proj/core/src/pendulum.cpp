#include "landau/pendulum.hpp"

#include "landau/errors.hpp"
#include "landau/quadrature.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace landau {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0) || !std::isfinite(value))
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

// Root of exp_excess(u) = level on the branch sign(u) = sign.
double branch_root(double level, int sign) {
  if (level <= 0.0) return 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double guess = 0.0;
  const double harmonic = std::sqrt(2.0 * level);
  if (sign > 0) {
    // exp_excess(u) >= u^2/2 on u >= 0.
    lo = 0.0;
    hi = harmonic;
    guess = std::min(harmonic, std::log1p(level) + 1.0);
  } else {
    // u^2/2 >= exp_excess(u) >= -u - 1 on u <= 0.
    lo = -(level + 1.0);
    hi = -harmonic;
    guess = std::max(lo, -harmonic * (1.0 + harmonic / 6.0));
  }
  auto f = [level](double u) {
    return std::make_pair(exp_excess(u) - level, std::expm1(u));
  };
  std::uintmax_t iters = 200;
  return boost::math::tools::newton_raphson_iterate(f, std::clamp(guess, lo, hi), lo, hi,
                                                    std::numeric_limits<double>::digits - 2, iters);
}

// sin(theta) / (e^{u} - 1) with u = u_of_xi(sin theta); finite at theta = 0.
double xi_integrand(double xi, double alpha, double B) {
  if (xi == 0.0) return std::sqrt(2.0 * B) / alpha;
  return xi / std::expm1(u_of_xi(xi, alpha, B));
}

double integrate_theta(int nodes, double alpha, double B) {
  const auto rule = gauss_legendre(nodes, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
  double sum = 0.0;
  for (size_t k = 0; k < rule.nodes.size(); ++k)
    sum += rule.weights[k] * xi_integrand(std::sin(rule.nodes[k]), alpha, B);
  return alpha / B * sum;
}

}  // namespace

double exp_excess(double u) {
  if (std::abs(u) < 0.5) {
    double term = 0.5 * u * u;
    double sum = term;
    for (int k = 3; k < 40; ++k) {
      term *= u / k;
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::expm1(u) - u;
}

AmplitudeBounds amplitude_bounds(double alpha, double B) {
  require_positive(alpha, "alpha");
  require_positive(B, "B");
  const double level = alpha * alpha / (4.0 * B);
  return {branch_root(level, -1), branch_root(level, +1)};
}

double u_of_xi(double xi, double alpha, double B) {
  if (!(std::abs(xi) <= 1.0)) throw std::invalid_argument("u_of_xi: |xi| must be <= 1");
  require_positive(alpha, "alpha");
  require_positive(B, "B");
  if (xi == 0.0) return 0.0;
  const double level = alpha * alpha * xi * xi / (4.0 * B);
  return branch_root(level, xi > 0 ? +1 : -1);
}

double period_integral(double alpha, double B, const PeriodOptions& opts) {
  require_positive(alpha, "alpha");
  require_positive(B, "B");
  int n = opts.nodes;
  double coarse = integrate_theta(n, alpha, B);
  while (true) {
    const double fine = integrate_theta(2 * n, alpha, B);
    const double diff = std::abs(fine - coarse);
    if (diff <= opts.rtol * std::abs(fine)) return fine;
    if (2 * n >= opts.max_nodes)
      throw AccuracyError("period_integral: quadrature did not converge", diff / std::abs(fine));
    n *= 2;
    coarse = fine;
  }
}

PendulumSolution solve_pendulum(double alpha, double B, const PeriodOptions& opts) {
  const auto bounds = amplitude_bounds(alpha, B);
  return {alpha, B, bounds.u_plus, bounds.u_minus, period_integral(alpha, B, opts)};
}

OdeResult solve_ode(double alpha, double B, double t_end, double dt, double energy_rtol) {
  require_positive(alpha, "alpha");
  require_positive(B, "B");
  require_positive(t_end, "t_end");
  require_positive(dt, "dt");

  using State = std::array<double, 2>;
  auto rhs = [B](const State& x, State& dxdt, double) {
    dxdt[0] = x[1];
    dxdt[1] = -2.0 * B * std::expm1(x[0]);
  };
  boost::numeric::odeint::runge_kutta_fehlberg78<State> stepper;
  auto energy = [B](const State& x) { return 0.5 * x[1] * x[1] + 2.0 * B * exp_excess(x[0]); };

  OdeResult out;
  const double e0 = 0.5 * alpha * alpha;
  State x{0.0, alpha};
  double t = 0.0;
  const auto steps = static_cast<long long>(std::ceil(t_end / dt));
  out.samples.reserve(static_cast<size_t>(steps) + 1);
  out.samples.push_back({t, x[0], x[1]});
  out.upward_crossings.push_back(0.0);

  for (long long s = 0; s < steps; ++s) {
    State next = x;
    stepper.do_step(rhs, next, t, dt);
    if (x[0] < 0.0 && next[0] >= 0.0) {
      // Newton on the step length from the state at t.
      double h = dt * (-x[0]) / (next[0] - x[0]);
      for (int it = 0; it < 8; ++it) {
        State probe = x;
        stepper.do_step(rhs, probe, t, h);
        const double dh = probe[0] / probe[1];
        h -= dh;
        if (std::abs(dh) < 1e-15 * dt) break;
      }
      out.upward_crossings.push_back(t + h);
    }
    x = next;
    t = (s + 1) * dt;
    out.samples.push_back({t, x[0], x[1]});
    out.max_energy_drift = std::max(out.max_energy_drift, std::abs(energy(x) - e0) / e0);
  }
  if (out.max_energy_drift > energy_rtol)
    throw AccuracyError("solve_ode: energy drift exceeds tolerance, reduce dt",
                        out.max_energy_drift);
  if (out.upward_crossings.size() >= 2) {
    out.period = (out.upward_crossings.back() - out.upward_crossings.front()) /
                 static_cast<double>(out.upward_crossings.size() - 1);
  }
  return out;
}

double period_ode(double alpha, double B, int periods, int steps_per_period) {
  const double estimate = period_integral(alpha, B);
  const double dt = estimate / steps_per_period;
  // Half a step of slack so the last crossing is captured.
  const auto result = solve_ode(alpha, B, (periods + 0.5) * estimate, dt);
  if (result.upward_crossings.size() < 2)
    throw AccuracyError("period_ode: no full oscillation observed", 0.0);
  return result.period;
}

std::vector<PeriodCurvePoint> period_curve(double alpha_min, double alpha_max, int count, double B,
                                           const PeriodOptions& opts) {
  require_positive(alpha_min, "alpha_min");
  if (!(alpha_max >= alpha_min)) throw std::invalid_argument("alpha_max must be >= alpha_min");
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  std::vector<PeriodCurvePoint> out;
  out.reserve(static_cast<size_t>(count));
  const double lmin = std::log(alpha_min);
  const double lmax = std::log(alpha_max);
  for (int k = 0; k < count; ++k) {
    const double alpha = count == 1 ? alpha_min : std::exp(lmin + (lmax - lmin) * k / (count - 1));
    out.push_back({alpha, period_integral(alpha, B, opts)});
  }
  return out;
}

}  // namespace landau
