#pragma once

#include <array>
#include <vector>

namespace landau {

/// e^u - 1 - u without cancellation near u = 0.
double exp_excess(double u);

struct AmplitudeBounds {
  double u_minus = 0.0;
  double u_plus = 0.0;
};

/// Turning points of -u'' = 2B(e^u - 1) with u(0) = 0, u'(0) = alpha:
/// the two roots of e^u - 1 - u = alpha^2 / (4B).
AmplitudeBounds amplitude_bounds(double alpha, double B);

/// Monotone branch u_xi with e^{u_xi} - 1 - u_xi = alpha^2 xi^2 / (4B),
/// sign(u_xi) = sign(xi).
double u_of_xi(double xi, double alpha, double B);

struct PeriodOptions {
  int nodes = 200;
  double rtol = 1e-12;     // agreement required between n and 2n nodes
  int max_nodes = 6400;
};

/// Minimal period T_alpha from the xi-form of the period integral, evaluated
/// with Gauss-Legendre in theta after xi = sin(theta).
double period_integral(double alpha, double B, const PeriodOptions& opts = {});

struct PendulumSolution {
  double alpha = 0.0;
  double B = 0.0;
  double u_plus = 0.0;
  double u_minus = 0.0;
  double T_alpha = 0.0;
};

PendulumSolution solve_pendulum(double alpha, double B, const PeriodOptions& opts = {});

struct OdeSample {
  double t;
  double u;
  double du;
};

struct OdeResult {
  std::vector<OdeSample> samples;
  std::vector<double> upward_crossings;  // includes t = 0
  double period = 0.0;                   // mean spacing of upward zero crossings
  double max_energy_drift = 0.0;         // relative to alpha^2 / 2
};

/// Integrates -u'' = 2B(e^u - 1), u(0) = 0, u'(0) = alpha with a fixed-step
/// eighth-order Runge-Kutta-Fehlberg scheme. Throws AccuracyError when the
/// relative energy drift exceeds energy_rtol.
OdeResult solve_ode(double alpha, double B, double t_end, double dt, double energy_rtol = 1e-10);

/// Convenience wrapper: integrates `periods` periods (estimated from the
/// integral) at `steps_per_period` steps each and returns the crossing period.
double period_ode(double alpha, double B, int periods = 10, int steps_per_period = 2000);

struct PeriodCurvePoint {
  double alpha;
  double T_alpha;
};
/// T_alpha on a logarithmic alpha grid.
std::vector<PeriodCurvePoint> period_curve(double alpha_min, double alpha_max, int count, double B,
                                           const PeriodOptions& opts = {});

}  // namespace landau
