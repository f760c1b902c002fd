#include "oracles.hpp"

#include <landau/errors.hpp>
#include <landau/pendulum.hpp>
#include <landau/quadrature.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace landau;

TEST(Quadrature, GaussLegendreIntegratesPolynomialsExactly) {
  const auto rule = gauss_legendre(10, -1.0, 2.0);
  for (int p = 0; p < 20; ++p) {
    double s = 0.0;
    for (size_t k = 0; k < rule.nodes.size(); ++k) s += rule.weights[k] * std::pow(rule.nodes[k], p);
    const double exact = (std::pow(2.0, p + 1) - std::pow(-1.0, p + 1)) / (p + 1);
    EXPECT_NEAR(s, exact, 1e-12 * std::max(1.0, std::abs(exact))) << p;
  }
}

TEST(Pendulum, LevelSetRoots) {
  for (auto [alpha, B] : {std::pair{1e-4, 1.0}, {1.0, 1.0}, {2.0, 0.5}, {50.0, 1.0}}) {
    const auto r = amplitude_bounds(alpha, B);
    const double level = alpha * alpha / (4.0 * B);
    EXPECT_LT(r.u_minus, 0.0);
    EXPECT_GT(r.u_plus, 0.0);
    EXPECT_LE(std::abs(exp_excess(r.u_plus) - level), 1e-13 * (1.0 + level));
    EXPECT_LE(std::abs(exp_excess(r.u_minus) - level), 1e-13 * (1.0 + level));
    EXPECT_NEAR(r.u_plus, oracle::turning_point(level, +1), 1e-12 * (1.0 + std::abs(r.u_plus)));
    EXPECT_NEAR(r.u_minus, oracle::turning_point(level, -1), 1e-12 * (1.0 + std::abs(r.u_minus)));
  }
  const auto small = amplitude_bounds(1e-4, 1.0);
  EXPECT_LE(std::abs(small.u_plus - 1e-4 / std::sqrt(2.0)), 1e-9);
  const auto unit = amplitude_bounds(1.0, 1.0);
  EXPECT_GT(std::abs(unit.u_plus + unit.u_minus), 1e-3);
  const auto half = amplitude_bounds(2.0, 0.5);
  EXPECT_NEAR(exp_excess(half.u_plus), 2.0, 1e-12);
}

TEST(Pendulum, RejectsNonPositiveArguments) {
  EXPECT_THROW(amplitude_bounds(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(amplitude_bounds(1.0, -1.0), std::invalid_argument);
  EXPECT_THROW(period_integral(-1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(u_of_xi(1.5, 1.0, 1.0), std::invalid_argument);
}

TEST(Pendulum, ImplicitFunctionOfXi) {
  const double alpha = 1.0;
  const double B = 1.0;
  EXPECT_EQ(u_of_xi(0.0, alpha, B), 0.0);
  const auto r = amplitude_bounds(alpha, B);
  EXPECT_NEAR(u_of_xi(1.0, alpha, B), r.u_plus, 1e-15);
  EXPECT_NEAR(u_of_xi(-1.0, alpha, B), r.u_minus, 1e-15);
  double prev = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 100; ++i) {
    const double xi = -1.0 + 2.0 * i / 100.0;
    const double u = u_of_xi(xi, alpha, B);
    EXPECT_GT(u, prev);
    const double level = alpha * alpha * xi * xi / (4.0 * B);
    EXPECT_NEAR(u, oracle::turning_point(level, xi >= 0 ? 1 : -1), 1e-12) << xi;
    prev = u;
  }
}

TEST(Pendulum, SmallAmplitudeExpansion) {
  const double B = 1.0;
  for (double alpha : {1e-2, 1e-3}) {
    const double T = period_integral(alpha, B);
    const double scaled = T * std::sqrt(2.0 * B) / (2.0 * std::numbers::pi);
    EXPECT_LE(std::abs(scaled - 1.0 - alpha * alpha / (48.0 * B)), 10.0 * std::pow(alpha, 4) / (B * B));
  }
  const double T = period_integral(1e-3, 1.0);
  EXPECT_NEAR(T, 2.0 * std::numbers::pi / std::sqrt(2.0) * (1.0 + 1e-6 / 48.0), 1e-9 * T);
  EXPECT_NEAR(period_integral(1e-3, 0.5), 2.0 * std::numbers::pi, 1e-6);
}

TEST(Pendulum, LargeAmplitudeSlope) {
  const double B = 1.0;
  const double ratio = period_integral(50.0, B) / (50.0 / B);
  EXPECT_GE(ratio, 0.9);
  EXPECT_LE(ratio, 1.1);
}

TEST(Pendulum, IntegralAgreesWithEnergyIntegralOracle) {
  for (double alpha : {0.1, 1.0, 5.0}) {
    const double T = period_integral(alpha, 1.0);
    EXPECT_NEAR(T, oracle::pendulum_period(alpha, 1.0), 1e-9 * T) << alpha;
  }
}

TEST(Pendulum, OdeAgreesWithIntegral) {
  for (double alpha : {0.1, 1.0, 5.0}) {
    const double Ti = period_integral(alpha, 1.0);
    const double To = period_ode(alpha, 1.0);
    EXPECT_LE(std::abs(To - Ti), 1e-8 * Ti) << alpha;
  }
}

TEST(Pendulum, OdeConservesEnergyAndStaysBounded) {
  const double alpha = 1.0;
  const double B = 1.0;
  const double T = period_integral(alpha, B);
  const auto res = solve_ode(alpha, B, 10.0 * T, T / 2000.0);
  EXPECT_LE(res.max_energy_drift, 1e-10);
  EXPECT_EQ(res.samples.front().du, alpha);
  const double e0 = 0.5 * res.samples.front().du * res.samples.front().du + 2.0 * B * exp_excess(res.samples.front().u);
  EXPECT_DOUBLE_EQ(e0, 0.5 * alpha * alpha);
  const auto r = amplitude_bounds(alpha, B);
  for (const auto& s : res.samples) {
    EXPECT_LE(s.u, r.u_plus + 1e-9);
    EXPECT_GE(s.u, r.u_minus - 1e-9);
  }
  EXPECT_THROW(solve_ode(alpha, B, 10.0 * T, T / 3.0), AccuracyError);
}

TEST(Pendulum, PeriodCurveIsContinuous) {
  const auto coarse = period_curve(1e-3, 50.0, 40, 1.0);
  const auto fine = period_curve(1e-3, 50.0, 160, 1.0);
  auto max_jump = [](const std::vector<PeriodCurvePoint>& pts) {
    double j = 0.0;
    for (size_t k = 1; k < pts.size(); ++k) j = std::max(j, std::abs(pts[k].T_alpha - pts[k - 1].T_alpha));
    return j;
  };
  EXPECT_LT(max_jump(fine), 0.5 * max_jump(coarse));
  for (size_t k = 1; k < fine.size(); ++k) EXPECT_GT(fine[k].alpha, fine[k - 1].alpha);
}
