#include "oracles.hpp"

#include <landau/periodic_fn.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace landau;

namespace {

constexpr double kOmega = 1.3;

PeriodicFn random_fn(std::mt19937& rng, int order, double scale) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(static_cast<size_t>(order) + 1);
  for (size_t n = 0; n < c.size(); ++n) c[n] = scale * u(rng) / (1.0 + static_cast<double>(n * n));
  return PeriodicFn(kOmega, c);
}

double max_pointwise_gap(const PeriodicFn& f, const std::function<double(double)>& g, int samples) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = f.period() * i / samples;
    worst = std::max(worst, std::abs(oracle::cosine_sum(f.coeffs(), f.omega(), t) - g(t)));
  }
  return worst;
}

}  // namespace

TEST(PeriodicFn, Projections) {
  const PeriodicFn ws = w_star(kOmega);
  EXPECT_EQ(project_Y(ws).coeff(1), 2.0);
  EXPECT_EQ(norm_l1(project_Yprime(ws)), 0.0);

  const PeriodicFn ws2 = ws * ws;
  EXPECT_EQ(norm_l1(project_Y(ws2)), 0.0);

  const PeriodicFn f(kOmega, {1.0, 1.0, 0.0, 1.0});
  EXPECT_EQ(project_Y(f).coeff(1), 1.0);
  EXPECT_EQ(norm_l1(project_Y(f)), 1.0);
  const PeriodicFn g = project_Yprime(f);
  EXPECT_EQ(g.coeff(0), 1.0);
  EXPECT_EQ(g.coeff(1), 0.0);
  EXPECT_EQ(g.coeff(3), 1.0);

  std::mt19937 rng(7);
  for (int k = 0; k < 10; ++k) {
    const PeriodicFn h = random_fn(rng, 12, 1.0);
    const PeriodicFn sum = project_Y(h) + project_Yprime(h);
    for (int n = 0; n <= h.order(); ++n) EXPECT_EQ(sum.coeff(n), h.coeff(n));
  }
}

TEST(PeriodicFn, ProductToSum) {
  const PeriodicFn ws = w_star(kOmega);
  const PeriodicFn sq = ws * ws;
  EXPECT_NEAR(sq.coeff(0), 2.0, 1e-15);
  EXPECT_NEAR(sq.coeff(1), 0.0, 1e-15);
  EXPECT_NEAR(sq.coeff(2), 2.0, 1e-15);

  const PeriodicFn W(kOmega, {-1.0, 0.0, 1.0 / 3.0});
  const PeriodicFn p = ws * W;
  EXPECT_NEAR(p.coeff(0), 0.0, 1e-15);
  EXPECT_NEAR(p.coeff(1), -5.0 / 3.0, 1e-15);
  EXPECT_NEAR(p.coeff(2), 0.0, 1e-15);
  EXPECT_NEAR(p.coeff(3), 1.0 / 3.0, 1e-15);

  const PeriodicFn one = PeriodicFn::constant(kOmega, 1.0);
  EXPECT_EQ((W * one).coeffs().size(), W.coeffs().size());
  for (int n = 0; n <= W.order(); ++n) EXPECT_EQ((W * one).coeff(n), W.coeff(n));
}

TEST(PeriodicFn, ProductAgreesPointwise) {
  std::mt19937 rng(11);
  for (int k = 0; k < 20; ++k) {
    const PeriodicFn f = random_fn(rng, 1 + k % 9, 2.0);
    const PeriodicFn g = random_fn(rng, 2 + k % 7, 2.0);
    const PeriodicFn fg = multiply(f, g);
    const int samples = 4 * (f.order() + g.order());
    double scale = 0.0;
    const double gap = max_pointwise_gap(fg, [&](double t) {
      const double v = oracle::cosine_sum(f.coeffs(), kOmega, t) * oracle::cosine_sum(g.coeffs(), kOmega, t);
      scale = std::max(scale, std::abs(v));
      return v;
    }, samples);
    EXPECT_LE(gap, 1e-12 * std::max(scale, 1.0));
    const PeriodicFn gf = multiply(g, f);
    for (int n = 0; n <= fg.order(); ++n) EXPECT_NEAR(fg.coeff(n), gf.coeff(n), 1e-15);
  }
}

TEST(PeriodicFn, ProductIsBilinear) {
  std::mt19937 rng(3);
  const PeriodicFn f = random_fn(rng, 6, 1.0);
  const PeriodicFn g = random_fn(rng, 5, 1.0);
  const PeriodicFn h = random_fn(rng, 4, 1.0);
  const PeriodicFn lhs = multiply(f * 2.0 + g, h);
  const PeriodicFn rhs = multiply(f, h) * 2.0 + multiply(g, h);
  for (int n = 0; n <= std::max(lhs.order(), rhs.order()); ++n) EXPECT_NEAR(lhs.coeff(n), rhs.coeff(n), 1e-14);
}

TEST(PeriodicFn, MismatchedFrequency) {
  EXPECT_THROW(multiply(w_star(1.0), w_star(2.0)), std::invalid_argument);
  EXPECT_THROW(PeriodicFn(1.0) + PeriodicFn(1.5), std::invalid_argument);
  EXPECT_THROW(PeriodicFn(0.0), std::invalid_argument);
}

TEST(PeriodicFn, ExpRemainderScalarCases) {
  EXPECT_EQ(norm_l1(exp_remainder(PeriodicFn(kOmega), 1)), 0.0);
  for (double c : {-1.5, -0.3, 1e-9, 0.7, 2.0}) {
    const PeriodicFn r = exp_remainder(PeriodicFn::constant(kOmega, c), 0);
    EXPECT_NEAR(r.coeff(0), std::expm1(c), 1e-14 * std::max(1.0, std::exp(c)));
  }
}

TEST(PeriodicFn, ExpRemainderCubicTail) {
  const PeriodicFn f = w_star(kOmega) * 0.1;
  const PeriodicFn r = exp_remainder(f, 3);
  const double gap = max_pointwise_gap(r, [&](double t) {
    const double x = 0.2 * std::cos(kOmega * t);
    // Taylor tail from the fourth power on, summed directly.
    double term = x * x * x * x / 24.0;
    double s = 0.0;
    for (int i = 5; std::abs(term) > 1e-30; ++i) {
      s += term;
      term *= x / i;
    }
    return s;
  }, 64);
  EXPECT_LE(gap, 1e-12);
}

TEST(PeriodicFn, ExpRemainderReconstructsExponential) {
  std::mt19937 rng(5);
  for (int k = 0; k <= 4; ++k) {
    PeriodicFn f = random_fn(rng, 6, 1.0);
    f *= 2.0 / norm_l1(f);  // ||f||_C <= 2
    PeriodicFn total = exp_remainder(f, k);
    PeriodicFn power = PeriodicFn::constant(kOmega, 1.0);
    double fact = 1.0;
    for (int i = 0; i <= k; ++i) {
      if (i > 0) {
        power = multiply(power, f);
        fact *= i;
      }
      total += power * (1.0 / fact);
    }
    const double gap = max_pointwise_gap(total, [&](double t) {
      return std::exp(oracle::cosine_sum(f.coeffs(), kOmega, t));
    }, 128);
    EXPECT_LE(gap, 1e-12 * std::exp(2.0)) << k;
  }
}

TEST(PeriodicFn, SecondDerivativeAndMean) {
  const double w = kOmega;
  const PeriodicFn d = second_derivative(PeriodicFn::cosine(w, 1));
  EXPECT_NEAR(d.coeff(1), -w * w, 1e-15);
  EXPECT_EQ(norm_l1(second_derivative(PeriodicFn::constant(w, 3.0))), 0.0);
  std::mt19937 rng(9);
  const PeriodicFn f = random_fn(rng, 8, 1.0);
  EXPECT_EQ(second_derivative(f).mean(), 0.0);
  EXPECT_EQ(f.mean(), f.coeff(0));
  // finite-difference check of the second derivative
  const PeriodicFn f2 = second_derivative(f);
  const double h = 1e-4;
  for (double t : {0.1, 0.77, 2.3}) {
    const double fd = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
    EXPECT_NEAR(f2(t), fd, 1e-5);
  }
}

TEST(PeriodicFn, Norms) {
  const PeriodicFn ws = w_star(kOmega);
  EXPECT_NEAR(std::pow(norm_L2(ws), 2), 2.0 * ws.period(), 1e-12);
  EXPECT_NEAR(norm_C(PeriodicFn(kOmega, {1.0, 1.0})), 2.0, 1e-12);
  EXPECT_NEAR(norm_l1(PeriodicFn(kOmega, {1.0, -0.5, 0.25})), 1.75, 1e-15);
  std::mt19937 rng(2);
  const PeriodicFn f = random_fn(rng, 10, 1.0);
  EXPECT_LE(norm_C(f), norm_l1(f) + 1e-15);
  const double quad = oracle::trapezoid([&](double t) {
    const double v = oracle::cosine_sum(f.coeffs(), kOmega, t);
    return v * v;
  }, 0.0, f.period(), 400);
  EXPECT_NEAR(norm_L2(f), std::sqrt(quad), 1e-12);
}

TEST(PeriodicFn, EvaluationMatchesDirectSum) {
  std::mt19937 rng(4);
  const PeriodicFn f = random_fn(rng, 30, 1.0);
  EXPECT_LE(max_pointwise_gap(f, [&](double t) { return f(t); }, 200), 1e-13);
}

TEST(PeriodicFn, TrimDropsNegligibleTail) {
  PeriodicFn f(kOmega, {1.0, 0.5, 1e-17, 1e-18});
  f.trim(1e-15);
  EXPECT_EQ(f.order(), 1);
}

TEST(PeriodicFn, CsvExport) {
  std::ostringstream os;
  write_samples_csv(os, PeriodicFn::constant(kOmega, 2.5), 4, "V");
  const std::string text = os.str();
  EXPECT_EQ(text.substr(0, 4), "t,V\n");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}
