#include "oracles.hpp"

#include <landau/cmatrix.hpp>
#include <landau/family_solver.hpp>
#include <landau/hermite.hpp>
#include <landau/landau_rep.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace landau;

namespace {

constexpr double kB = 1.3;
constexpr double kOmega = 0.9;

ChannelState random_state(std::mt19937& rng, int N, int P, int max_level) {
  std::normal_distribution<double> g;
  ChannelState s = ChannelState::zeros(kB, kOmega, 0.2, N, P);
  for (int n = 0; n <= max_level; ++n)
    for (int p = -P; p <= P; ++p) s.at(n, p) = cplx(g(rng), g(rng));
  return s;
}

PotentialChain family_chain(int m, double eps) {
  const auto b = make_bundle(m, 1.0);
  const auto sol = iterate_family(eps, b);
  return build_chain(sol.v, sol.B_eff);
}

cplx ipow(int k) {
  const cplx i(0.0, 1.0);
  cplx r = 1.0;
  for (int s = 0; s < ((k % 4) + 4) % 4; ++s) r *= i;
  return r;
}

}  // namespace

TEST(Hermite, FunctionsMatchOracle) {
  for (double x : {-3.0, -0.4, 0.0, 1.1, 5.0})
    for (int n : {0, 1, 2, 7, 20, 45}) EXPECT_NEAR(hermite_function(n, x), oracle::hermite_fn(n, x), 1e-12) << n << ' ' << x;
}

TEST(Hermite, OverlapsMatchQuadrature) {
  for (double d : {0.5, 1.3, -2.0}) {
    const Eigen::MatrixXd M = displaced_overlap(d, 8);
    for (int r = 0; r <= 8; ++r)
      for (int c = 0; c <= 8; ++c) EXPECT_NEAR(M(r, c), oracle::overlap(r, c, d), 1e-11) << d << ' ' << r << ' ' << c;
  }
}

TEST(Hermite, OverlapBasics) {
  EXPECT_TRUE(displaced_overlap(0.0, 10).isIdentity(0.0));
  EXPECT_NEAR(std::abs(displaced_overlap(1.0, 5)(0, 0)), std::exp(-0.25), 1e-12);
  const Eigen::MatrixXd Mp = displaced_overlap(1.7, 12);
  const Eigen::MatrixXd Mm = displaced_overlap(-1.7, 12);
  EXPECT_LE((Mp.transpose() - Mm).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Hermite, LowColumnsAreUnitary) {
  for (double d : {0.5, 1.0, 2.0, 3.0}) {
    const Eigen::MatrixXd M = displaced_overlap(d, 60);
    for (int c = 0; c <= 20; ++c) EXPECT_GE(M.col(c).norm(), 1.0 - 1e-10) << d << ' ' << c;
  }
}

TEST(Ladder, NormIdentities) {
  for (int n = 0; n < 10; ++n) {
    const auto s = ChannelState::basis(kB, kOmega, 0.0, 12, 2, n, 1, cplx(0.3, -0.4));
    EXPECT_NEAR(ladder_apply(s, Ladder::plus).norm(), std::sqrt(2.0 * kB * (n + 1)) * s.norm(), 1e-12);
    EXPECT_NEAR(ladder_apply(s, Ladder::minus).norm(), std::sqrt(2.0 * kB * n) * s.norm(), 1e-12);
    EXPECT_NEAR(ladder_apply(s, Ladder::minus_inverse).norm(), s.norm() / std::sqrt(2.0 * kB * (n + 1)), 1e-12);
  }
  const auto top = ChannelState::basis(kB, kOmega, 0.0, 5, 0, 5, 0);
  const auto pushed = ladder_apply(top, Ladder::plus);
  EXPECT_EQ(pushed.norm(), 0.0);
  EXPECT_NEAR(pushed.dropped_norm2, 2.0 * kB * 6, 1e-12);
}

TEST(Ladder, InverseUndoesLowering) {
  std::mt19937 rng(1);
  const auto s = random_state(rng, 15, 3, 14);
  const auto back = ladder_apply(ladder_apply(s, Ladder::minus), Ladder::minus_inverse);
  const auto expected = s - project_level(s, 0);
  EXPECT_LE((back - expected).norm(), 1e-12 * s.norm());
  EXPECT_EQ(ladder_apply(project_level(s, 0), Ladder::minus).norm(), 0.0);
}

TEST(Ladder, FactorizesTheHamiltonian) {
  for (int n = 0; n < 8; ++n) {
    const auto s = ChannelState::basis(kB, kOmega, 0.0, 10, 1, n, 0);
    const auto zz = ladder_apply(ladder_apply(s, Ladder::minus), Ladder::plus);
    EXPECT_LE((zz - cplx(2.0 * kB * n) * s).norm(), 1e-12);
    const auto h = landau_apply(s);
    EXPECT_LE((h - zz - cplx(kB) * s).norm(), 1e-12);
  }
}

// Z+ = -i d/dx1 - i(-i d/dx2 - B x1) applied to i^n h_n(sqrt(B)(x1 - k/B)) e^{i k x2}
// on a grid, compared with the level-shifted basis function.
TEST(Ladder, PhasesMatchDifferentialOperators) {
  const double k = 0.6;
  const double h = 1e-4;
  for (int n = 0; n < 6; ++n) {
    auto f = [&](int level, double x1) {
      return ipow(level) * oracle::hermite_fn(level, std::sqrt(kB) * (x1 - k / kB)) * std::pow(kB, 0.25);
    };
    for (double x1 : {-1.0, 0.2, 0.9, 2.0}) {
      const cplx df = (f(n, x1 + h) - f(n, x1 - h)) / (2.0 * h);
      const cplx pi2 = (k - kB * x1) * f(n, x1);
      const cplx i(0.0, 1.0);
      const cplx plus = -i * df - i * pi2;
      const cplx minus = -i * df + i * pi2;
      EXPECT_NEAR(std::abs(plus - std::sqrt(2.0 * kB * (n + 1)) * f(n + 1, x1)), 0.0, 1e-6);
      const cplx lowered = n > 0 ? std::sqrt(2.0 * kB * n) * f(n - 1, x1) : cplx{};
      EXPECT_NEAR(std::abs(minus - lowered), 0.0, 1e-6);
    }
  }
}

TEST(Multiply, ConstantIsScalar) {
  std::mt19937 rng(2);
  const auto s = random_state(rng, 10, 2, 10);
  const auto r = multiply_state(s, PeriodicFn::constant(kOmega, 2.5));
  EXPECT_LE((r - cplx(2.5) * s).norm(), 1e-14 * s.norm());
}

TEST(Multiply, MatrixElementsMatchQuadrature) {
  const double d = kOmega / std::sqrt(kB);
  for (int n = 0; n < 5; ++n) {
    const auto s = ChannelState::basis(kB, kOmega, 0.0, 30, 2, n, 0);
    const auto r = multiply_state(s, FourierModes::single(kOmega, 1, 1.0));
    for (int np = 0; np < 5; ++np) {
      const cplx expected = ipow(n - np) * oracle::overlap(np, n, d);
      EXPECT_NEAR(std::abs(r.at(np, 1) - expected), 0.0, 1e-11) << n << ' ' << np;
    }
    EXPECT_EQ(r.amp.col(0).norm() + r.amp.col(1).norm() + r.amp.col(2).norm() + r.amp.col(4).norm(), 0.0);
  }
}

TEST(Multiply, UnimodularModePreservesNorm) {
  std::mt19937 rng(3);
  const auto s = random_state(rng, 60, 4, 10);
  const auto shifted = multiply_state(s, FourierModes::single(kOmega, 1, 1.0));
  const double kept = shifted.norm() * shifted.norm() + shifted.dropped_norm2;
  EXPECT_NEAR(kept, s.norm() * s.norm(), 1e-10 * s.norm() * s.norm());
}

TEST(Multiply, CosineOnLowestLevel) {
  const auto s = ChannelState::basis(kB, kOmega, 0.0, 40, 2, 0, 0);
  const auto r = multiply_state(s, PeriodicFn::cosine(kOmega, 1));
  const double d = kOmega / std::sqrt(kB);
  double col_norm2 = 0.0;
  for (int n = 0; n <= 40; ++n) col_norm2 += std::pow(oracle::overlap(n, 0, d), 2);
  EXPECT_NEAR(r.amp.col(3).squaredNorm(), 0.25 * col_norm2, 1e-10);
  EXPECT_NEAR(r.amp.col(1).squaredNorm(), 0.25 * col_norm2, 1e-10);
  EXPECT_LE(r.norm(), 1.0 + 1e-12);
}

TEST(Multiply, IsSelfAdjointForRealEvenFunctions) {
  std::mt19937 rng(4);
  const PeriodicFn w(kOmega, {0.3, -1.0, 0.5, 0.25});
  // keep both states away from the window edges so nothing is dropped
  ChannelState x = random_state(rng, 40, 6, 8);
  ChannelState y = random_state(rng, 40, 6, 8);
  for (int p : {-6, -5, -4, 4, 5, 6}) {
    x.amp.col(p + 6).setZero();
    y.amp.col(p + 6).setZero();
  }
  const cplx lhs = inner(multiply_state(x, w), y);
  const cplx rhs = inner(x, multiply_state(y, w));
  EXPECT_LE(std::abs(lhs - rhs), 1e-12 * x.norm() * y.norm());
}

TEST(Multiply, RejectsMismatchedFrequency) {
  const auto s = ChannelState::basis(kB, kOmega, 0.0, 4, 1, 0, 0);
  EXPECT_THROW(multiply_state(s, PeriodicFn::cosine(2.0 * kOmega, 1)), std::invalid_argument);
}

TEST(ChainOperators, ConstantChainOnLowestLevel) {
  const int m = 2;
  std::vector<PeriodicFn> u(m, PeriodicFn(kOmega));
  const auto chain = build_chain(u, kB);
  const auto psi = ChannelState::basis(kB, kOmega, 0.0, 10, 1, 0, 0);
  const auto lhs = b_chain_apply(0, chain, psi);
  const auto rhs = cplx(-2.0 * kB * m) * ladder_apply(psi, Ladder::minus_inverse);
  EXPECT_LE((lhs - rhs).norm(), 1e-13);
}

namespace {

double lemma_gap(const PotentialChain& chain, int N) {
  const auto psi = ChannelState::basis(chain.B, chain.omega(), 0.0, N, 10, 0, 0);
  double worst = 0.0;
  for (int j = 0; j < chain.m; ++j) {
    const auto lhs = ladder_apply(b_chain_apply(j, chain, psi), Ladder::minus);
    worst = std::max(worst, (lhs - multiply_state(psi, chain.W[j])).norm());
  }
  return worst;
}

double recursion_gap(const PotentialChain& chain, int N) {
  std::mt19937 rng(5);
  std::normal_distribution<double> g;
  ChannelState s = ChannelState::zeros(chain.B, chain.omega(), 0.0, N, 10);
  for (int n = 0; n <= 3; ++n)
    for (int p = -2; p <= 2; ++p) s.at(n, p) = cplx(g(rng), g(rng));
  double worst = 0.0;
  for (int j = 1; j <= chain.m; ++j) {
    const auto a = b_chain_apply(j, chain, s);
    worst = std::max(worst, (a - b_chain_apply_recursive(j, chain, s)).norm() / a.norm());
  }
  return worst;
}

}  // namespace

// The only error source is the level cutoff: W mixes levels over a range set
// by the displacement omega / sqrt(B), which grows with m.
TEST(ChainOperators, LoweringGivesChainElement) {
  EXPECT_LE(lemma_gap(family_chain(1, 0.1), 40), 1e-6);
  const auto chain = family_chain(2, 0.05);
  const double coarse = lemma_gap(chain, 40);
  const double fine = lemma_gap(chain, 60);
  EXPECT_LT(fine, 0.1 * coarse);
  EXPECT_LE(fine, 1e-6);
}

TEST(ChainOperators, RecursionAgreesWithClosedForm) {
  EXPECT_LE(recursion_gap(family_chain(1, 0.1), 80), 1e-8);
  const auto chain = family_chain(2, 0.05);
  EXPECT_LE(recursion_gap(chain, 120), 1e-8);
  EXPECT_LT(recursion_gap(chain, 80), recursion_gap(chain, 40));
}

TEST(ChainOperators, InverseElement) {
  const auto chain = family_chain(2, 0.05);
  for (int j = 0; j < chain.m; ++j) {
    const PeriodicFn prod = multiply(chain.W[j], inverse_chain_element(chain, j));
    EXPECT_NEAR(prod.coeff(0), 1.0, 1e-12);
    for (int n = 1; n <= prod.order(); ++n) EXPECT_NEAR(prod.coeff(n), 0.0, 1e-12);
  }
}
