#include "oracles.hpp"

#include <landau/cmatrix.hpp>
#include <landau/family_solver.hpp>
#include <landau/potential_chain.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace landau;

namespace {

PotentialChain chain_for(int m, double eps) {
  const auto b = make_bundle(m, 1.0);
  const auto sol = iterate_family(eps, b);
  return build_chain(sol.v, sol.B_eff);
}

}  // namespace

TEST(PotentialChain, ZeroFunctionsGiveConstantChain) {
  const double w = 1.1;
  std::vector<PeriodicFn> u(3, PeriodicFn(w));
  const auto chain = build_chain(u, 0.7);
  EXPECT_TRUE(chain.is_constant());
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(chain.W[j].coeff(0), -2.0 * 0.7 * (3 - j), 1e-15);
    EXPECT_EQ(chain.W[j].order(), 0);
  }
  EXPECT_NEAR(norm_l1(chain.V), 0.0, 1e-15);
}

TEST(PotentialChain, RejectsBadInput) {
  std::vector<PeriodicFn> empty;
  EXPECT_THROW(build_chain(empty, 1.0), std::invalid_argument);
  std::vector<PeriodicFn> u{PeriodicFn(1.0)};
  EXPECT_THROW(build_chain(u, 0.0), std::invalid_argument);
  std::vector<PeriodicFn> mixed{PeriodicFn(1.0), PeriodicFn(2.0)};
  EXPECT_THROW(build_chain(mixed, 1.0), std::invalid_argument);
}

TEST(PotentialChain, ElementsMatchPointwiseExponentials) {
  const auto chain = chain_for(2, 0.05);
  for (double t : {0.0, 0.4, 1.7, 3.0}) {
    for (int j = 1; j <= 2; ++j) {
      const double u = oracle::cosine_sum(chain.u[j - 1].coeffs(), chain.omega(), t);
      const double expected = -2.0 * chain.B * (2 - j + 1) * std::exp(u);
      EXPECT_NEAR(oracle::cosine_sum(chain.W[j - 1].coeffs(), chain.omega(), t), expected, 1e-13);
    }
    EXPECT_NEAR(chain.V(t), chain.W[0](t) + 4.0 * chain.B, 1e-13);
  }
}

TEST(PotentialChain, ConditionsHoldForSolvedFamilies) {
  for (auto [m, eps] : {std::pair{1, 0.1}, {2, 0.05}, {3, 0.05}}) {
    const auto chain = chain_for(m, eps);
    const auto r = verify_conditions(chain, 1e-8, 1024);
    EXPECT_TRUE(r.pass) << m;
    for (double rb : r.res_b) EXPECT_LE(rb, 1e-8);
    EXPECT_EQ(static_cast<int>(r.res_b.size()), m - 1);
    EXPECT_LE(r.res_c, 1e-8);
    for (double e : r.mean_errors) EXPECT_LE(e, 1e-9);
    EXPECT_LE(std::abs(r.V_mean), 1e-10);
    EXPECT_TRUE(r.all_negative);
    for (double margin : r.margins) EXPECT_GT(margin, 0.0);
    EXPECT_FALSE(chain.is_constant());
  }
}

TEST(PotentialChain, TelescopedChainEndsAtZero) {
  const auto chain = chain_for(3, 0.05);
  const auto T = telescoped_chain(chain);
  ASSERT_EQ(T.size(), 4u);
  EXPECT_LE(norm_l1(T[3]), 1e-9);
  for (int j = 0; j < 3; ++j) EXPECT_LE(norm_l1(T[j] - chain.W[j]), 1e-9) << j;
}

TEST(PotentialChain, ReducedSystemFormsAgree) {
  for (auto [m, eps] : {std::pair{1, 0.1}, {2, 0.05}, {3, 0.05}}) {
    const auto b = make_bundle(m, 1.0);
    const auto sol = iterate_family(eps, b);
    const auto n = cross_check_systems(sol.v, sol.B_eff);
    EXPECT_LE(n.weighted, 1e-10) << m;
    EXPECT_LE(n.cumulative, 1e-10) << m;
    EXPECT_LE(n.coupled, 1e-10) << m;
  }
}

TEST(PotentialChain, DetectsBrokenChain) {
  auto chain = chain_for(2, 0.05);
  chain.u[1] += PeriodicFn::cosine(chain.omega(), 2, 1e-3);
  const auto rebuilt = build_chain(chain.u, chain.B);
  const auto r = verify_conditions(rebuilt, 1e-8);
  EXPECT_FALSE(r.pass);
  const auto n = cross_check_systems(chain.u, chain.B);
  EXPECT_GT(n.coupled, 1e-6);
}
