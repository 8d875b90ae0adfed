#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mec/certify.hpp"
#include "mec/errors.hpp"
#include "mec/greedy.hpp"
#include "support/test_support.hpp"

namespace mec {
namespace {

const std::vector<Marginal> kWorked = {{0.6, 0.4}, {0.5, 0.5}};

TEST(BuildSystem, WorkedTrace) {
  const auto r = greedy_coupling(kWorked);
  const auto sys = build_system(r.trace, 2, 2);
  EXPECT_EQ(sys.dense(), (std::vector<std::vector<int>>{
                             {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 0, 1}}));
  ASSERT_EQ(sys.a.size(), 3u);
  EXPECT_NEAR(sys.a[0], 0.0, 1e-15);
  EXPECT_NEAR(sys.a[1], -0.3219280948873622, 1e-12);
  EXPECT_NEAR(sys.a[2], -2.321928094887362, 1e-12);
}

TEST(BuildSystem, SingleStepAndDiagonal) {
  const std::vector<Marginal> point = {{1.0, 0.0}, {1.0, 0.0}};
  const auto one = build_system(greedy_coupling(point).trace, 2, 2);
  EXPECT_EQ(one.dense(), (std::vector<std::vector<int>>{{1, 0, 1, 0}}));
  EXPECT_DOUBLE_EQ(one.a[0], 1.0);

  const std::vector<Marginal> same = {{0.5, 0.5}, {0.5, 0.5}};
  const auto diag = build_system(greedy_coupling(same).trace, 2, 2);
  EXPECT_EQ(diag.dense(),
            (std::vector<std::vector<int>>{{1, 0, 1, 0}, {0, 1, 0, 1}}));
  EXPECT_EQ(diag.a, (std::vector<double>{0.0, 0.0}));
}

TEST(BuildSystem, RejectsZeroMass) {
  GreedyTrace t;
  t.steps.push_back({0, {0, 0}, 0.0, {}});
  EXPECT_THROW(build_system(t, 2, 2), DomainError);
  EXPECT_THROW(build_system(GreedyTrace{}, 2, 2), DomainError);
}

TEST(LastOneProperty, Examples) {
  const auto sys = build_system(greedy_coupling(kWorked).trace, 2, 2);
  EXPECT_TRUE(check_last_one_property(sys));
  EXPECT_FALSE(check_last_one_property(
      CertificateSystem::from_dense({{1, 1}, {1, 1}})));
  EXPECT_TRUE(check_last_one_property(
      CertificateSystem::from_dense({{0, 1, 1}})));
  EXPECT_FALSE(check_last_one_property(
      CertificateSystem::from_dense({{0, 0, 0}})));
}

TEST(LastOneProperty, ImpliesFullRowRank) {
  // Random 0/1 matrices: whenever the property holds, rows are independent.
  std::mt19937_64 rng(4);
  std::bernoulli_distribution coin(0.4);
  int with_property = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t rows = 1 + trial % 6;
    const std::size_t cols = 2 + trial % 7;
    std::vector<std::vector<int>> g(rows, std::vector<int>(cols));
    for (auto& row : g) {
      for (int& x : row) x = coin(rng) ? 1 : 0;
    }
    const auto sys = CertificateSystem::from_dense(g);
    if (check_last_one_property(sys)) {
      ++with_property;
      EXPECT_EQ(numeric_rank(sys), rows);
    }
  }
  EXPECT_GT(with_property, 50);
}

TEST(Certify, HandSolvedWitnessReconstructsMasses) {
  // Free variable u_1(1) = 0 gives u_1 = [0, 2], u_2 = [0, log2(0.1) + 1].
  const double u1[] = {0.0, 2.0};
  const double u2[] = {0.0, std::log2(0.1) + 1.0};
  EXPECT_NEAR(std::exp2(-1 + u1[0] + u2[0]), 0.5, 1e-15);
  EXPECT_NEAR(std::exp2(-1 + u1[1] + u2[1]), 0.4, 1e-15);
  EXPECT_NEAR(std::exp2(-1 + u1[0] + u2[1]), 0.1, 1e-15);

  // The solver may pick a different particular solution; any one must
  // satisfy the same three equations.
  const auto r = greedy_coupling(kWorked);
  const auto cert = certify_local_optimum(r.coupling, r.trace);
  EXPECT_TRUE(cert.certified);
  EXPECT_TRUE(cert.last_one_property);
  EXPECT_LE(cert.residual_norm, 1e-12);
  EXPECT_LE(cert.max_reconstruction_error, 1e-12);
  EXPECT_LE(cert.max_product_form_error, 1e-12);
  EXPECT_NEAR(cert.u[0][0] + cert.u[1][0], 0.0, 1e-12);
  EXPECT_NEAR(cert.u[0][1] + cert.u[1][1], std::log2(0.4) + 1, 1e-12);
  EXPECT_NEAR(cert.u[0][0] + cert.u[1][1], std::log2(0.1) + 1, 1e-12);
}

TEST(Certify, BackSubstitutionGivesTheHandSolution) {
  const auto r = greedy_coupling(kWorked);
  const auto cert =
      certify_local_optimum(r.coupling, r.trace, CertifyMethod::kBackSubstitution);
  // Pivots: row 3 -> u_2(2), row 2 -> u_1(2), row 1 -> u_2(1); u_1(1) free.
  EXPECT_NEAR(cert.u[0][0], 0.0, 1e-15);
  EXPECT_NEAR(cert.u[0][1], 2.0, 1e-12);
  EXPECT_NEAR(cert.u[1][0], 0.0, 1e-15);
  EXPECT_NEAR(cert.u[1][1], std::log2(0.1) + 1, 1e-12);
}

TEST(Certify, DiagonalHasZeroWitness) {
  const std::vector<Marginal> same = {{0.5, 0.5}, {0.5, 0.5}};
  const auto r = greedy_coupling(same);
  const auto cert = certify_local_optimum(r.coupling, r.trace);
  for (const auto& uk : cert.u) {
    for (double x : uk) EXPECT_NEAR(x, 0.0, 1e-14);
  }
  for (const auto& w : cert.witnesses) EXPECT_NEAR(w.reconstructed, 0.5, 1e-15);
}

TEST(Certify, TraceWithoutLastOneFails) {
  // Two steps on the same tuple's coordinates in both axes of a 2x2 grid,
  // ordered so that the first row owns no final 1.
  GreedyTrace t;
  t.steps.push_back({0, {0, 0}, 0.25, {}});
  t.steps.push_back({1, {0, 1}, 0.25, {}});
  t.steps.push_back({2, {1, 0}, 0.25, {}});
  t.steps.push_back({3, {1, 1}, 0.25, {}});
  const auto c = coupling_from_trace(t, {2, 2});
  const auto sys = build_system(t, 2, 2);
  EXPECT_FALSE(check_last_one_property(sys));
  const auto cert = evaluate_certificate(c, t);
  EXPECT_FALSE(cert.certified);
  EXPECT_THROW(certify_local_optimum(c, t), CertificationError);
  EXPECT_THROW(certify_local_optimum(c, t, CertifyMethod::kBackSubstitution),
               CertificationError);
}

TEST(Certify, InconsistentMassesFail) {
  // Four cells of a 2x2 grid form a cycle; masses whose log pattern is not
  // additive cannot be reproduced by any u.
  GreedyTrace t;
  t.steps.push_back({0, {0, 0}, 0.4, {}});
  t.steps.push_back({1, {0, 1}, 0.1, {}});
  t.steps.push_back({2, {1, 0}, 0.1, {}});
  t.steps.push_back({3, {1, 1}, 0.4, {}});
  const auto c = coupling_from_trace(t, {2, 2});
  const auto cert = evaluate_certificate(c, t);
  EXPECT_FALSE(cert.certified);
  EXPECT_GT(cert.residual_norm, 1e-3);
}

TEST(Certify, MismatchedCouplingFails) {
  const auto r = greedy_coupling(kWorked);
  SparseCoupling other({2, 2});
  other.add({0, 0}, 0.5);
  other.add({1, 1}, 0.5);
  EXPECT_FALSE(evaluate_certificate(other, r.trace).certified);
}

class CertifyProperties : public ::testing::TestWithParam<Solver> {};

TEST_P(CertifyProperties, GreedyOutputIsAlwaysCertified) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 2 + trial % 3;
    const std::size_t n = 2 + trial % 5;
    const auto ms = testing::random_instance(rng, m, n);
    const auto r = solve(ms, GetParam());
    const auto lsq = evaluate_certificate(r.coupling, r.trace);
    const auto back = evaluate_certificate(r.coupling, r.trace,
                                           CertifyMethod::kBackSubstitution);
    ASSERT_TRUE(lsq.certified) << lsq.failure_reason;
    ASSERT_TRUE(back.certified) << back.failure_reason;
    EXPECT_LE(lsq.max_reconstruction_error, 1e-8);
    EXPECT_LE(back.max_reconstruction_error, 1e-8);
    // Both particular solutions satisfy G u = a; they need not coincide.
    for (std::size_t i = 0; i < lsq.witnesses.size(); ++i) {
      EXPECT_NEAR(lsq.witnesses[i].reconstructed,
                  back.witnesses[i].reconstructed, 1e-9);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(BothSolvers, CertifyProperties,
                         ::testing::Values(Solver::kGreedy, Solver::kTwoPhase));

}  // namespace
}  // namespace mec
