#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace formspec;

TEST(SparseOperator, SumsDuplicatesAndStoresCsr) {
  const auto h = SparseOperator::from_triplets(2, {{0, 0, 1.0}, {0, 0, 2.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 3.0}});
  EXPECT_EQ(h.entry(0, 0), 3.0);
  EXPECT_EQ(h.entry(0, 1), -1.0);
  EXPECT_EQ(h.nonzeros(), 4u);
  EXPECT_TRUE(h.is_tridiagonal());
}

TEST(SparseOperator, RejectsAsymmetry) {
  EXPECT_THROW(SparseOperator::from_triplets(2, {{0, 1, 1.0}, {1, 0, 1.0 + 1e-15}, {0, 0, 5.0}, {1, 1, 5.0}}), InputError);
}

TEST(SparseOperator, RejectsNegativeSpectrum) {
  // [[1, 2], [2, 1]] has eigenvalue -1; Gershgorin fails and the Lanczos check catches it.
  EXPECT_THROW(SparseOperator::from_triplets(2, {{0, 0, 1.0}, {1, 1, 1.0}, {0, 1, 2.0}, {1, 0, 2.0}}), InputError);
}

TEST(SparseOperator, AcceptsSemidefiniteWithoutDiagonalDominance) {
  // Rank-one u u^T with u = (1, 2): eigenvalues 0 and 5.
  const auto h = SparseOperator::from_triplets(2, {{0, 0, 1.0}, {1, 1, 4.0}, {0, 1, 2.0}, {1, 0, 2.0}});
  EXPECT_EQ(h.nonneg_shift(), 0.0);
}

TEST(SparseOperator, RejectsBadIndicesAndValues) {
  EXPECT_THROW(SparseOperator::from_triplets(2, {{0, 2, 1.0}}), InputError);
  EXPECT_THROW(SparseOperator::from_triplets(2, {{0, 0, std::nan("")}}), InputError);
  EXPECT_THROW(SparseOperator::from_triplets(0, {}), InputError);
}

TEST(SparseOperator, ApplyMatchesDense) {
  std::mt19937_64 rng(3);
  const auto h = oracle::random_sparse_spd(rng, 60, 0.1);
  const auto x = oracle::random_vector(rng, 60, true);
  const auto y = h * x;
  Eigen::VectorXcd xv(60);
  for (int i = 0; i < 60; ++i) xv[i] = x[i];
  const Eigen::VectorXcd yv = h.to_dense().cast<Complex>() * xv;
  for (int i = 0; i < 60; ++i) EXPECT_LT(std::abs(y[i] - yv[i]), 1e-12);
}

TEST(SparseOperator, SmallestEigenvalueAllPaths) {
  std::mt19937_64 rng(5);
  const auto h = oracle::random_sparse_spd(rng, 80, 0.08);
  EXPECT_NEAR(smallest_eigenvalue(h), oracle::dense_eigenvalues(h)(0), 1e-9);
  const DiscreteDomain d = DiscreteDomain::interval(0.0, 10.0, 0.01);
  EXPECT_NEAR(smallest_eigenvalue(d.laplacian()), oracle::dirichlet_interval_bottom(10.0, 0.01), 1e-10);
  std::vector<double> diag(3000);
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = 1.0 + static_cast<double>(i % 97) * 0.01 + 0.0;
  diag[1234] = 0.5;
  EXPECT_NEAR(smallest_eigenvalue(oracle::diagonal(diag)), 0.5, 1e-9);
}

TEST(SparseOperator, SturmCountOnKnownSpectrum) {
  const auto h = oracle::diagonal({0.5, 1.5, 2.5});
  EXPECT_EQ(sturm_count(h, 0.0), 0u);
  EXPECT_EQ(sturm_count(h, 1.0), 1u);
  EXPECT_EQ(sturm_count(h, 3.0), 3u);
}

TEST(ShiftedSolve, ConvergesToDenseSolution) {
  std::mt19937_64 rng(9);
  const auto h = oracle::random_sparse_spd(rng, 120, 0.05);
  const auto b = oracle::random_vector(rng, 120, true);
  ComplexVector x(120);
  const auto rep = solve_shifted(h, 1.0, b, x);
  EXPECT_TRUE(rep.converged);
  EXPECT_LE(rep.relative_residual, 1e-9);
  Eigen::VectorXcd bv(120);
  for (int i = 0; i < 120; ++i) bv[i] = b[i];
  const Eigen::MatrixXcd a = (h.to_dense() + Eigen::MatrixXd::Identity(120, 120)).cast<Complex>();
  const Eigen::VectorXcd xs = a.ldlt().solve(bv);
  for (int i = 0; i < 120; ++i) EXPECT_LT(std::abs(x[i] - xs[i]), 1e-8);
}

TEST(ShiftedSolve, InnerProductIsConjugateLinearInFirstSlot) {
  const ComplexVector a{{0.0, 1.0}};
  const ComplexVector b{{1.0, 0.0}};
  EXPECT_EQ(inner(a, b), Complex(0.0, -1.0));
}
