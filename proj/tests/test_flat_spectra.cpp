#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>

using namespace formspec;

namespace {

constexpr double kFourPi2 = kTwoPi * kTwoPi;

std::vector<FlatManifold> catalog_entries() {
  std::vector<FlatManifold> out;
  for (const auto& name : catalog::names()) out.push_back(*catalog::lookup(name));
  return out;
}

}  // namespace

TEST(Lattice, RejectsSingularBasis) {
  Matrix b(2, 2);
  b << 1, 2, 2, 4;
  EXPECT_THROW(Lattice{b}, InputError);
}

TEST(Enumeration, UnitLineZeroCutoff) {
  const auto v = enumerate_dual_vectors(Lattice::unit(1), 0.0);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].coords[0], 0);
}

TEST(Enumeration, UnitLineIncludesBoundaryShell) {
  const auto v = enumerate_dual_vectors(Lattice::unit(1), kFourPi2);
  ASSERT_EQ(v.size(), 3u);
  std::vector<std::int64_t> coords;
  for (const auto& d : v) coords.push_back(d.coords[0]);
  std::sort(coords.begin(), coords.end());
  EXPECT_EQ(coords, (std::vector<std::int64_t>{-1, 0, 1}));
}

TEST(Enumeration, UnitPlaneNineVectors) {
  const auto v = enumerate_dual_vectors(Lattice::unit(2), 2.0 * kFourPi2);
  ASSERT_EQ(v.size(), 9u);
  EXPECT_EQ(std::count_if(v.begin(), v.end(), [](const DualVector& d) { return std::abs(d.norm2 - 1.0) < 1e-12; }), 4);
  EXPECT_EQ(std::count_if(v.begin(), v.end(), [](const DualVector& d) { return std::abs(d.norm2 - 2.0) < 1e-12; }), 4);
}

TEST(Enumeration, AgreesWithBruteForceOnRandomLattices) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  std::uniform_real_distribution<double> cut(0.0, 100.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 2;
    Matrix b = Matrix::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) += u(rng);
    const Lattice lattice(b);
    const double lambda_max = cut(rng);
    std::set<std::vector<std::int64_t>> got;
    for (const auto& d : enumerate_dual_vectors(lattice, lambda_max)) {
      std::vector<std::int64_t> key(d.coords.data(), d.coords.data() + n);
      EXPECT_TRUE(got.insert(key).second) << "duplicate vector";
    }
    const auto brute = oracle::brute_force_dual(lattice, lambda_max);
    const std::set<std::vector<std::int64_t>> expected(brute.begin(), brute.end());
    EXPECT_EQ(got, expected) << "trial " << trial;
  }
}

TEST(Enumeration, BudgetExhaustionIsResourceError) {
  EXPECT_THROW(enumerate_dual_vectors(Lattice::unit(4), 1e6 * kFourPi2, {1000}), ResourceError);
}

TEST(InvariantMultiplicity, TorusOriginIsBinomial) {
  const Orbit origin{IntVector::Zero(4)};
  const FlatManifold t4 = catalog::torus(4);
  for (int l = 0; l <= 4; ++l) EXPECT_EQ(invariant_multiplicity(t4, l, origin), binomial(4, l));
}

TEST(InvariantMultiplicity, HantzscheWendtHasNoInvariantOneForms) {
  EXPECT_EQ(invariant_multiplicity(catalog::hantzsche_wendt(), 1, Orbit{IntVector::Zero(3)}), 0);
}

TEST(InvariantMultiplicity, MatchesExplicitRepresentationAveraging) {
  for (const auto& k : catalog_entries()) {
    const int n = k.dimension();
    const auto shell = enumerate_dual_vectors(k.lattice(), 3.0 * kFourPi2);
    const auto orbits = holonomy_orbits(k, shell);
    for (const auto& orbit : orbits) {
      for (int l = 0; l <= n; ++l) {
        const int expected = oracle::explicit_invariant_dimension(k, l, orbit.front());
        EXPECT_EQ(invariant_multiplicity(k, l, orbit), expected) << "degree " << l;
      }
    }
  }
}

TEST(FormSpectrum, UnitCircleAgainstFiniteDifferences) {
  const auto table = form_spectrum(catalog::torus(1), 0, 16.0 * std::numbers::pi * std::numbers::pi);
  ASSERT_EQ(table.rows.size(), 3u);
  const auto fd = oracle::circle_fd_eigenvalues(4096);
  EXPECT_EQ(table.rows[0], (SpectrumRow{0.0, 1}));
  EXPECT_NEAR(table.rows[1].eigenvalue, fd[1], 1e-3 * fd[1]);
  EXPECT_NEAR(fd[1], fd[2], 1e-9 * fd[1]);
  EXPECT_EQ(table.rows[1].multiplicity, 2);
  EXPECT_NEAR(table.rows[2].eigenvalue, fd[3], 1e-3 * fd[3]);
  EXPECT_EQ(table.rows[2].multiplicity, 2);
}

TEST(FormSpectrum, TorusOneFormsAtZeroCutoff) {
  const auto table = form_spectrum(catalog::torus(3), 1, 0.0);
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_EQ(table.rows[0], (SpectrumRow{0.0, 3}));
}

TEST(FormSpectrum, HantzscheWendtTwoFormsHaveNoZeroRow) {
  EXPECT_TRUE(form_spectrum(catalog::hantzsche_wendt(), 2, 0.0).rows.empty());
}

TEST(FormSpectrum, RowsStrictlyIncreasingAndZeroRowIsBetti) {
  for (const auto& k : catalog_entries()) {
    const auto betti = betti_numbers(k);
    const auto tables = form_spectra(k, 4.0 * kFourPi2);
    for (const auto& t : tables) {
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        EXPECT_GE(t.rows[i].multiplicity, 1);
        if (i > 0) EXPECT_GT(t.rows[i].eigenvalue, t.rows[i - 1].eigenvalue);
      }
      EXPECT_EQ(t.zero_multiplicity(), betti[t.degree]);
    }
  }
}

TEST(FormSpectrum, PoincareDualityForOrientableEntries) {
  for (const auto& k : catalog_entries()) {
    if (!k.orientable()) continue;
    const auto tables = form_spectra(k, 5.0 * kFourPi2);
    const int n = k.dimension();
    for (int l = 0; l <= n; ++l) EXPECT_EQ(tables[l].rows, tables[n - l].rows);
  }
}

TEST(FormSpectrum, ScalingDividesEigenvalues) {
  const FlatManifold hw = catalog::hantzsche_wendt();
  const double s = 1.7;
  const auto base = form_spectra(hw, 3.0 * kFourPi2);
  const auto scaled = form_spectra(hw.rescaled(s), 3.0 * kFourPi2 / (s * s));
  for (std::size_t l = 0; l < base.size(); ++l) {
    ASSERT_EQ(base[l].rows.size(), scaled[l].rows.size());
    for (std::size_t i = 0; i < base[l].rows.size(); ++i) {
      EXPECT_NEAR(scaled[l].rows[i].eigenvalue, base[l].rows[i].eigenvalue / (s * s), 1e-12 * base[l].rows[i].eigenvalue);
      EXPECT_EQ(scaled[l].rows[i].multiplicity, base[l].rows[i].multiplicity);
    }
  }
}

TEST(FormSpectrum, TotalMultiplicityMatchesTorusCountPerShell) {
  // Sum over degrees of multiplicities on the torus T^n is 2^n per dual vector.
  const auto tables = form_spectra(catalog::torus(2), 2.0 * kFourPi2);
  std::int64_t total = 0;
  for (const auto& t : tables)
    for (const auto& r : t.rows) total += r.multiplicity;
  EXPECT_EQ(total, 9 * 4);
}

TEST(Betti, HantzscheWendt) {
  EXPECT_EQ(betti_numbers(catalog::hantzsche_wendt()), (std::vector<std::int64_t>{1, 0, 0, 1}));
}

TEST(Betti, EulerCharacteristicVanishes) {
  for (const auto& k : catalog_entries()) {
    const auto b = betti_numbers(k);
    std::int64_t chi = 0;
    for (std::size_t l = 0; l < b.size(); ++l) chi += (l % 2 == 0 ? 1 : -1) * b[l];
    EXPECT_EQ(chi, 0);
  }
}

TEST(Betti, KunnethOfTorusProductIsSixTorus) {
  const FlatManifold t3 = catalog::torus(3);
  EXPECT_EQ(betti_numbers(product(t3, t3)), betti_numbers(catalog::torus(6)));
}

TEST(Betti, KunnethForHantzscheWendtCube) {
  const auto b1 = betti_numbers(catalog::hantzsche_wendt());
  const auto b3 = betti_numbers(power(catalog::hantzsche_wendt(), 3));
  ASSERT_EQ(b3.size(), 10u);
  for (int l = 0; l <= 9; ++l) {
    std::int64_t expected = 0;
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; j <= 3; ++j)
        if (l - i - j >= 0 && l - i - j <= 3) expected += b1[i] * b1[j] * b1[l - i - j];
    EXPECT_EQ(b3[l], expected) << "degree " << l;
  }
}

TEST(LambdaO, ZeroForFunctionsAndHarmonicDegrees) {
  for (const auto& k : catalog_entries()) EXPECT_EQ(lambda_o(k, 0), 0.0);
  EXPECT_EQ(lambda_o(catalog::torus(3), 2), 0.0);
}

TEST(LambdaO, HantzscheWendtOneFormsPositiveAndDual) {
  const FlatManifold hw = catalog::hantzsche_wendt();
  const double l1 = lambda_o(hw, 1);
  EXPECT_GT(l1, 0.0);
  EXPECT_EQ(l1, lambda_o(hw, 2));
  EXPECT_NEAR(l1, kFourPi2, 1e-9 * kFourPi2);
  const auto all = lambda_o_all(hw);
  EXPECT_EQ(all[1], l1);
  EXPECT_EQ(all[2], l1);
}

TEST(LambdaO, HantzscheWendtFunctionsSkipFirstShell) {
  // Only the sign-flipped orbits {+-e_i} reach the first shell; none of them
  // carries an invariant function.
  const auto t = form_spectrum(catalog::hantzsche_wendt(), 0, 1.5 * kFourPi2);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].eigenvalue, 0.0);
}

TEST(FlatManifold, RejectsTorsion) {
  // A half turn without translation fixes the origin.
  IntMatrix r = IntMatrix::Identity(3, 3);
  r(1, 1) = -1;
  r(2, 2) = -1;
  EXPECT_THROW(FlatManifold::generated_by(Lattice::unit(3), {{r, Vector::Zero(3)}}), InputError);
}

TEST(FlatManifold, RejectsNonOrthogonalRotation) {
  IntMatrix r(2, 2);
  r << 1, 1, 0, 1;
  Vector t(2);
  t << 0.5, 0.0;
  EXPECT_THROW(FlatManifold::generated_by(Lattice::unit(2), {{r, t}}), InputError);
}

TEST(FlatManifold, RejectsMissingIdentityAndOpenSets) {
  IntMatrix r = IntMatrix::Identity(2, 2);
  r(1, 1) = -1;
  Vector t(2);
  t << 0.5, 0.0;
  EXPECT_THROW(FlatManifold(Lattice::unit(2), {{r, t}}), InputError);
  IntMatrix quarter = IntMatrix::Zero(2, 2);
  quarter(0, 1) = -1;
  quarter(1, 0) = 1;
  EXPECT_THROW(FlatManifold(Lattice::unit(2), {identity_element(2), {quarter, t}}), InputError);
  EXPECT_NO_THROW(FlatManifold(Lattice::unit(2), {identity_element(2), {r, t}}));
}

TEST(FlatManifold, GroupOrderBound) {
  const FlatManifold hw = catalog::hantzsche_wendt();
  EXPECT_EQ(hw.group_order(), 4u);
  std::vector<HolonomyElement> gens(hw.holonomy().begin() + 1, hw.holonomy().end());
  EXPECT_THROW(FlatManifold::generated_by(Lattice::unit(3), gens, 1.0, {2}), InputError);
}

TEST(FlatManifold, CatalogEntriesAreValid) {
  for (const auto& name : catalog::names()) EXPECT_TRUE(catalog::lookup(name).has_value()) << name;
  EXPECT_FALSE(catalog::lookup("no-such-manifold").has_value());
  EXPECT_TRUE(catalog::hantzsche_wendt().orientable());
  EXPECT_FALSE(catalog::klein_bottle().orientable());
}
