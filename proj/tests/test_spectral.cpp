// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qiso/models.hpp"
#include "qiso/spectral_triple.hpp"

using namespace qiso;

namespace {

double distance(const AlgebraElement& a, const AlgebraElement& b) { return (a - b).max_abs(); }

double oneform_distance(const OneForm& a, const OneForm& b) {
  OneForm d = a - b;
  return std::sqrt(std::abs(oneform_inner(d, d)));
}

AlgebraElement mono(const SpectralModel& m, Monomial x) { return AlgebraElement::monomial(m.spec, m.truncation, x); }

// Largest |L(e) - lambda e| over monomials inside the safe box.
double eigen_residual(const SpectralModel& model, const Laplacian& L) {
  double worst = 0.0;
  MonomialBasis inner(model.spec, safe_radius(model.truncation, 0));
  for (const auto& m : inner.monomials()) {
    auto e = mono(model, m);
    worst = std::max(worst, distance(L(e), oracle::flat_eigenvalue(m) * e));
  }
  return worst;
}

}  // namespace

TEST(Laplacian, CircleEigenvaluesAreMinusSquares) {
  auto model = models::circle(16);
  auto b = build_laplacian(model);
  EXPECT_LT(eigen_residual(model, b.L), 1e-10);
  ASSERT_GE(b.data.eigenvalues.size(), 5);
  std::vector<double> expect{0, -1, -1, -4, -4};
  for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_NEAR(b.data.eigenvalues[static_cast<Eigen::Index>(i)], expect[i], 1e-12);
  EXPECT_EQ(b.data.spaces.front().multiplicity(), 1);
}

TEST(Laplacian, TorusEigenvaluesAreMinusSquaredLengths) {
  auto model = models::torus(8);
  auto b = build_laplacian(model);
  EXPECT_LT(eigen_residual(model, b.L), 1e-9);
  int i = b.data.find(-5.0);
  ASSERT_GE(i, 0);
  EXPECT_EQ(b.data.spaces[static_cast<std::size_t>(i)].multiplicity(), 8);
  EXPECT_TRUE(b.data.spaces[static_cast<std::size_t>(i)].complete);
  int far = b.data.find(-128.0);
  ASSERT_GE(far, 0);
  EXPECT_FALSE(b.data.spaces[static_cast<std::size_t>(far)].complete);
}

TEST(Laplacian, SelfAdjointNonPositiveAndStarCompatible) {
  std::mt19937 rng(17);
  for (const auto& model : {models::circle(8), models::torus(5)}) {
    auto b = build_laplacian(model);
    const auto& M = b.L.matrix();
    EXPECT_LT((M - M.adjoint()).norm(), 1e-12);
    EXPECT_LE(b.data.eigenvalues.maxCoeff(), 1e-12);
    for (int t = 0; t < 10; ++t) {
      auto x = oracle::random_element(model.spec, model.truncation, model.truncation, rng);
      EXPECT_LT(distance(b.L(star(x)), star(b.L(x))), 1e-9);
    }
  }
}

TEST(Laplacian, QuadraticFormIsMinusEnergy) {
  std::mt19937 rng(19);
  auto model = models::torus(4);
  auto b = build_laplacian(model);
  for (int t = 0; t < 5; ++t) {
    auto x = oracle::random_element(model.spec, 4, 4, rng);
    auto y = oracle::random_element(model.spec, 4, 4, rng);
    cplx lhs = gns_inner(x, b.L(y));
    cplx rhs = -oneform_inner(d_D(model, x), d_D(model, y));
    EXPECT_LT(std::abs(lhs - rhs), 1e-9);
  }
}

TEST(Admissibility, ShippedModelsAreAdmissible) {
  for (const auto& model : {models::circle(8), models::torus(6)}) {
    auto b = build_laplacian(model);
    auto r = check_admissibility(model, b);
    EXPECT_TRUE(r.all_pass());
    EXPECT_EQ(r.kernel_dimension, 1);
    EXPECT_TRUE(r.kernel_spanned_by_unit);
  }
}

TEST(Admissibility, DisconnectedModelHasTwoDimensionalKernel) {
  auto model = models::disconnected(8);
  auto r = check_admissibility(model, build_laplacian(model));
  EXPECT_EQ(r.kernel_dimension, 2);
  EXPECT_FALSE(r.connected());
  EXPECT_FALSE(r.all_pass());
}

TEST(Dirac, ValidationRejectsMismatchedWeights) {
  SpectralModel m = models::torus(3);
  m.dirac = DiracStructure::circle();
  EXPECT_THROW(m.validate(), Error);
  SpectralModel bad = models::circle(3);
  bad.dirac.weights[0] = {cplx(0.0, 1.0)};
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Dirac, CommutatorIsDerivation) {
  std::mt19937 rng(23);
  auto model = models::torus(6);
  for (int t = 0; t < 10; ++t) {
    auto a = oracle::random_element(model.spec, 6, 2, rng);
    auto c = oracle::random_element(model.spec, 6, 2, rng);
    OneForm lhs = d_D(model, a * c);
    OneForm rhs = a * d_D(model, c) + d_D(model, a) * c;
    EXPECT_LT(oneform_distance(lhs, rhs), 1e-10);
  }
  EXPECT_TRUE(d_D(model, AlgebraElement::unit(model.spec, 6)).is_zero());
  EXPECT_THROW(d_D(model, mono(model, {0, {7, 0}})), TruncationError);
}

TEST(Dirac, CommutatorAdjointIsMinusCommutatorOfAdjoint) {
  std::mt19937 rng(29);
  auto model = models::torus(5);
  for (int t = 0; t < 5; ++t) {
    auto a = oracle::random_element(model.spec, 5, 3, rng);
    OneForm lhs = adjoint(d_D(model, a));
    OneForm rhs = d_D(model, star(a));
    rhs *= -1.0;
    EXPECT_LT(oneform_distance(lhs, rhs), 1e-10);
  }
}

TEST(DStar, FormulaMatchesMatrixAdjoint) {
  std::mt19937 rng(31);
  auto model = models::torus(6);
  auto b = build_laplacian(model);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    auto x = oracle::random_element(model.spec, 6, 1, rng);
    auto y = oracle::random_element(model.spec, 6, 1, rng);
    auto expect = oracle::dstar_adjoint(model, d_D(model, x) * y, 6);
    worst = std::max(worst, distance(dstar_formula(b.L, x, y), expect));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(DStar, NegatedVariantDisagreesWithAdjoint) {
  std::mt19937 rng(37);
  auto model = models::torus(6);
  auto b = build_laplacian(model);
  auto x = oracle::random_element(model.spec, 6, 1, rng);
  auto y = oracle::random_element(model.spec, 6, 1, rng);
  auto expect = oracle::dstar_adjoint(model, d_D(model, x) * y, 6);
  EXPECT_LT(distance(dstar_formula_negated(b.L, x, y), -1.0 * expect), 1e-8);
  EXPECT_GT(distance(dstar_formula_negated(b.L, x, y), expect), 1e-2);
}

TEST(DStar, GeneratorWithUnitCoefficient) {
  auto model = models::torus(6);
  auto b = build_laplacian(model);
  auto U = mono(model, {0, {1, 0}});
  auto one = AlgebraElement::unit(model.spec, 6);
  EXPECT_LT(distance(dstar_formula(b.L, U, one), U), 1e-12);
}

TEST(DStar, InnerProductOfOneFormsThroughPsi) {
  std::mt19937 rng(41);
  auto model = models::torus(6);
  auto b = build_laplacian(model);
  double printed = 0.0;
  for (int t = 0; t < 20; ++t) {
    auto a = oracle::random_element(model.spec, 6, 1, rng);
    auto x = oracle::random_element(model.spec, 6, 1, rng);
    auto a2 = oracle::random_element(model.spec, 6, 1, rng);
    auto y = oracle::random_element(model.spec, 6, 1, rng);
    cplx lhs = oneform_inner(a * d_D(model, x), a2 * d_D(model, y));
    cplx rhs = -0.5 * trace(star(x) * psi(b.L, star(a) * a2, y));
    EXPECT_LT(std::abs(lhs - rhs), 1e-8);
    cplx alt = -0.5 * trace(star(x) * psi(b.L, star(a) * a, y));
    printed = std::max(printed, std::abs(lhs - alt));
  }
  EXPECT_GT(printed, 1e-3);
}

TEST(HeatSemigroup, ScalesEigenvectors) {
  auto model = models::torus(5);
  auto b = build_laplacian(model);
  for (const auto& sp : b.data.spaces) {
    if (!sp.complete) continue;
    for (const auto& e : sp.basis)
      for (double t : {0.05, 0.3}) {
        auto got = heat_semigroup(b.data, b.L.basis(), t, e);
        EXPECT_LT(distance(got, std::exp(sp.eigenvalue * t) * e), 1e-10);
      }
  }
  EXPECT_THROW(heat_semigroup(b.data, b.L.basis(), 0.0, AlgebraElement::unit(model.spec, 5)), Error);
}

TEST(HeatSemigroup, SemigroupLawAndContraction) {
  std::mt19937 rng(43);
  auto model = models::circle(10);
  auto b = build_laplacian(model);
  auto x = oracle::random_element(model.spec, 10, 10, rng);
  auto ts = heat_semigroup(b.data, b.L.basis(), 0.2, heat_semigroup(b.data, b.L.basis(), 0.1, x));
  auto t3 = heat_semigroup(b.data, b.L.basis(), 0.3, x);
  EXPECT_LT(distance(ts, t3), 1e-12);
  EXPECT_LE(gns_norm(t3), gns_norm(x) + 1e-12);
}

TEST(SafeRadius, ShrinksWithDegree) {
  EXPECT_EQ(safe_radius(6, 2), 4);
  EXPECT_EQ(safe_radius(1, 3), 0);
}
