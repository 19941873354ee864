// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qiso/models.hpp"
#include "qiso/phase.hpp"
#include "qiso/tensor_element.hpp"
#include "qiso/toric_algebra.hpp"

using namespace qiso;

namespace {

constexpr double kPi = 3.14159265358979323846;

SpecPtr torus_spec() { return std::make_shared<AlgebraSpec>(AlgebraSpec::torus(models::torus_phase())); }

// U -> clock, V -> shift in dimension 5 realizes U V = exp(2 pi i / 5) V U.
Eigen::MatrixXcd represent(const AlgebraElement& x) {
  Eigen::MatrixXcd C = models::clock(5, 1, 5), S = models::shift(5);
  auto power = [](const Eigen::MatrixXcd& m, int e) {
    Eigen::MatrixXcd base = e >= 0 ? m : Eigen::MatrixXcd(m.adjoint());
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(5, 5);
    for (int i = 0; i < std::abs(e); ++i) r = r * base;
    return r;
  };
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(5, 5);
  for (const auto& [m, c] : x.terms()) out += c * power(C, m.exponents[0]) * power(S, m.exponents[1]);
  return out;
}

double distance(const AlgebraElement& a, const AlgebraElement& b) { return (a - b).max_abs(); }

}  // namespace

TEST(Phase, RationalAnglesAreReduced) {
  EXPECT_EQ(Phase::rational(2, 10), Phase::rational(1, 5));
  EXPECT_EQ(Phase::rational(-1, 4), Phase::rational(3, 4));
  EXPECT_TRUE(Phase::rational(1, 5).is_exact());
}

TEST(Phase, PowersOfRootsOfUnityAreExact) {
  Phase p = Phase::rational(1, 5);
  EXPECT_EQ(p.pow(5), Phase{});
  EXPECT_EQ(p * p.inverse(), Phase{});
  EXPECT_EQ(p.pow(-2), Phase::rational(3, 5));
}

TEST(Phase, RecoversRationalAngleFromComplexValue) {
  cplx z = std::polar(1.0, 2.0 * kPi * 3.0 / 7.0);
  Phase p = Phase::from_complex(z);
  ASSERT_TRUE(p.is_exact());
  EXPECT_EQ(p.num(), 3);
  EXPECT_EQ(p.den(), 7);
  EXPECT_NEAR(std::abs(p.value() - z), 0.0, 1e-14);
}

TEST(Phase, IrrationalAngleStaysApproximate) {
  Phase p = Phase::from_complex(std::polar(1.0, 1.0));
  EXPECT_FALSE(p.is_exact());
  EXPECT_NEAR(p.turns_value(), 1.0 / (2.0 * kPi), 1e-14);
}

TEST(ToricAlgebra, RejectsInconsistentPhases) {
  ToricSummand s{2, {Phase{}, Phase::rational(1, 5), Phase::rational(1, 5), Phase{}}};
  EXPECT_THROW(AlgebraSpec({s}), Error);
  EXPECT_THROW(AlgebraSpec(std::vector<ToricSummand>{}), Error);
}

TEST(ToricAlgebra, CommutationRelation) {
  auto spec = torus_spec();
  auto U = AlgebraElement::monomial(spec, 4, {0, {1, 0}});
  auto V = AlgebraElement::monomial(spec, 4, {0, {0, 1}});
  cplx lambda = std::polar(1.0, 2.0 * kPi / 5.0);
  EXPECT_LT(distance(U * V, lambda * (V * U)), 1e-14);
}

TEST(ToricAlgebra, GeneratorsAreUnitary) {
  auto spec = torus_spec();
  auto one = AlgebraElement::unit(spec, 4);
  for (const auto& m : {Monomial{0, {1, 0}}, Monomial{0, {0, 1}}, Monomial{0, {2, -3}}}) {
    auto x = AlgebraElement::monomial(spec, 4, m);
    EXPECT_LT(distance(star(x) * x, one), 1e-14);
    EXPECT_LT(distance(x * star(x), one), 1e-14);
  }
}

TEST(ToricAlgebra, ProductMatchesClockShiftRepresentation) {
  std::mt19937 rng(11);
  auto spec = torus_spec();
  for (int trial = 0; trial < 20; ++trial) {
    auto x = oracle::random_element(spec, 4, 2, rng);
    auto y = oracle::random_element(spec, 4, 2, rng);
    EXPECT_LT((represent(x * y) - represent(x) * represent(y)).norm(), 1e-10);
    EXPECT_LT((represent(star(x)) - represent(x).adjoint()).norm(), 1e-10);
  }
}

TEST(ToricAlgebra, AssociativeAndStarAntiMultiplicative) {
  std::mt19937 rng(5);
  auto spec = torus_spec();
  for (int trial = 0; trial < 10; ++trial) {
    auto x = oracle::random_element(spec, 6, 1, rng);
    auto y = oracle::random_element(spec, 6, 2, rng);
    auto z = oracle::random_element(spec, 6, 2, rng);
    EXPECT_LT(distance((x * y) * z, x * (y * z)), 1e-11);
    EXPECT_LT(distance(star(x * y), star(y) * star(x)), 1e-11);
    EXPECT_LT(distance(star(star(y)), y), 1e-14);
  }
}

TEST(ToricAlgebra, TraceIsNormalizedTracialAndPositive) {
  std::mt19937 rng(7);
  auto spec = torus_spec();
  EXPECT_NEAR(std::abs(trace(AlgebraElement::unit(spec, 3)) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(trace(AlgebraElement::monomial(spec, 3, {0, {1, -1}})), cplx(0.0));
  for (int trial = 0; trial < 10; ++trial) {
    auto x = oracle::random_element(spec, 4, 2, rng);
    auto y = oracle::random_element(spec, 4, 2, rng);
    EXPECT_LT(std::abs(trace(x * y) - trace(y * x)), 1e-11);
    cplx n = trace(star(x) * x);
    EXPECT_GT(n.real(), 0.0);
    EXPECT_LT(std::abs(n.imag()), 1e-11);
    EXPECT_NEAR(gns_norm(x), std::sqrt(n.real()), 1e-10);
  }
}

TEST(ToricAlgebra, TruncationIsEnforced) {
  auto spec = torus_spec();
  AlgebraElement x(spec, 2);
  EXPECT_THROW(x.add({0, {3, 0}}, 1.0), TruncationError);
  auto U2 = AlgebraElement::monomial(spec, 2, {0, {2, 0}});
  EXPECT_THROW(multiply(U2, U2, 3), TruncationError);
  EXPECT_NO_THROW(multiply(U2, U2, 4));
}

TEST(ToricAlgebra, DirectSumSummandsAreOrthogonalIdeals) {
  auto spec = std::make_shared<AlgebraSpec>(
      AlgebraSpec::direct_sum({AlgebraSpec::circle(), AlgebraSpec::torus(models::torus_phase())}));
  ASSERT_EQ(spec->num_summands(), 2);
  auto a = AlgebraElement::monomial(spec, 3, {0, {1}});
  auto b = AlgebraElement::monomial(spec, 3, {1, {0, 1}});
  EXPECT_TRUE((a * b).is_zero());
  auto one = AlgebraElement::unit(spec, 3);
  EXPECT_LT(distance(one * b, b), 1e-15);
  EXPECT_LT(distance(a * one, a), 1e-15);
  EXPECT_NEAR(trace(one).real(), 1.0, 1e-15);
  EXPECT_NEAR(trace(a * star(a)).real(), spec->summand_weight(), 1e-15);
}

TEST(MonomialBasis, CoordinatesAreOrthonormal) {
  std::mt19937 rng(3);
  auto spec = std::make_shared<AlgebraSpec>(AlgebraSpec::direct_sum({AlgebraSpec::circle(), AlgebraSpec::circle()}));
  MonomialBasis basis(spec, 3);
  EXPECT_EQ(basis.size(), 14u);
  for (int trial = 0; trial < 5; ++trial) {
    auto x = oracle::random_element(spec, 3, 3, rng);
    auto y = oracle::random_element(spec, 3, 2, rng);
    EXPECT_LT(std::abs(basis.coordinates(x).dot(basis.coordinates(y)) - gns_inner(x, y)), 1e-11);
    EXPECT_LT(distance(basis.element(basis.coordinates(x)), x), 1e-12);
  }
  EXPECT_EQ(basis.index_of({0, {4}}), -1);
}

TEST(LatticeBox, SizeAndOrder) {
  EXPECT_EQ(lattice_box(2, 3).size(), 49u);
  auto box = lattice_box(1, 2);
  EXPECT_EQ(box.front(), std::vector<int>{-2});
  EXPECT_EQ(box.back(), std::vector<int>{2});
}

TEST(TensorElement, ModuleInnerProductOfUnitaryCoefficients) {
  auto spec = torus_spec();
  Eigen::MatrixXcd S = models::shift(3);
  TensorElement x(spec, 3);
  x.add({0, {1, 0}}, S);
  Eigen::MatrixXcd g = module_inner(x, x);
  EXPECT_LT((g - Eigen::MatrixXcd::Identity(3, 3)).norm(), 1e-14);
  TensorElement y = x * star(x);
  EXPECT_LT((y - TensorElement::unit(spec, 3)).norm(), 1e-14);
  EXPECT_LT((slice_trace(TensorElement::unit(spec, 3)) - Eigen::MatrixXcd::Identity(3, 3)).norm(), 1e-15);
}
