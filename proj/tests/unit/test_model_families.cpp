#include <gtest/gtest.h>

#include <cmath>

#include "akgeo/model_families.hpp"

using namespace akgeo;

TEST(KodairaThurston, DomainAndFrames) {
  EXPECT_THROW(kodaira_thurston(0.0), DomainError);
  EXPECT_THROW(kodaira_thurston_coordinate(-1.0), DomainError);
  const auto spec = kodaira_thurston_coordinate(2.0);
  ASSERT_TRUE(spec.orthonormal.has_value());
  const auto onb = to_orthonormal(spec);
  EXPECT_TRUE(onb.metric.is_orthonormal());
  EXPECT_TRUE(onb.j.is_standard());
  // [E2, E3] = a E4 after the change
  EXPECT_NEAR(onb.algebra.constant(1, 2, 3), 2.0, 1e-14);
}

TEST(KodairaThurston, CoordinateAndOrthonormalModelsAgree) {
  const auto a = to_orthonormal(kodaira_thurston_coordinate(0.5));
  const auto b = kodaira_thurston(0.5);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) EXPECT_NEAR(a.algebra.constant(i, j, k), b.algebra.constant(i, j, k), 1e-14);
}

TEST(Nakamura, CoefficientsSatisfyIdentity) {
  for (const DeformationParameter t : {DeformationParameter{0, 0, 0, 0}, {0.3, -0.2, 0.1, 0.4}, {-0.6, 0.5, 0.0, -0.7}}) {
    const auto c = deformation_coefficients(t);
    EXPECT_LT(coefficient_identity_residual(c), 1e-12);
  }
  const auto c0 = deformation_coefficients({0, 0, 0, 0});
  EXPECT_DOUBLE_EQ(c0.beta, -1.0);
  EXPECT_DOUBLE_EQ(c0.gamma, 1.0);
  EXPECT_DOUBLE_EQ(c0.alpha, 0.0);
}

TEST(Nakamura, DomainIsEnforced) {
  EXPECT_THROW(deformation_coefficients({1.0, 0, 0, 0}), DomainError);
  EXPECT_THROW(deformation_coefficients({0, 0, 0.8, 0.7}), DomainError);
  EXPECT_THROW(nakamura({0, 0, 0, 0}, -1.0), DomainError);
  EXPECT_THROW(check_nakamura_domain({0, NAN, 0, 0}), DomainError);
}

TEST(Nakamura, ClosedFormMatchesConjugation) {
  const DeformationParameter t{0.2, -0.4, 0.5, 0.3};
  const auto c = deformation_coefficients(t);
  EXPECT_LT((nakamura_j_closed_form(c) - nakamura_j_conjugated(t)).cwiseAbs().maxCoeff(), 1e-12);
  const RealMatrix j = nakamura_j_closed_form(c);
  EXPECT_LT((j * j + RealMatrix::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Nakamura, CoframeIsTypeOneZero) {
  const auto spec = nakamura({0.1, 0.3, -0.2, 0.25});
  const auto phi = nakamura_coframe(spec.nakamura->c, spec.algebra.frame());
  // Phi(J X) = i Phi(X)
  for (const auto& f : phi) {
    for (int k = 0; k < 6; ++k) {
      const ComplexVector x = ComplexVector::Unit(6, k);
      const ComplexVector jx = spec.j.matrix().cast<Complex>() * x;
      const ComplexVector xs[] = {x};
      const ComplexVector jxs[] = {jx};
      EXPECT_LT(std::abs(f.evaluate(jxs) - kI * f.evaluate(xs)), 1e-12);
    }
  }
}

TEST(Nakamura, OrthonormalFrameAndAlmostKahler) {
  const auto spec = nakamura({0.3, 0.3, -0.3, 0.3});
  const auto onb = to_orthonormal(spec);
  EXPECT_TRUE(onb.metric.is_orthonormal());
  const auto flags = classify(spec.j, spec.metric, spec.algebra);
  EXPECT_TRUE(flags.almost_kahler);
  EXPECT_FALSE(flags.integrable);
}

TEST(Nakamura, DbarOfCoframe) {
  const auto spec = nakamura({0.2, -0.1, 0.3, 0.4});
  const auto& c = spec.nakamura->c;
  const auto phi = nakamura_coframe(c, spec.algebra.frame());
  const auto& alg = spec.algebra;
  EXPECT_TRUE(dbar(phi[0], 1, spec.j, alg).is_zero(1e-12));
  EXPECT_LT(max_abs_difference(dbar(phi[1], 1, spec.j, alg), 0.5 * wedge(phi[0], phi[1].conj())), 1e-12);
  const auto rhs3 = 0.5 * (Complex(1.0, -c.delta) * wedge(phi[0], phi[2].conj()) -
                           kI * c.delta * wedge(phi[0].conj(), phi[2]));
  EXPECT_LT(max_abs_difference(dbar(phi[2], 1, spec.j, alg), rhs3), 1e-12);
}

TEST(ExpectedTables, ShapesAndMasks) {
  const auto k = expected_kodaira(1.0);
  EXPECT_EQ(k.tables.at("psi").shape(), (std::vector<int>{2, 2, 4, 4}));
  EXPECT_TRUE(k.tables.at("psi").fully_known());
  EXPECT_FALSE(k.kappa.has_value());
  const auto n = expected_nakamura({0, 0, 0, 0.1});
  EXPECT_FALSE(n.tables.at("psi").fully_known());
  EXPECT_EQ(*n.kappa, KodairaDimension::minus_infinity);
  EXPECT_EQ(*expected_nakamura({0.2, 0, 0.1, 0}).kappa, KodairaDimension::zero);
}

TEST(KodairaSurface, DimensionByPiClass) {
  EXPECT_EQ(kodaira_surface_dimension(PiMultipleClass::rational_multiple_of_pi), KodairaDimension::zero);
  EXPECT_EQ(kodaira_surface_dimension(PiMultipleClass::irrational_multiple_of_pi),
            KodairaDimension::minus_infinity);
  EXPECT_EQ(to_string(KodairaDimension::minus_infinity), "-inf");
}
