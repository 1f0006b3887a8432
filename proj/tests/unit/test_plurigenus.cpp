#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "akgeo/plurigenus.hpp"

using namespace akgeo;

TEST(ModeEquation, CoefficientsFromT) {
  const DeformationParameter t{0.1, 0.2, 0.0, 0.3};
  const auto c = deformation_coefficients(t);
  const double z = default_zeta();
  const auto eq = mode_equation(t, 2, z);
  EXPECT_DOUBLE_EQ(eq.quad_s, c.beta / (z * z));
  EXPECT_DOUBLE_EQ(eq.cross, -2.0 * c.alpha / z);
  EXPECT_DOUBLE_EQ(eq.quad_x, -c.gamma);
  EXPECT_NEAR(eq.rhs, -c.beta * 4.0 * c.delta * c.delta / (std::numbers::pi * std::numbers::pi), 1e-15);
  EXPECT_THROW(mode_equation(t, 0), DomainError);
}

TEST(ModeEquation, DiscriminantClosedForm) {
  // D(n) = -(4 / zeta^2) (n^2 + beta^2 (m delta)^2 / pi^2)
  const DeformationParameter t{-0.2, 0.1, 0.3, -0.2};
  const auto eq = mode_equation(t, 3);
  const double z = eq.zeta;
  for (long long n : {0LL, 1LL, -5LL, 40LL}) {
    const double md = 3.0 * eq.delta;
    const double expected = -(4.0 / (z * z)) * (double(n * n) + eq.beta * eq.beta * md * md / (std::numbers::pi * std::numbers::pi));
    EXPECT_NEAR(discriminant(eq, n), expected, 1e-9 * std::max(1.0, std::abs(expected)));
  }
}

TEST(Modes, AnalyticMatchesBruteForceOnSyntheticEquation) {
  // k^2 - n^2 = 0 has the diagonal solutions |k| = |n|.
  ModeEquation eq;
  eq.quad_s = 1.0;
  eq.quad_x = -1.0;
  const auto a = analytic_modes(eq, 10);
  const auto b = brute_force_modes(eq, 10);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 41u);
  // 2k^2 + 3nk + n^2 = 6 mixes both roots.
  ModeEquation e2;
  e2.quad_s = 2.0;
  e2.cross = 3.0;
  e2.quad_x = 1.0;
  e2.rhs = 6.0;
  EXPECT_EQ(analytic_modes(e2, 50), brute_force_modes(e2, 50));
  EXPECT_FALSE(analytic_modes(e2, 50).empty());
}

TEST(Plurigenus, DichotomyInDelta) {
  ModeEvidence ev;
  EXPECT_EQ(plurigenus({0.2, -0.3, 0.4, 0.0}, 1, 200, default_zeta(), &ev), 1);
  EXPECT_EQ(ev.analytic, (std::vector<Mode>{{0, 0}}));
  EXPECT_EQ(plurigenus({0.2, -0.3, 0.4, 0.05}, 4, 200), 0);
  const auto r = kodaira_dimension({0.0, 0.0, 0.0, 0.1}, 5, 100);
  EXPECT_EQ(r.kappa, KodairaDimension::minus_infinity);
  EXPECT_EQ(r.per_m.size(), 5u);
  EXPECT_EQ(kodaira_dimension({0.5, 0.1, -0.2, 0.0}, 3, 100).kappa, KodairaDimension::zero);
}

TEST(Plurigenus, ModeSetClassification) {
  ModeEquation eq;
  eq.delta = 0.0;
  EXPECT_EQ(plurigenus_from_modes(eq, {{0, 0}}), 1);
  EXPECT_THROW(plurigenus_from_modes(eq, {}), InternalInconsistency);
  eq.delta = 0.1;
  EXPECT_EQ(plurigenus_from_modes(eq, {}), 0);
  EXPECT_THROW(plurigenus_from_modes(eq, {{1, 2}}), InternalInconsistency);
}

TEST(CanonicalSection, DbarCoefficient) {
  // dbar (Phi^{123})^m = -(i m delta / 2) conj(Phi^1) (x) (Phi^{123})^m
  const auto spec = nakamura({0.2, 0.1, 0.1, 0.05});
  const auto& c = spec.nakamura->c;
  const auto phi = nakamura_coframe(c, spec.algebra.frame());
  for (int m : {1, 3}) {
    const auto eta = dbar_canonical_coefficient(spec, m);
    const auto expected = Complex(0.0, -0.5 * m * c.delta) * phi[0].conj();
    EXPECT_LT(max_abs_difference(eta, expected), 1e-12);
  }
  EXPECT_THROW(dbar_canonical_coefficient(kodaira_thurston(1.0), 1), DomainError);
}

TEST(Ellipticity, SymbolPositiveWithDeterminant) {
  const DeformationParameter t{0.3, 0.3, -0.3, 0.3};
  const auto v = ellipticity_check(t, 16);
  EXPECT_TRUE(v.elliptic);
  EXPECT_GT(v.min_eigenvalue, 1e-10);
  EXPECT_LT(v.block_determinant_residual, 1e-9);
  const auto c = deformation_coefficients(t);
  const RealMatrix s = principal_symbol(t, 0.0);
  // (y4, y4) entry is (1 + delta^2) / lambda^2 at s = 0
  EXPECT_NEAR(s(3, 3), (1.0 + c.delta * c.delta) / (c.lambda * c.lambda), 1e-12);
  EXPECT_NEAR(s(2, 3), -c.delta / c.lambda, 1e-12);
  EXPECT_THROW(ellipticity_check(t, 1), DomainError);
}
