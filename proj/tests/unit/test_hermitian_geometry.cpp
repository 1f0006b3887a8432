#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "akgeo/model_families.hpp"

using namespace akgeo;

namespace {

struct KtFixture {
  AlmostHermitianSpec spec = kodaira_thurston(2.0);
  RealConnection lc = levi_civita(spec.metric, spec.algebra);
  RealConnection can = canonical_connection(lc, spec.j);
  ComplexFrameData cf = unitary_frame(spec.metric, spec.j, spec.algebra);
  ConnectionMatrix theta = connection_forms(can, cf);
};

}  // namespace

TEST(AlmostComplexStructure, ValidatesSquare) {
  EXPECT_NO_THROW(AlmostComplexStructure(standard_complex_structure(4), FrameTag("E")));
  RealMatrix bad = standard_complex_structure(4);
  bad(1, 0) = 1.01;
  try {
    AlmostComplexStructure j(bad, FrameTag("E"));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NEAR(e.residual(), 0.01, 1e-12);
  }
  EXPECT_THROW(AlmostComplexStructure(RealMatrix::Identity(3, 3), FrameTag("E")), DimensionError);
}

TEST(AlmostComplexStructure, ProjectorsAreComplementaryIdempotents) {
  const AlmostComplexStructure j(standard_complex_structure(4), FrameTag("E"));
  const ComplexMatrix p = j.projector_10();
  const ComplexMatrix q = j.projector_01();
  EXPECT_LT((p * p - p).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((p + q - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((p * q).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(MetricData, SymplecticAndMetricAgree) {
  const auto spec = kodaira_thurston_coordinate(0.5);
  const auto again = MetricData::from_metric(spec.metric.g(), spec.j);
  EXPECT_LT(max_abs_difference(again.omega(), spec.metric.omega()), 1e-14);
  // g(JX, JY) = g(X, Y)
  const RealMatrix& jm = spec.j.matrix();
  EXPECT_LT((jm.transpose() * spec.metric.g() * jm - spec.metric.g()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(MetricData, RejectsIncompatibleMetric) {
  const AlmostComplexStructure j(standard_complex_structure(2), FrameTag("E"));
  RealMatrix g = RealMatrix::Identity(2, 2);
  g(0, 0) = 2.0;
  EXPECT_THROW(MetricData::from_metric(g, j), ValidationError);
  EXPECT_THROW(MetricData::from_metric(-RealMatrix::Identity(2, 2), j), ValidationError);
}

TEST(Nijenhuis, KodairaThurstonIsNotIntegrable) {
  const auto spec = kodaira_thurston(2.0);
  const auto flags = classify(spec.j, spec.metric, spec.algebra);
  EXPECT_FALSE(flags.integrable);
  EXPECT_TRUE(flags.almost_kahler);
  EXPECT_TRUE(flags.quasi_kahler);
  // N(E1, E3) = a E3 with the bracket [E2, E3] = a E4
  const auto n = nijenhuis_apply(spec.j, spec.algebra, ComplexVector::Unit(4, 0), ComplexVector::Unit(4, 2));
  EXPECT_NEAR(n(2).real(), 2.0, 1e-14);
  EXPECT_NEAR(n(3).real(), 0.0, 1e-14);
}

TEST(Nijenhuis, FlatTorusIsKahler) {
  const FrameTag f("E");
  const AlmostComplexStructure j(standard_complex_structure(4), f);
  const auto metric = MetricData::from_metric(RealMatrix::Identity(4, 4), j);
  const auto flags = classify(j, metric, InvariantAlgebra::abelian(4, f));
  EXPECT_TRUE(flags.integrable);
  EXPECT_TRUE(flags.almost_kahler);
  EXPECT_EQ(flags.nijenhuis_norm, 0.0);
}

TEST(LeviCivita, KodairaThurstonKoszulTable) {
  KtFixture k;
  EXPECT_LT(metric_residual(k.lc, k.spec.metric), 1e-14);
  EXPECT_LT(torsion_free_residual(k.lc, k.spec.algebra), 1e-14);
  // nabla_{E2} E3 = a/2 E4, nabla_{E4} E2 = -a/2 E3
  EXPECT_NEAR(k.lc.christoffel(1, 2, 3), 1.0, 1e-14);
  EXPECT_NEAR(k.lc.christoffel(3, 1, 2), -1.0, 1e-14);
  EXPECT_NEAR(k.lc.christoffel(3, 1, 1), 0.0, 1e-14);
}

TEST(Canonical, IsHermitian) {
  KtFixture k;
  EXPECT_LT(metric_residual(k.can, k.spec.metric), 1e-14);
  EXPECT_LT(complex_structure_residual(k.can, k.spec.j), 1e-14);
  EXPECT_EQ(k.can.kind(), ConnectionKind::canonical);
  // nabla^c_{E3} E1 = -a/4 E3
  EXPECT_NEAR(k.can.christoffel(2, 0, 2), -0.5, 1e-14);
}

TEST(UnitaryFrame, StandardFrameAndDuality) {
  KtFixture k;
  EXPECT_LT(k.cf.unitarity_residual(k.spec.metric), 1e-14);
  const double s = std::numbers::sqrt2 / 2.0;
  EXPECT_NEAR(k.cf.vector(0)(0).real(), s, 1e-15);
  EXPECT_NEAR(k.cf.vector(0)(1).imag(), -s, 1e-15);
  // coframe is dual to z
  const ComplexMatrix id = k.cf.coframe() * k.cf.vectors();
  EXPECT_LT((id - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(UnitaryFrame, GramSchmidtFallback) {
  const auto spec = kodaira_thurston_coordinate(3.0);
  const auto cf = unitary_frame(spec.metric, spec.j, spec.algebra);
  EXPECT_LT(cf.unitarity_residual(spec.metric), 1e-12);
  // each z_j is of type (1,0)
  const ComplexMatrix p01 = spec.j.projector_01();
  EXPECT_LT((p01 * cf.vectors()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ConnectionForms, KodairaThurstonTheta) {
  KtFixture k;
  EXPECT_LT(skew_hermitian_residual(k.theta.forms, 2), 1e-14);
  // theta^1_2 = (sqrt2/4) a z^2
  const auto expected = (std::numbers::sqrt2 / 2.0) * k.cf.coform(1);
  EXPECT_LT(max_abs_difference(k.theta(0, 1), expected), 1e-14);
  EXPECT_TRUE(k.theta(0, 0).is_zero(1e-14));
}

TEST(TorsionForms, KodairaThurstonTorsionIsTypeZeroTwo) {
  KtFixture k;
  const auto big = torsion_forms(k.theta, k.cf, k.spec.algebra);
  for (const auto& f : big) {
    const auto parts = type_decompose(f, k.spec.j);
    EXPECT_TRUE(parts.f20.is_zero(1e-14));
    EXPECT_TRUE(parts.f11.is_zero(1e-14));
  }
}

TEST(TypeDecomposition, PartsSumToWhole) {
  const FrameTag f("E");
  const AlmostComplexStructure j(standard_complex_structure(4), f);
  const auto form = InvariantForm::monomial(4, {0, 2}, f) + Complex(0.5, 1.0) * InvariantForm::monomial(4, {1, 3}, f) +
                    InvariantForm::monomial(4, {0, 1}, f, 2.0);
  const auto parts = type_decompose(form, j);
  EXPECT_LT(max_abs_difference(parts.f20 + parts.f11 + parts.f02, form), 1e-15);
  // e^{12} is (1,1): omega(JX, JY) = omega(X, Y)
  const auto p = type_decompose(InvariantForm::monomial(4, {0, 1}, f), j);
  EXPECT_TRUE(p.f20.is_zero(1e-15));
  EXPECT_TRUE(p.f02.is_zero(1e-15));
}

TEST(Curvature, KodairaThurstonRicciFlatComplexHalf) {
  KtFixture k;
  const auto cc = curvature(k.theta, k.spec.algebra, k.cf);
  EXPECT_LT(cc.ricci.cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(std::abs(cc.scal - cc.scal_direct), 1e-14);
  EXPECT_LT(skew_hermitian_residual(cc.psi, 2), 1e-14);
  // R^2_{2 2 2bar} = a^2 / 8
  EXPECT_NEAR(cc.coefficient(1, 1, 1, 1).real(), 0.5, 1e-14);
}

TEST(Curvature, RealHalfNeedsOrthonormalFrame) {
  const auto spec = kodaira_thurston_coordinate(2.0);
  const auto can = canonical_connection(levi_civita(spec.metric, spec.algebra), spec.j);
  EXPECT_THROW(real_curvature(can, spec.algebra, spec.metric), Error);
}

TEST(Curvature, RealHalfKodairaThurston) {
  KtFixture k;
  const auto rc = real_curvature(k.can, k.spec.algebra, k.spec.metric);
  // Omega^1_2 = -(a^2/8) E^{34}
  EXPECT_NEAR(rc.component(0, 1, 2, 3), -0.5, 1e-14);
  // The tensorial Ricci contraction of this Omega.
  EXPECT_NEAR(rc.ricci(1, 1), -1.0, 1e-14);
  EXPECT_NEAR(rc.ricci(2, 2), -1.0, 1e-14);
  EXPECT_NEAR(rc.ricci(3, 3), 1.0, 1e-14);
  EXPECT_NEAR(rc.scal, -1.0, 1e-14);
}

TEST(Dbar, DegreeAndTypeOfResult) {
  const auto spec = nakamura({0.1, 0.2, -0.1, 0.2});
  const auto phi = nakamura_coframe(spec.nakamura->c, spec.algebra.frame());
  // dbar Phi^1 = 0
  EXPECT_TRUE(dbar(phi[0], 1, spec.j, spec.algebra).is_zero(1e-13));
  const auto d3 = dbar(phi[2], 1, spec.j, spec.algebra);
  const auto parts = type_decompose(d3, spec.j);
  EXPECT_LT(max_abs_difference(parts.f11, d3), 1e-13);
}
