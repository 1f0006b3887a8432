#include <gtest/gtest.h>

#include "akgeo/invariant_algebra.hpp"

using namespace akgeo;

namespace {

const FrameTag kE("e");

InvariantAlgebra heisenberg_times_r() {
  const StructureConstant c[] = {{1, 2, 3, 1.0}};
  return InvariantAlgebra(4, c, kE);
}

}  // namespace

TEST(InvariantAlgebra, StoresAntisymmetricConstants) {
  const StructureConstant c[] = {{2, 1, 3, 1.0}};
  InvariantAlgebra alg(4, c, kE);
  EXPECT_DOUBLE_EQ(alg.constant(1, 2, 3), -1.0);
  EXPECT_DOUBLE_EQ(alg.constant(2, 1, 3), 1.0);
  ASSERT_EQ(alg.structure().size(), 1u);
  EXPECT_EQ(alg.structure().begin()->first.i, 1);
}

TEST(InvariantAlgebra, RejectsBadInput) {
  const StructureConstant diag[] = {{1, 1, 2, 1.0}};
  EXPECT_THROW(InvariantAlgebra(4, diag, kE), DimensionError);
  const StructureConstant out[] = {{0, 4, 1, 1.0}};
  EXPECT_THROW(InvariantAlgebra(4, out, kE), DimensionError);
  EXPECT_THROW(InvariantAlgebra::abelian(3, kE), DimensionError);
}

TEST(InvariantAlgebra, JacobiDetectsFailure) {
  EXPECT_TRUE(validate_algebra(heisenberg_times_r()).passed);
  // [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2 on R^4 is so(3) + R: fine.
  const StructureConstant so3[] = {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {2, 0, 1, 1.0}};
  EXPECT_TRUE(validate_algebra(InvariantAlgebra(4, so3, kE)).passed);
  // [e1,e2] = e1, [e2,e3] = e2, [e1,e3] = e3: the cyclic sum on (e1,e2,e3) is e1 - e2 - e3.
  const StructureConstant bad[] = {{0, 1, 0, 1.0}, {1, 2, 1, 1.0}, {0, 2, 2, 1.0}};
  const auto d = validate_algebra(InvariantAlgebra(4, bad, kE));
  EXPECT_FALSE(d.passed);
  EXPECT_GT(d.max_residual, 0.5);
}

TEST(ExteriorDerivative, SignConvention) {
  // de^4(e2, e3) = -e^4([e2, e3]) = -1, so de^4 = -e^{23}.
  const auto alg = heisenberg_times_r();
  const auto d = exterior_derivative(InvariantForm::monomial(4, {3}, kE), alg);
  EXPECT_EQ(d.coefficient({1, 2}), Complex(-1.0));
  EXPECT_EQ(d.terms().size(), 1u);
  EXPECT_TRUE(exterior_derivative(InvariantForm::monomial(4, {0}, kE), alg).is_zero(1e-15));
}

TEST(ExteriorDerivative, SquareVanishesAndLeibniz) {
  const StructureConstant c[] = {{0, 2, 2, -1.0}, {0, 3, 3, 1.0}, {0, 4, 4, -1.0}, {0, 5, 5, 1.0}};
  InvariantAlgebra alg(6, c, kE);
  const auto a = InvariantForm::monomial(6, {2}, kE) + 2.0 * InvariantForm::monomial(6, {5}, kE);
  const auto b = InvariantForm::monomial(6, {3}, kE) - InvariantForm::monomial(6, {4}, kE);
  EXPECT_LT(exterior_derivative(exterior_derivative(a, alg), alg).max_abs(), 1e-14);
  const auto lhs = exterior_derivative(wedge(a, b), alg);
  const auto rhs = wedge(exterior_derivative(a, alg), b) - wedge(a, exterior_derivative(b, alg));
  EXPECT_LT(max_abs_difference(lhs, rhs), 1e-14);
}

TEST(InvariantForm, WedgeAndDeterminantEvaluation) {
  const auto e1 = InvariantForm::monomial(4, {0}, kE);
  const auto e2 = InvariantForm::monomial(4, {1}, kE);
  const auto w = wedge(e1, e2);
  EXPECT_EQ(w.coefficient({0, 1}), Complex(1.0));
  EXPECT_EQ(wedge(e2, e1).coefficient({0, 1}), Complex(-1.0));
  EXPECT_TRUE(wedge(e1, e1).is_zero(1e-15));
  EXPECT_EQ(w.evaluate(ComplexVector::Unit(4, 0), ComplexVector::Unit(4, 1)), Complex(1.0));
  EXPECT_EQ(w.evaluate(ComplexVector::Unit(4, 1), ComplexVector::Unit(4, 0)), Complex(-1.0));
  EXPECT_EQ(InvariantForm::monomial(4, {2, 0}, kE).coefficient({0, 2}), Complex(-1.0));
}

TEST(InvariantForm, MatrixRoundTrip) {
  ComplexMatrix a = ComplexMatrix::Zero(4, 4);
  a(0, 1) = 2.0;
  a(1, 0) = -2.0;
  a(2, 3) = Complex(0.0, 1.0);
  a(3, 2) = Complex(0.0, -1.0);
  const auto f = InvariantForm::from_matrix(a, kE);
  EXPECT_LT((f.as_matrix() - a).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(InvariantForm, FrameMismatchIsReported) {
  const auto a = InvariantForm::monomial(4, {0}, kE);
  const auto b = InvariantForm::monomial(4, {1}, FrameTag("E"));
  EXPECT_THROW(wedge(a, b), FrameMismatch);
}

TEST(FrameChange, RoundTripAndNaturality) {
  const auto alg = heisenberg_times_r();
  RealMatrix p = RealMatrix::Identity(4, 4);
  p(2, 2) = 2.0;
  p(0, 1) = 0.5;
  p(3, 3) = 0.25;
  const FrameChange fc(p, kE, FrameTag("f"));
  const auto alg2 = change_frame(alg, fc);
  EXPECT_TRUE(validate_algebra(alg2).passed);
  // d commutes with the frame change.
  const auto form = InvariantForm::monomial(4, {3}, kE) + InvariantForm::monomial(4, {1}, kE);
  const auto lhs = change_frame(exterior_derivative(form, alg), fc);
  const auto rhs = exterior_derivative(change_frame(form, fc), alg2);
  EXPECT_LT(max_abs_difference(lhs, rhs), 1e-14);
  const auto back = change_frame(change_frame(form, fc), fc.inverted());
  EXPECT_LT(max_abs_difference(back, form), 1e-14);
}

TEST(FrameChange, RegistryRoutesDerivative) {
  const auto alg = heisenberg_times_r();
  RealMatrix p = RealMatrix::Identity(4, 4);
  p(3, 3) = 3.0;
  const FrameChange fc(p, kE, FrameTag("f"));
  FrameRegistry reg;
  reg.add(fc);
  const auto in_f = change_frame(InvariantForm::monomial(4, {3}, kE), fc);
  const auto d = exterior_derivative(in_f, alg, reg);
  // The result comes back in the frame of the input.
  EXPECT_EQ(d.frame(), FrameTag("f"));
  const auto expected = change_frame(exterior_derivative(InvariantForm::monomial(4, {3}, kE), alg), fc);
  EXPECT_LT(max_abs_difference(d, expected), 1e-14);
  EXPECT_THROW(exterior_derivative(InvariantForm::monomial(4, {0}, FrameTag("g")), alg, reg),
               FrameMismatch);
}
