// Seeded property sweeps over random Lie algebras and Hermitian structures,
// checked against the dense oracle in tests/support.

#include <gtest/gtest.h>

#include <cmath>

#include "akgeo/model_families.hpp"
#include "dense_oracle.hpp"
#include "generators.hpp"

using namespace akgeo;
using namespace akgeo::testing;

namespace {

constexpr int kCases = 40;
constexpr std::uint64_t kBaseSeed = 7001;

DenseStructure dense(const AlmostHermitianSpec& spec) {
  DenseStructure s;
  s.n = spec.algebra.dim();
  s.c.resize(static_cast<std::size_t>(s.n * s.n * s.n));
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j)
      for (int k = 0; k < s.n; ++k) s.c[static_cast<std::size_t>((i * s.n + j) * s.n + k)] = spec.algebra.constant(i, j, k);
  s.j = spec.j.matrix();
  s.g = spec.metric.g();
  return s;
}

double christoffel_gap(const RealConnection& conn, const Christoffel& gamma) {
  const int n = conn.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        worst = std::max(worst, std::abs(conn.christoffel(i, j, k) - gamma[static_cast<std::size_t>((i * n + j) * n + k)]));
  return worst;
}

struct Case {
  Rng rng;
  AlmostHermitianSpec spec;

  explicit Case(int index, bool attach = true)
      : rng(kBaseSeed + static_cast<std::uint64_t>(index)),
        spec(make(rng, attach)) {}

  static AlmostHermitianSpec make(Rng& rng, bool attach) {
    const auto alg = random_algebra(rng, FrameTag("e"));
    return random_hermitian_structure(rng, alg, attach);
  }
};

}  // namespace

TEST(Properties, GeneratedAlgebrasSatisfyJacobiAndDSquared) {
  for (int c = 0; c < kCases; ++c) {
    Case k(c);
    const auto& alg = k.spec.algebra;
    const auto jac = validate_algebra(alg);
    EXPECT_TRUE(jac.passed) << "seed " << k.rng.seed() << " residual " << jac.max_residual;
    const int n = alg.dim();
    for (int deg = 1; deg < n; ++deg) {
      InvariantForm f(n, deg, alg.frame());
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<int> idx;
        for (int i = 0; i < n && static_cast<int>(idx.size()) < deg; ++i) {
          if (k.rng.coin() || n - i == deg - static_cast<int>(idx.size())) idx.push_back(i);
        }
        f += Complex(k.rng.uniform(-1, 1), k.rng.uniform(-1, 1)) * InvariantForm::monomial(n, idx, alg.frame());
      }
      const auto dd = exterior_derivative(exterior_derivative(f, alg), alg);
      EXPECT_LT(dd.max_abs(), 1e-12) << "seed " << k.rng.seed() << " degree " << deg;
    }
  }
}

TEST(Properties, ConnectionsMatchOracle) {
  for (int c = 0; c < kCases; ++c) {
    Case k(c);
    const auto& s = k.spec;
    const DenseStructure d = dense(s);
    const auto lc = levi_civita(s.metric, s.algebra);
    const auto can = canonical_connection(lc, s.j);
    const auto glc = oracle_levi_civita(d);
    EXPECT_LT(christoffel_gap(lc, glc), 1e-10) << "seed " << k.rng.seed();
    EXPECT_LT(christoffel_gap(can, oracle_canonical(d, glc)), 1e-10) << "seed " << k.rng.seed();
    EXPECT_LT(metric_residual(lc, s.metric), 1e-10);
    EXPECT_LT(torsion_free_residual(lc, s.algebra), 1e-10);
    EXPECT_LT(metric_residual(can, s.metric), 1e-10);
    EXPECT_LT(complex_structure_residual(can, s.j), 1e-10);
  }
}

TEST(Properties, RealCurvatureMatchesOracle) {
  for (int c = 0; c < kCases; ++c) {
    Case k(c);
    const auto onb = to_orthonormal(k.spec);
    const DenseStructure d = dense(onb);
    const auto can = canonical_connection(levi_civita(onb.metric, onb.algebra), onb.j);
    const auto rc = real_curvature(can, onb.algebra, onb.metric);
    const auto gamma = oracle_canonical(d, oracle_levi_civita(d));
    const auto r = oracle_curvature(d, gamma);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) worst = std::max(worst, std::abs(rc.components[i] - r[i]));
    EXPECT_LT(worst, 1e-9) << "seed " << k.rng.seed();
    const Eigen::MatrixXd ric = oracle_ricci(d, r);
    EXPECT_LT((rc.ricci - ric).cwiseAbs().maxCoeff(), 1e-9) << "seed " << k.rng.seed();
    EXPECT_NEAR(rc.scal, oracle_scal(d, ric), 1e-9) << "seed " << k.rng.seed();
  }
}

TEST(Properties, ScalarCurvatureIgnoresOrthonormalFrameChoice) {
  for (int c = 0; c < kCases; ++c) {
    Case with(c, true);
    Case without(c, false);
    const auto scal = [](const AlmostHermitianSpec& spec) {
      const auto onb = to_orthonormal(spec);
      const auto can = canonical_connection(levi_civita(onb.metric, onb.algebra), onb.j);
      const auto cf = unitary_frame(onb.metric, onb.j, onb.algebra);
      const auto cc = curvature(connection_forms(can, cf), onb.algebra, cf);
      return std::pair{real_curvature(can, onb.algebra, onb.metric).scal, cc.scal};
    };
    const auto [r1, c1] = scal(with.spec);
    const auto [r2, c2] = scal(without.spec);
    EXPECT_NEAR(r1, r2, 1e-9) << "seed " << with.rng.seed();
    EXPECT_LT(std::abs(c1 - c2), 1e-9) << "seed " << with.rng.seed();
  }
}

TEST(Properties, ComplexCurvatureMatchesOracle) {
  for (int c = 0; c < kCases; ++c) {
    Case k(c);
    const auto onb = to_orthonormal(k.spec);
    const DenseStructure d = dense(onb);
    const auto can = canonical_connection(levi_civita(onb.metric, onb.algebra), onb.j);
    const auto cf = unitary_frame(onb.metric, onb.j, onb.algebra);
    EXPECT_LT(cf.unitarity_residual(onb.metric), 1e-12);
    const auto theta = connection_forms(can, cf);
    EXPECT_LT(skew_hermitian_residual(theta.forms, theta.n), 1e-10) << "seed " << k.rng.seed();
    const auto cc = curvature(theta, onb.algebra, cf);
    EXPECT_LT(skew_hermitian_residual(cc.psi, cc.n), 1e-9) << "seed " << k.rng.seed();
    EXPECT_LT(std::abs(cc.scal - cc.scal_direct), 1e-9);
    const auto ric = oracle_complex_ricci(d, oracle_canonical(d, oracle_levi_civita(d)), cf.vectors());
    EXPECT_LT((cc.ricci - ric).cwiseAbs().maxCoeff(), 1e-9) << "seed " << k.rng.seed();
  }
}

TEST(Properties, NijenhuisMatchesOracle) {
  for (int c = 0; c < kCases; ++c) {
    Case k(c);
    const auto& s = k.spec;
    const int n = s.algebra.dim();
    const auto ref = oracle_nijenhuis(dense(s));
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const auto v = nijenhuis_apply(s.j, s.algebra, ComplexVector::Unit(n, i), ComplexVector::Unit(n, j));
        for (int kk = 0; kk < n; ++kk) {
          worst = std::max(worst, std::abs(v(kk) - ref[static_cast<std::size_t>((kk * n + i) * n + j)]));
        }
      }
    }
    EXPECT_LT(worst, 1e-10) << "seed " << k.rng.seed();
  }
}

TEST(Properties, NakamuraDeformationsAreRicciFlat) {
  Rng rng(kBaseSeed);
  for (int c = 0; c < 12; ++c) {
    DeformationParameter t = random_deformation(rng);
    if (c % 3 == 0) t[3] = 0.0;
    EXPECT_LT(coefficient_identity_residual(deformation_coefficients(t)), 1e-12);
    const auto spec = to_orthonormal(nakamura(t));
    const auto can = canonical_connection(levi_civita(spec.metric, spec.algebra), spec.j);
    const auto cf = unitary_frame(spec.metric, spec.j, spec.algebra);
    const auto cc = curvature(connection_forms(can, cf), spec.algebra, cf);
    EXPECT_LT(cc.ricci.cwiseAbs().maxCoeff(), 1e-9) << "t = " << t[0] << "," << t[1] << "," << t[2] << "," << t[3];
  }
}
