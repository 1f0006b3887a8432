#include "generators.hpp"

#include <cmath>
#include <numbers>

namespace akgeo::testing {

InvariantAlgebra random_two_step_nilpotent(Rng& rng, int dim, const FrameTag& frame) {
  const int centre = dim <= 2 ? 1 : rng.integer(1, dim / 2);
  const int top = dim - centre;
  std::vector<StructureConstant> c;
  for (int i = 0; i < top; ++i) {
    for (int j = i + 1; j < top; ++j) {
      for (int k = top; k < dim; ++k) {
        if (rng.coin()) c.push_back({i, j, k, std::round(rng.uniform(-3.0, 3.0) * 4.0) / 4.0});
      }
    }
  }
  return InvariantAlgebra(dim, c, frame);
}

InvariantAlgebra random_almost_abelian(Rng& rng, int dim, const FrameTag& frame) {
  std::vector<StructureConstant> c;
  for (int j = 1; j < dim; ++j) {
    for (int k = 1; k < dim; ++k) {
      if (rng.integer(0, 2) == 0) c.push_back({0, j, k, rng.uniform(-1.5, 1.5)});
    }
  }
  return InvariantAlgebra(dim, c, frame);
}

InvariantAlgebra random_algebra(Rng& rng, const FrameTag& frame) {
  const int dim = 2 * rng.integer(1, 3);
  return rng.coin() ? random_two_step_nilpotent(rng, dim, frame)
                    : random_almost_abelian(rng, dim, frame);
}

RealMatrix random_invertible(Rng& rng, int dim, double scale) {
  for (;;) {
    RealMatrix p = RealMatrix::Identity(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) p(i, j) += scale * rng.uniform(-1.0, 1.0);
    }
    Eigen::JacobiSVD<RealMatrix> svd(p);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) > 0.2 && s(0) / s(s.size() - 1) < 20.0) return p;
  }
}

AlmostHermitianSpec random_hermitian_structure(Rng& rng, const InvariantAlgebra& alg,
                                               bool attach_change) {
  const int n = alg.dim();
  const RealMatrix p = random_invertible(rng, n);
  const RealMatrix pinv = p.inverse();
  RealMatrix jm = p * standard_complex_structure(n) * pinv;
  AlmostComplexStructure j(jm, alg.frame());
  RealMatrix g = pinv.transpose() * pinv;
  g = 0.5 * (g + g.transpose()).eval();
  MetricData metric = MetricData::from_metric(g, j);
  std::optional<FrameChange> fc;
  if (attach_change) fc = FrameChange(p, alg.frame(), FrameTag(alg.frame().name + "'"));
  return AlmostHermitianSpec{"random", alg, std::move(j), std::move(metric), fc, {},
                             FamilyKind::generic, std::nullopt, std::nullopt};
}

DeformationParameter random_deformation(Rng& rng, double radius) {
  auto disc = [&] {
    const double r = radius * std::sqrt(rng.uniform(0.0, 1.0));
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return std::pair{r * std::cos(phi), r * std::sin(phi)};
  };
  const auto [a, b] = disc();
  const auto [c, d] = disc();
  return {a, b, c, d};
}

}  // namespace akgeo::testing
