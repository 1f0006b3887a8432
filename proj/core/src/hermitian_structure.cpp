#include <cmath>
#include <sstream>

#include "akgeo/hermitian_geometry.hpp"

namespace akgeo {

namespace {

void require_same_frame(const FrameTag& a, const FrameTag& b, const char* what) {
  if (a != b) {
    throw FrameMismatch(std::string(what) + ": frames '" + a.name + "' and '" + b.name +
                        "' differ");
  }
}

double max_abs(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

AlmostComplexStructure::AlmostComplexStructure(RealMatrix j, FrameTag frame)
    : j_(std::move(j)), frame_(std::move(frame)) {
  if (j_.rows() != j_.cols() || j_.rows() == 0 || j_.rows() % 2 != 0) {
    throw DimensionError("J must be a square matrix of positive even size");
  }
  const double r = max_abs(RealMatrix(j_ * j_ + RealMatrix::Identity(j_.rows(), j_.cols())));
  if (r >= tol::kFrame) throw ValidationError("J^2 != -I", r);
}

ComplexMatrix AlmostComplexStructure::projector_10() const {
  const auto n = j_.rows();
  return 0.5 * (ComplexMatrix::Identity(n, n) - kI * j_.cast<Complex>());
}

ComplexMatrix AlmostComplexStructure::projector_01() const {
  const auto n = j_.rows();
  return 0.5 * (ComplexMatrix::Identity(n, n) + kI * j_.cast<Complex>());
}

bool AlmostComplexStructure::is_standard(double threshold) const {
  return max_abs(RealMatrix(j_ - standard_complex_structure(dim()))) < threshold;
}

AlmostComplexStructure AlmostComplexStructure::in_frame(const FrameChange& fc) const {
  require_same_frame(frame_, fc.from(), "AlmostComplexStructure::in_frame");
  return AlmostComplexStructure(change_frame_endomorphism(j_, fc), fc.to());
}

RealMatrix standard_complex_structure(int dim) {
  if (dim <= 0 || dim % 2 != 0) throw DimensionError("standard J needs a positive even dimension");
  RealMatrix j = RealMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; i += 2) {
    j(i + 1, i) = 1.0;
    j(i, i + 1) = -1.0;
  }
  return j;
}

MetricData::MetricData(RealMatrix g, InvariantForm omega, FrameTag frame)
    : g_(std::move(g)), omega_(std::move(omega)), frame_(std::move(frame)) {}

MetricData MetricData::from_metric(const RealMatrix& g, const AlmostComplexStructure& j) {
  if (g.rows() != j.dim() || g.cols() != j.dim()) {
    throw DimensionError("metric and J have different sizes");
  }
  const double asym = max_abs(RealMatrix(g - g.transpose()));
  if (asym >= tol::kFrame) throw ValidationError("metric is not symmetric", asym);
  const RealMatrix& jm = j.matrix();
  const double compat = max_abs(RealMatrix(jm.transpose() * g * jm - g));
  if (compat >= tol::kFrame) throw ValidationError("g(JX, JY) != g(X, Y)", compat);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(g);
  const double min_eig = es.eigenvalues().minCoeff();
  if (!(min_eig > tol::kPositiveDefinite)) {
    throw ValidationError("metric is not positive definite", min_eig);
  }
  // omega(E_x, E_y) = g(J E_x, E_y)
  const RealMatrix om = jm.transpose() * g;
  return MetricData(g, InvariantForm::from_matrix(om.cast<Complex>(), j.frame()), j.frame());
}

MetricData MetricData::from_symplectic(const InvariantForm& omega,
                                       const AlmostComplexStructure& j) {
  require_same_frame(omega.frame(), j.frame(), "MetricData::from_symplectic");
  if (omega.degree() != 2 || omega.dim() != j.dim()) {
    throw DimensionError("fundamental form must be a 2-form of the same dimension as J");
  }
  const ComplexMatrix om = omega.as_matrix();
  const double im = max_abs(RealMatrix(om.imag()));
  if (im >= tol::kFrame) throw ValidationError("fundamental form is not real", im);
  RealMatrix g = om.real() * j.matrix();
  // Symmetrize only float noise; real asymmetry is reported by from_metric.
  const double asym = max_abs(RealMatrix(g - g.transpose()));
  if (asym >= tol::kFrame) {
    throw ValidationError("omega is not J-invariant: omega(X, JY) is not symmetric", asym);
  }
  g = 0.5 * (g + g.transpose()).eval();
  return from_metric(g, j);
}

bool MetricData::is_orthonormal(double threshold) const {
  return max_abs(RealMatrix(g_ - RealMatrix::Identity(dim(), dim()))) < threshold;
}

MetricData MetricData::in_frame(const FrameChange& fc, const AlmostComplexStructure& j_new) const {
  require_same_frame(frame_, fc.from(), "MetricData::in_frame");
  require_same_frame(j_new.frame(), fc.to(), "MetricData::in_frame");
  RealMatrix g = change_frame_bilinear(g_, fc);
  g = 0.5 * (g + g.transpose()).eval();
  return from_metric(g, j_new);
}

RealConnection::RealConnection(std::vector<RealMatrix> along, ConnectionKind kind, FrameTag frame)
    : along_(std::move(along)), kind_(kind), frame_(std::move(frame)) {
  const auto n = static_cast<Eigen::Index>(along_.size());
  for (const auto& a : along_) {
    if (a.rows() != n || a.cols() != n) throw DimensionError("connection matrices must be n x n");
  }
}

ComplexMatrix RealConnection::along(const ComplexVector& x) const {
  if (x.size() != dim()) throw DimensionError("RealConnection::along: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) {
    if (x(i) != Complex{}) out += x(i) * along_[static_cast<std::size_t>(i)].cast<Complex>();
  }
  return out;
}

ComplexVector nijenhuis_apply(const AlmostComplexStructure& j, const InvariantAlgebra& alg,
                              const ComplexVector& x, const ComplexVector& y) {
  require_same_frame(j.frame(), alg.frame(), "nijenhuis");
  const ComplexMatrix jc = j.matrix().cast<Complex>();
  const ComplexVector jx = jc * x;
  const ComplexVector jy = jc * y;
  return bracket(alg, jx, jy) - jc * bracket(alg, jx, y) - jc * bracket(alg, x, jy) -
         bracket(alg, x, y);
}

VectorValuedForm nijenhuis(const AlmostComplexStructure& j, const InvariantAlgebra& alg) {
  const int n = alg.dim();
  std::vector<InvariantForm> comps(static_cast<std::size_t>(n),
                                   InvariantForm(n, 2, alg.frame()));
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const ComplexVector v = nijenhuis_apply(j, alg, ComplexVector::Unit(n, a),
                                              ComplexVector::Unit(n, b));
      const InvariantForm::Mask m = (InvariantForm::Mask{1} << a) | (InvariantForm::Mask{1} << b);
      for (int k = 0; k < n; ++k) comps[static_cast<std::size_t>(k)].add(m, v(k));
    }
  }
  for (auto& c : comps) c = c.normalized();
  return VectorValuedForm(std::move(comps));
}

RealConnection levi_civita(const MetricData& metric, const InvariantAlgebra& alg) {
  require_same_frame(metric.frame(), alg.frame(), "levi_civita");
  const int n = alg.dim();
  const RealMatrix& g = metric.g();
  Eigen::LDLT<RealMatrix> solver(g);
  // gb(i, j, z) = g([E_i, E_j], E_z)
  auto gb = [&](int i, int j, int z) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += alg.constant(i, j, k) * g(k, z);
    return s;
  };
  std::vector<RealMatrix> along(static_cast<std::size_t>(n), RealMatrix::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      RealVector rhs(n);
      for (int z = 0; z < n; ++z) rhs(z) = 0.5 * (gb(i, j, z) - gb(j, z, i) + gb(z, i, j));
      along[static_cast<std::size_t>(i)].col(j) = solver.solve(rhs);
    }
  }
  return RealConnection(std::move(along), ConnectionKind::levi_civita, alg.frame());
}

RealConnection canonical_connection(const RealConnection& lc, const AlmostComplexStructure& j) {
  require_same_frame(lc.frame(), j.frame(), "canonical_connection");
  const RealMatrix& jm = j.matrix();
  std::vector<RealMatrix> along;
  along.reserve(static_cast<std::size_t>(lc.dim()));
  for (int i = 0; i < lc.dim(); ++i) along.push_back(0.5 * (lc.along(i) - jm * lc.along(i) * jm));
  return RealConnection(std::move(along), ConnectionKind::canonical, lc.frame());
}

double metric_residual(const RealConnection& conn, const MetricData& metric) {
  require_same_frame(conn.frame(), metric.frame(), "metric_residual");
  double worst = 0.0;
  for (int i = 0; i < conn.dim(); ++i) {
    const RealMatrix& a = conn.along(i);
    worst = std::max(worst, max_abs(RealMatrix(a.transpose() * metric.g() + metric.g() * a)));
  }
  return worst;
}

double complex_structure_residual(const RealConnection& conn, const AlmostComplexStructure& j) {
  require_same_frame(conn.frame(), j.frame(), "complex_structure_residual");
  double worst = 0.0;
  for (int i = 0; i < conn.dim(); ++i) {
    const RealMatrix& a = conn.along(i);
    worst = std::max(worst, max_abs(RealMatrix(a * j.matrix() - j.matrix() * a)));
  }
  return worst;
}

double torsion_free_residual(const RealConnection& conn, const InvariantAlgebra& alg) {
  require_same_frame(conn.frame(), alg.frame(), "torsion_free_residual");
  const int n = conn.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double t = conn.christoffel(i, j, k) - conn.christoffel(j, i, k) - alg.constant(i, j, k);
        worst = std::max(worst, std::abs(t));
      }
    }
  }
  return worst;
}

VectorValuedForm real_torsion(const RealConnection& conn, const InvariantAlgebra& alg) {
  require_same_frame(conn.frame(), alg.frame(), "real_torsion");
  const int n = conn.dim();
  std::vector<InvariantForm> comps(static_cast<std::size_t>(n), InvariantForm(n, 2, alg.frame()));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const InvariantForm::Mask m = (InvariantForm::Mask{1} << i) | (InvariantForm::Mask{1} << j);
      for (int k = 0; k < n; ++k) {
        const double t =
            conn.christoffel(i, j, k) - conn.christoffel(j, i, k) - alg.constant(i, j, k);
        comps[static_cast<std::size_t>(k)].add(m, t);
      }
    }
  }
  for (auto& c : comps) c = c.normalized();
  return VectorValuedForm(std::move(comps));
}

ClassificationFlags classify(const AlmostComplexStructure& j, const MetricData& metric,
                             const InvariantAlgebra& alg) {
  require_same_frame(j.frame(), alg.frame(), "classify");
  require_same_frame(metric.frame(), alg.frame(), "classify");
  ClassificationFlags flags;
  flags.nijenhuis_norm = nijenhuis(j, alg).max_abs();
  flags.domega_norm = exterior_derivative(metric.omega(), alg).max_abs();

  // Quasi-Kahler: (nabla_X J)Y + (nabla_{JX} J)(JY) = 0
  const RealConnection lc = levi_civita(metric, alg);
  const int n = alg.dim();
  const RealMatrix& jm = j.matrix();
  auto nabla_j = [&](const RealMatrix& a) -> RealMatrix { return a * jm - jm * a; };
  double worst = 0.0;
  for (int x = 0; x < n; ++x) {
    RealMatrix a_jx = RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) a_jx += jm(i, x) * lc.along(i);
    const RealMatrix r = nabla_j(lc.along(x)) + nabla_j(a_jx) * jm;
    worst = std::max(worst, max_abs(r));
  }
  flags.gauduchon_residual = worst;

  flags.integrable = flags.nijenhuis_norm < tol::kConnection;
  flags.almost_kahler = flags.domega_norm < tol::kConnection;
  flags.quasi_kahler = flags.gauduchon_residual < tol::kConnection;
  return flags;
}

FrameChange adapted_orthonormal_frame(const MetricData& metric, const AlmostComplexStructure& j,
                                      const FrameTag& to) {
  require_same_frame(metric.frame(), j.frame(), "adapted_orthonormal_frame");
  const int n = metric.dim();
  const RealMatrix& g = metric.g();
  RealMatrix f(n, n);
  int filled = 0;
  for (int k = 0; k < n && filled < n; ++k) {
    RealVector v = RealVector::Unit(n, k);
    for (int m = 0; m < filled; ++m) v -= (v.dot(g * f.col(m))) * f.col(m);
    const double norm = std::sqrt(v.dot(g * v));
    if (norm < 1e-8) continue;
    v /= norm;
    // span(f) is J-invariant and g is J-invariant, so Jv is already orthogonal to it and to v.
    f.col(filled++) = v;
    f.col(filled++) = j.matrix() * v;
  }
  if (filled != n) throw ValidationError("could not complete a J-adapted orthonormal frame", filled);
  return FrameChange(f, metric.frame(), to);
}

}  // namespace akgeo
