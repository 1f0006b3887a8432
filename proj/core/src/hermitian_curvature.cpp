#include <cmath>

#include "akgeo/hermitian_geometry.hpp"
#include "mask_iteration.hpp"

namespace akgeo {

namespace {

void require_same_frame(const FrameTag& a, const FrameTag& b, const char* what) {
  if (a != b) {
    throw FrameMismatch(std::string(what) + ": frames '" + a.name + "' and '" + b.name +
                        "' differ");
  }
}

}  // namespace

ComplexFrameData::ComplexFrameData(ComplexMatrix vectors, FrameTag frame)
    : vectors_(std::move(vectors)), frame_(std::move(frame)) {
  const auto n = vectors_.cols();
  if (n == 0 || vectors_.rows() != 2 * n) {
    throw DimensionError("complex frame needs 2n x n vector matrix");
  }
  ComplexMatrix basis(2 * n, 2 * n);
  basis << vectors_, vectors_.conjugate();
  Eigen::FullPivLU<ComplexMatrix> lu(basis);
  if (!lu.isInvertible()) {
    throw ValidationError("z and conj(z) do not span the complexified tangent space", 0.0);
  }
  coframe_ = lu.inverse().topRows(n);
}

InvariantForm ComplexFrameData::coform(int i) const {
  return InvariantForm::covector(coframe_.row(i).transpose(), frame_);
}

InvariantForm ComplexFrameData::conj_coform(int i) const { return coform(i).conj(); }

ComplexMatrix ComplexFrameData::projector_10() const { return vectors_ * coframe_; }

FrameChange ComplexFrameData::complex_basis(const FrameTag& to) const {
  const auto n = vectors_.cols();
  ComplexMatrix basis(2 * n, 2 * n);
  basis << vectors_, vectors_.conjugate();
  return FrameChange(basis, frame_, to);
}

std::vector<std::string> ComplexFrameData::complex_labels() const {
  std::vector<std::string> out;
  for (int i = 1; i <= complex_dim(); ++i) out.push_back("z^" + std::to_string(i));
  for (int i = 1; i <= complex_dim(); ++i) out.push_back("zb^" + std::to_string(i));
  return out;
}

double ComplexFrameData::unitarity_residual(const MetricData& metric) const {
  require_same_frame(frame_, metric.frame(), "unitarity_residual");
  const ComplexMatrix g = metric.g().cast<Complex>();
  const ComplexMatrix h = vectors_.transpose() * g * vectors_.conjugate();
  return (h - ComplexMatrix::Identity(h.rows(), h.cols())).cwiseAbs().maxCoeff();
}

ComplexFrameData unitary_frame(const MetricData& metric, const AlmostComplexStructure& j,
                               const InvariantAlgebra& alg) {
  require_same_frame(metric.frame(), j.frame(), "unitary_frame");
  require_same_frame(metric.frame(), alg.frame(), "unitary_frame");
  const int dim = metric.dim();
  RealMatrix f = RealMatrix::Identity(dim, dim);
  if (!(metric.is_orthonormal() && j.is_standard())) {
    f = adapted_orthonormal_frame(metric, j, FrameTag(metric.frame().name + "/adapted")).real_matrix();
  }
  const int n = dim / 2;
  ComplexMatrix z(dim, n);
  for (int c = 0; c < n; ++c) {
    z.col(c) = (f.col(2 * c).cast<Complex>() - kI * f.col(2 * c + 1).cast<Complex>()) / std::sqrt(2.0);
  }
  return ComplexFrameData(std::move(z), metric.frame());
}

ConnectionMatrix connection_forms(const RealConnection& conn, const ComplexFrameData& cf) {
  require_same_frame(conn.frame(), cf.frame(), "connection_forms");
  const int dim = conn.dim();
  const int n = cf.complex_dim();
  const ComplexMatrix& z = cf.vectors();
  const ComplexMatrix p01 = ComplexMatrix::Identity(dim, dim) - cf.projector_10();
  double leak = 0.0;
  std::vector<ComplexMatrix> moved;  // z^i(nabla_{E_k} z_j) at (i, j)
  moved.reserve(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) {
    const ComplexMatrix az = conn.along(k).cast<Complex>() * z;
    leak = std::max(leak, (p01 * az).cwiseAbs().maxCoeff());
    moved.push_back(cf.coframe() * az);
  }
  if (leak >= tol::kConnection) {
    throw ValidationError("connection does not preserve T^{1,0}: nabla J != 0", leak);
  }
  ConnectionMatrix theta;
  theta.n = n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ComplexVector coeffs(dim);
      for (int k = 0; k < dim; ++k) coeffs(k) = moved[static_cast<std::size_t>(k)](i, j);
      theta.forms.push_back(InvariantForm::covector(coeffs, conn.frame()).normalized());
    }
  }
  return theta;
}

std::vector<InvariantForm> real_connection_forms(const RealConnection& conn) {
  const int n = conn.dim();
  std::vector<InvariantForm> out;
  out.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ComplexVector coeffs(n);
      for (int k = 0; k < n; ++k) coeffs(k) = conn.christoffel(k, j, i);
      out.push_back(InvariantForm::covector(coeffs, conn.frame()).normalized());
    }
  }
  return out;
}

std::vector<InvariantForm> torsion_forms(const ConnectionMatrix& theta, const ComplexFrameData& cf,
                                         const InvariantAlgebra& alg) {
  require_same_frame(cf.frame(), alg.frame(), "torsion_forms");
  const int n = theta.n;
  std::vector<InvariantForm> out;
  for (int i = 0; i < n; ++i) {
    InvariantForm t = exterior_derivative(cf.coform(i), alg);
    for (int j = 0; j < n; ++j) t += wedge(theta(i, j), cf.coform(j));
    out.push_back(t.normalized());
  }
  return out;
}

double skew_hermitian_residual(std::span<const InvariantForm> forms, int n) {
  if (static_cast<int>(forms.size()) != n * n) {
    throw DimensionError("skew_hermitian_residual: expected n*n forms");
  }
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& a = forms[static_cast<std::size_t>(i * n + j)];
      const auto& b = forms[static_cast<std::size_t>(j * n + i)];
      worst = std::max(worst, (a + b.conj()).max_abs());
    }
  }
  return worst;
}

InvariantForm type_component(const InvariantForm& form, const ComplexMatrix& projector_10, int p,
                             int q) {
  const int deg = form.degree();
  const int dim = form.dim();
  if (p < 0 || q < 0 || p + q != deg) {
    throw DimensionError("type (" + std::to_string(p) + "," + std::to_string(q) +
                         ") does not match degree " + std::to_string(deg));
  }
  if (projector_10.rows() != dim || projector_10.cols() != dim) {
    throw DimensionError("type_component: projector has the wrong size");
  }
  const ComplexMatrix projector_01 = ComplexMatrix::Identity(dim, dim) - projector_10;
  InvariantForm out(dim, deg, form.frame());
  std::vector<ComplexVector> args(static_cast<std::size_t>(deg));
  detail::for_each_mask(dim, deg, [&](InvariantForm::Mask m) {
    const auto idx = mask_indices(m);
    Complex total{};
    // Sum over which p argument slots receive the (1,0) projection.
    detail::for_each_mask(deg, p, [&](InvariantForm::Mask slots) {
      for (int r = 0; r < deg; ++r) {
        const auto& proj = (slots >> r) & 1U ? projector_10 : projector_01;
        args[static_cast<std::size_t>(r)] = proj.col(idx[static_cast<std::size_t>(r)]);
      }
      total += form.evaluate(args);
    });
    out.add(m, total);
  });
  return out.normalized();
}

InvariantForm type_component(const InvariantForm& form, const AlmostComplexStructure& j, int p,
                             int q) {
  require_same_frame(form.frame(), j.frame(), "type_component");
  return type_component(form, j.projector_10(), p, q);
}

TypeParts type_decompose(const InvariantForm& form, const AlmostComplexStructure& j) {
  if (form.degree() != 2) throw DimensionError("type_decompose expects a 2-form");
  return {type_component(form, j, 2, 0), type_component(form, j, 1, 1),
          type_component(form, j, 0, 2)};
}

VectorTypeParts type_decompose(const VectorValuedForm& form, const AlmostComplexStructure& j) {
  if (form.degree() != 2) throw DimensionError("type_decompose expects a 2-form");
  require_same_frame(form.frame(), j.frame(), "type_decompose");
  const int n = form.dim();
  const ComplexMatrix p10 = j.projector_10();
  std::vector<InvariantForm> f20, f11, f02;
  for (int k = 0; k < n; ++k) {
    InvariantForm value(n, 2, form.frame());
    for (int m = 0; m < n; ++m) {
      if (p10(k, m) != Complex{}) value += p10(k, m) * form.component(m);
    }
    f20.push_back(type_component(value, p10, 2, 0));
    f11.push_back(type_component(value, p10, 1, 1));
    f02.push_back(type_component(value, p10, 0, 2));
  }
  return {VectorValuedForm(std::move(f20)), VectorValuedForm(std::move(f11)),
          VectorValuedForm(std::move(f02))};
}

InvariantForm dbar(const InvariantForm& form, int p, const AlmostComplexStructure& j,
                   const InvariantAlgebra& alg) {
  const int q = form.degree() - p;
  if (p < 0 || q < 0) throw DimensionError("dbar: type does not match degree");
  return type_component(exterior_derivative(form, alg), j, p, q + 1);
}

ComplexCurvature curvature(const ConnectionMatrix& theta, const InvariantAlgebra& alg,
                           const ComplexFrameData& cf) {
  require_same_frame(cf.frame(), alg.frame(), "curvature");
  const int n = theta.n;
  if (n != cf.complex_dim()) throw DimensionError("curvature: connection and frame sizes differ");
  ComplexCurvature out;
  out.n = n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      InvariantForm psi = exterior_derivative(theta(i, j), alg);
      for (int k = 0; k < n; ++k) psi += wedge(theta(i, k), theta(k, j));
      out.psi.push_back(psi.normalized());
    }
  }

  const ComplexMatrix p10 = cf.projector_10();
  out.coefficients.assign(static_cast<std::size_t>(n * n * n * n), Complex{});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const InvariantForm f11 = type_component(out.form(i, j), p10, 1, 1);
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          out.coefficients[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)] =
              f11.evaluate(cf.vector(k), cf.conj_vector(l));
        }
      }
    }
  }

  out.ricci = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      for (int i = 0; i < n; ++i) out.ricci(k, l) += out.coefficient(i, i, k, l);
    }
  }
  out.scal = out.ricci.trace();

  // Independent path: no type split, Psi^i_i straight on (z_k, conj z_k).
  out.scal_direct = Complex{};
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) out.scal_direct += out.form(i, i).evaluate(cf.vector(k), cf.conj_vector(k));
  }
  if (std::abs(out.scal - out.scal_direct) >= tol::kComposite) {
    throw InternalInconsistency("complex scalar curvature paths disagree");
  }
  return out;
}

RealCurvature real_curvature(const RealConnection& conn, const InvariantAlgebra& alg,
                             const MetricData& metric) {
  require_same_frame(conn.frame(), alg.frame(), "real_curvature");
  require_same_frame(metric.frame(), alg.frame(), "real_curvature");
  if (!metric.is_orthonormal()) {
    const int d = metric.dim();
    throw ValidationError(
        "real curvature needs an orthonormal frame",
        (metric.g() - RealMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
  }
  const int n = conn.dim();
  const auto w = real_connection_forms(conn);
  RealCurvature out;
  out.dim = n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      InvariantForm om = exterior_derivative(w[static_cast<std::size_t>(i * n + j)], alg);
      for (int k = 0; k < n; ++k) {
        om += wedge(w[static_cast<std::size_t>(i * n + k)], w[static_cast<std::size_t>(k * n + j)]);
      }
      out.omega.push_back(om.normalized());
    }
  }

  out.components.assign(static_cast<std::size_t>(n * n * n * n), 0.0);
  double mismatch = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      // R(E_k, E_l) = [A_k, A_l] - A_{[E_k, E_l]}
      RealMatrix r = conn.along(k) * conn.along(l) - conn.along(l) * conn.along(k);
      for (int m = 0; m < n; ++m) r -= alg.constant(k, l, m) * conn.along(m);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const Complex v = k == l ? Complex{} : out.form(i, j).coefficient({k, l});
          mismatch = std::max(mismatch, std::abs(v - r(i, j)));
          out.components[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)] = v.real();
        }
      }
    }
  }
  if (mismatch >= tol::kComposite) {
    throw InternalInconsistency("curvature form and commutator curvature disagree");
  }

  out.ricci = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) out.ricci(i, j) += out.component(k, i, k, j);
    }
  }
  out.scal = out.ricci.trace();
  return out;
}

}  // namespace akgeo
