#pragma once

// Almost-Hermitian geometry of invariant structures: Nijenhuis tensor,
// Levi-Civita and canonical connections, connection/torsion/curvature forms in
// a unitary coframe, type decomposition, Ricci and scalar curvatures.

#include <span>
#include <vector>

#include "akgeo/invariant_algebra.hpp"

namespace akgeo {

/// J acting on frame coefficient vectors: column i holds J E_i.
class AlmostComplexStructure {
 public:
  /// Throws ValidationError unless J^2 = -I within 1e-12.
  AlmostComplexStructure(RealMatrix j, FrameTag frame);

  int dim() const noexcept { return static_cast<int>(j_.rows()); }
  const RealMatrix& matrix() const noexcept { return j_; }
  const FrameTag& frame() const noexcept { return frame_; }

  /// pi^{1,0} = (I - iJ)/2 and pi^{0,1} = (I + iJ)/2 on vectors.
  ComplexMatrix projector_10() const;
  ComplexMatrix projector_01() const;

  /// J E_{2i-1} = E_{2i} for every i (1-based).
  bool is_standard(double threshold = tol::kFrame) const;

  AlmostComplexStructure in_frame(const FrameChange& fc) const;

 private:
  RealMatrix j_;
  FrameTag frame_;
};

/// The block-standard structure J E_{2i-1} = E_{2i}.
RealMatrix standard_complex_structure(int dim);

/// Compatible triple (g, J, omega) with omega(X, Y) = g(JX, Y).
class MetricData {
 public:
  static MetricData from_metric(const RealMatrix& g, const AlmostComplexStructure& j);
  /// g(X, Y) = omega(X, JY)
  static MetricData from_symplectic(const InvariantForm& omega, const AlmostComplexStructure& j);

  const RealMatrix& g() const noexcept { return g_; }
  const InvariantForm& omega() const noexcept { return omega_; }
  const FrameTag& frame() const noexcept { return frame_; }
  int dim() const noexcept { return static_cast<int>(g_.rows()); }

  bool is_orthonormal(double threshold = tol::kFrame) const;
  MetricData in_frame(const FrameChange& fc, const AlmostComplexStructure& j_new) const;

 private:
  MetricData(RealMatrix g, InvariantForm omega, FrameTag frame);
  RealMatrix g_;
  InvariantForm omega_;
  FrameTag frame_;
};

enum class ConnectionKind { levi_civita, canonical };

/// Invariant connection on TM. along(i) is the matrix of nabla_{E_i}: entry
/// (k, j) is Gamma^k_{ij} = e^k(nabla_{E_i} E_j).
class RealConnection {
 public:
  RealConnection(std::vector<RealMatrix> along, ConnectionKind kind, FrameTag frame);

  int dim() const noexcept { return static_cast<int>(along_.size()); }
  ConnectionKind kind() const noexcept { return kind_; }
  const FrameTag& frame() const noexcept { return frame_; }
  const RealMatrix& along(int i) const { return along_.at(static_cast<std::size_t>(i)); }
  /// Gamma^k_{ij}
  double christoffel(int i, int j, int k) const { return along(i)(k, j); }
  /// Matrix of nabla_X for a complexified constant-coefficient X.
  ComplexMatrix along(const ComplexVector& x) const;

 private:
  std::vector<RealMatrix> along_;
  ConnectionKind kind_;
  FrameTag frame_;
};

struct ClassificationFlags {
  bool integrable = false;
  bool almost_kahler = false;
  bool quasi_kahler = false;
  double nijenhuis_norm = 0.0;
  double domega_norm = 0.0;
  double gauduchon_residual = 0.0;
};

/// Unitary (1,0)-frame z_1..z_n expressed over a real frame, with dual coframe.
class ComplexFrameData {
 public:
  /// vectors: 2n x n, column j is z_j. The coframe is dual to {z, conj(z)}.
  ComplexFrameData(ComplexMatrix vectors, FrameTag frame);

  int complex_dim() const noexcept { return static_cast<int>(vectors_.cols()); }
  int dim() const noexcept { return static_cast<int>(vectors_.rows()); }
  const FrameTag& frame() const noexcept { return frame_; }
  const ComplexMatrix& vectors() const noexcept { return vectors_; }
  /// n x 2n, row i is z^i.
  const ComplexMatrix& coframe() const noexcept { return coframe_; }

  ComplexVector vector(int j) const { return vectors_.col(j); }
  ComplexVector conj_vector(int j) const { return vectors_.col(j).conjugate(); }
  InvariantForm coform(int i) const;
  InvariantForm conj_coform(int i) const;

  /// pi^{1,0} = sum_j z_j (x) z^j on complexified vectors.
  ComplexMatrix projector_10() const;

  /// Frame change whose new frame is (z_1..z_n, conj z_1..conj z_n); forms
  /// moved through it have coefficients in the complex coframe.
  FrameChange complex_basis(const FrameTag& to) const;
  /// "z^1".."z^n", "zb^1".."zb^n"
  std::vector<std::string> complex_labels() const;

  /// max |h(z_i, z_j) - delta_ij| where h(Z, W) = g(Z, conj W).
  double unitarity_residual(const MetricData& metric) const;

 private:
  ComplexMatrix vectors_;
  ComplexMatrix coframe_;
  FrameTag frame_;
};

/// n x n matrix of 1-forms theta^i_j with nabla z_j = sum_i theta^i_j z_i.
struct ConnectionMatrix {
  int n = 0;
  std::vector<InvariantForm> forms;  // row-major
  const InvariantForm& operator()(int i, int j) const {
    return forms.at(static_cast<std::size_t>(i * n + j));
  }
};

struct TypeParts {
  InvariantForm f20;
  InvariantForm f11;
  InvariantForm f02;
};

struct VectorTypeParts {
  VectorValuedForm f20;
  VectorValuedForm f11;
  VectorValuedForm f02;
};

/// Complex half of the curvature of the canonical connection.
struct ComplexCurvature {
  int n = 0;
  std::vector<InvariantForm> psi;    // row-major Psi^i_j
  std::vector<Complex> coefficients;  // R^i_{j k lbar}
  ComplexMatrix ricci;                // R_{k lbar}
  Complex scal;                       // trace of ricci
  Complex scal_direct;                // sum_{i,k} Psi^i_i(z_k, conj z_k)

  Complex coefficient(int i, int j, int k, int l) const {
    return coefficients.at(static_cast<std::size_t>(((i * n + j) * n + k) * n + l));
  }
  const InvariantForm& form(int i, int j) const {
    return psi.at(static_cast<std::size_t>(i * n + j));
  }
};

/// Real half: Omega = d omega + omega ^ omega in an orthonormal frame.
struct RealCurvature {
  int dim = 0;
  std::vector<InvariantForm> omega;  // row-major Omega^i_j
  std::vector<double> components;    // R^i_{jkl} = Omega^i_j(E_k, E_l)
  RealMatrix ricci;                  // R_{ij} = sum_k R^k_{ikj}
  double scal = 0.0;

  double component(int i, int j, int k, int l) const {
    return components.at(static_cast<std::size_t>(((i * dim + j) * dim + k) * dim + l));
  }
  const InvariantForm& form(int i, int j) const {
    return omega.at(static_cast<std::size_t>(i * dim + j));
  }
};

struct CurvatureReport {
  ComplexCurvature complex;
  RealCurvature real;
};

/// N(X, Y) = [JX, JY] - J[JX, Y] - J[X, JY] - [X, Y] on complexified vectors.
ComplexVector nijenhuis_apply(const AlmostComplexStructure& j, const InvariantAlgebra& alg,
                              const ComplexVector& x, const ComplexVector& y);
/// N as a vector-valued 2-form.
VectorValuedForm nijenhuis(const AlmostComplexStructure& j, const InvariantAlgebra& alg);

ClassificationFlags classify(const AlmostComplexStructure& j, const MetricData& metric,
                             const InvariantAlgebra& alg);

/// Koszul formula for an invariant metric:
/// 2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
RealConnection levi_civita(const MetricData& metric, const InvariantAlgebra& alg);

/// D_X Y = (nabla_X Y - J nabla_X JY) / 2
RealConnection canonical_connection(const RealConnection& lc, const AlmostComplexStructure& j);

/// max |g(nabla_X Y, Z) + g(Y, nabla_X Z)| over frame triples.
double metric_residual(const RealConnection& conn, const MetricData& metric);
/// max |nabla J| over frame pairs.
double complex_structure_residual(const RealConnection& conn, const AlmostComplexStructure& j);
/// max |Gamma^k_{ij} - Gamma^k_{ji} - c^k_{ij}|
double torsion_free_residual(const RealConnection& conn, const InvariantAlgebra& alg);

/// T(X, Y) = nabla_X Y - nabla_Y X - [X, Y] as a vector-valued 2-form.
VectorValuedForm real_torsion(const RealConnection& conn, const InvariantAlgebra& alg);

/// Orthonormal frame with J in block-standard form, by Gram-Schmidt in input
/// order, pairing each new vector v with Jv.
FrameChange adapted_orthonormal_frame(const MetricData& metric, const AlmostComplexStructure& j,
                                      const FrameTag& to);

/// z_i = (F_{2i-1} - i F_{2i}) / sqrt(2) for an orthonormal J-adapted frame F.
/// The current frame is used when it is already adapted; otherwise F comes
/// from adapted_orthonormal_frame. Vectors are expressed in the current frame.
ComplexFrameData unitary_frame(const MetricData& metric, const AlmostComplexStructure& j,
                               const InvariantAlgebra& alg);

/// theta^i_j(X) = z^i(nabla_X z_j). Requires nabla J = 0.
ConnectionMatrix connection_forms(const RealConnection& conn, const ComplexFrameData& cf);

/// Real connection 1-forms omega^i_j = sum_k Gamma^i_{kj} E^k, row-major.
std::vector<InvariantForm> real_connection_forms(const RealConnection& conn);

/// First structure equation Theta^i = dz^i + sum_j theta^i_j ^ z^j.
std::vector<InvariantForm> torsion_forms(const ConnectionMatrix& theta, const ComplexFrameData& cf,
                                         const InvariantAlgebra& alg);

/// max |theta^i_j + conj(theta^j_i)| coefficientwise.
double skew_hermitian_residual(std::span<const InvariantForm> forms, int n);

/// (p, q) part of a form, via pi^{1,0} / pi^{0,1} on each argument slot.
InvariantForm type_component(const InvariantForm& form, const ComplexMatrix& projector_10, int p,
                             int q);
InvariantForm type_component(const InvariantForm& form, const AlmostComplexStructure& j, int p,
                             int q);
TypeParts type_decompose(const InvariantForm& form, const AlmostComplexStructure& j);
/// Type of the form part after sending values to T^{1,0} by pi^{1,0}.
VectorTypeParts type_decompose(const VectorValuedForm& form, const AlmostComplexStructure& j);

/// dbar of a (p, q)-form: the (p, q+1) part of d(form).
InvariantForm dbar(const InvariantForm& form, int p, const AlmostComplexStructure& j,
                   const InvariantAlgebra& alg);

/// Second structure equation, type split and Ricci trace.
ComplexCurvature curvature(const ConnectionMatrix& theta, const InvariantAlgebra& alg,
                           const ComplexFrameData& cf);

/// Real curvature matrix and Ricci contraction; the frame must be orthonormal.
RealCurvature real_curvature(const RealConnection& conn, const InvariantAlgebra& alg,
                             const MetricData& metric);

}  // namespace akgeo
