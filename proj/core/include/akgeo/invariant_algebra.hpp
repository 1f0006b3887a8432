#pragma once

// Exterior calculus on left-invariant forms of a Lie algebra given by
// structure constants in a global frame E_1..E_{2n}.
//
// Conventions (0-based indices in code, 1-based in labels and files):
//   [E_i, E_j] = sum_k c^k_{ij} E_k
//   de^k(E_i, E_j) = -e^k([E_i, E_j])
//   e^{i_1} ^ ... ^ e^{i_p}(E_{i_1}, ..., E_{i_p}) = 1   (determinant convention)

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "akgeo/types.hpp"

namespace akgeo {

/// One structure constant c^k_{ij}, 0-based.
struct StructureConstant {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;
};

class InvariantAlgebra {
 public:
  struct Key {
    int i, j, k;
    auto operator<=>(const Key&) const = default;
  };

  /// Keys with i > j are stored as (j, i, k) with negated value; repeated keys
  /// accumulate. Throws DimensionError on odd or non-positive dim, indices out
  /// of range, or a nonzero c^k_{ii}.
  InvariantAlgebra(int dim, std::span<const StructureConstant> constants,
                   FrameTag frame, std::vector<std::string> labels = {});

  /// Abelian algebra (flat torus).
  static InvariantAlgebra abelian(int dim, FrameTag frame);

  int dim() const noexcept { return dim_; }
  const FrameTag& frame() const noexcept { return frame_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Stored constants, i < j only, zeros dropped.
  const std::map<Key, double>& structure() const noexcept { return structure_; }

  /// c^k_{ij} for any ordering of i, j.
  double constant(int i, int j, int k) const {
    return dense_[static_cast<std::size_t>((i * dim_ + j) * dim_ + k)];
  }

  /// [E_i, E_j] as a coefficient vector.
  RealVector bracket_basis(int i, int j) const;

  /// True when every constant is an integer.
  bool has_integer_constants() const;

 private:
  int dim_;
  FrameTag frame_;
  std::vector<std::string> labels_;
  std::map<Key, double> structure_;
  std::vector<double> dense_;
};

struct JacobiDiagnostics {
  double max_residual = 0.0;
  bool passed = false;
};

/// Brute-force Jacobi check over all index triples. Integer constants must
/// give an exactly zero residual; otherwise the residual must stay below 1e-12.
JacobiDiagnostics validate_algebra(const InvariantAlgebra& alg);

/// Bilinear bracket of two complex coefficient vectors.
ComplexVector bracket(const InvariantAlgebra& alg, const ComplexVector& x,
                      const ComplexVector& y);

/// A complex-coefficient exterior form over a labeled coframe.
///
/// Multi-indices are stored as bitmasks; bit i set means e^i is a factor, and
/// the factors are always taken in increasing order.
class InvariantForm {
 public:
  using Mask = std::uint32_t;

  InvariantForm(int dim, int degree, FrameTag frame);

  /// e^{i_1} ^ ... ^ e^{i_p} scaled by coeff. Indices may come in any order;
  /// repeated indices give the zero form.
  static InvariantForm monomial(int dim, std::span<const int> indices,
                                FrameTag frame, Complex coeff = 1.0);
  static InvariantForm monomial(int dim, std::initializer_list<int> indices,
                                FrameTag frame, Complex coeff = 1.0);
  /// sum_i coeffs[i] e^i
  static InvariantForm covector(const ComplexVector& coeffs, FrameTag frame);
  static InvariantForm scalar(int dim, Complex value, FrameTag frame);

  /// Antisymmetric matrix A(x, y) = form(E_x, E_y) back to a 2-form.
  static InvariantForm from_matrix(const ComplexMatrix& a, FrameTag frame);

  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  const FrameTag& frame() const noexcept { return frame_; }
  const std::map<Mask, Complex>& terms() const noexcept { return terms_; }

  /// Coefficient of e^{i_1} ^ ... ^ e^{i_p}, sign-adjusted for the given order.
  Complex coefficient(std::span<const int> indices) const;
  Complex coefficient(std::initializer_list<int> indices) const;

  void add(Mask mask, Complex value);

  InvariantForm& operator+=(const InvariantForm& other);
  InvariantForm& operator-=(const InvariantForm& other);
  InvariantForm& operator*=(Complex s);
  friend InvariantForm operator+(InvariantForm a, const InvariantForm& b) { return a += b; }
  friend InvariantForm operator-(InvariantForm a, const InvariantForm& b) { return a -= b; }
  friend InvariantForm operator*(Complex s, InvariantForm a) { return a *= s; }
  friend InvariantForm operator*(InvariantForm a, Complex s) { return a *= s; }
  InvariantForm operator-() const { return (*this) * Complex(-1.0); }

  InvariantForm conj() const;
  /// Copy with coefficients of magnitude < threshold removed.
  InvariantForm normalized(double threshold = tol::kPrune) const;
  double max_abs() const;
  bool is_zero(double threshold) const { return max_abs() < threshold; }

  /// Multilinear evaluation on degree() complex vectors.
  Complex evaluate(std::span<const ComplexVector> vectors) const;
  Complex evaluate(const ComplexVector& x, const ComplexVector& y) const;

  /// 2-forms only: the matrix form(E_x, E_y).
  ComplexMatrix as_matrix() const;

  /// Readable expansion, e.g. "(0.5)E^13 + (-0.5i)E^24".
  std::string to_string(const std::vector<std::string>& coframe_labels = {}) const;

 private:
  int dim_;
  int degree_;
  FrameTag frame_;
  std::map<Mask, Complex> terms_;
};

double max_abs_difference(const InvariantForm& a, const InvariantForm& b);

/// Sign of reordering the concatenation of two sorted disjoint index sets.
int wedge_sign(InvariantForm::Mask a, InvariantForm::Mask b);
std::vector<int> mask_indices(InvariantForm::Mask mask);
InvariantForm::Mask indices_mask(std::span<const int> indices);

/// Graded-commutative product.
InvariantForm wedge(const InvariantForm& a, const InvariantForm& b);

/// Tangent-vector-valued form sum_k component(k) (x) E_k.
class VectorValuedForm {
 public:
  VectorValuedForm(int dim, int degree, FrameTag frame);
  explicit VectorValuedForm(std::vector<InvariantForm> components);

  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  const FrameTag& frame() const noexcept { return frame_; }
  const std::vector<InvariantForm>& components() const noexcept { return components_; }
  const InvariantForm& component(int k) const { return components_.at(static_cast<std::size_t>(k)); }
  InvariantForm& component(int k) { return components_.at(static_cast<std::size_t>(k)); }

  /// Vector value on the given arguments.
  ComplexVector evaluate(std::span<const ComplexVector> vectors) const;
  ComplexVector evaluate(const ComplexVector& x, const ComplexVector& y) const;

  double max_abs() const;

 private:
  int dim_;
  int degree_;
  FrameTag frame_;
  std::vector<InvariantForm> components_;
};

double max_abs_difference(const VectorValuedForm& a, const VectorValuedForm& b);

/// New frame vectors expressed in the old frame: E'_j = sum_i matrix(i, j) E_i.
class FrameChange {
 public:
  FrameChange(ComplexMatrix matrix, FrameTag from, FrameTag to);
  FrameChange(const RealMatrix& matrix, FrameTag from, FrameTag to);

  static FrameChange identity(int dim, const FrameTag& tag);

  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const ComplexMatrix& inverse() const noexcept { return inverse_; }
  const FrameTag& from() const noexcept { return from_; }
  const FrameTag& to() const noexcept { return to_; }

  FrameChange inverted() const;
  /// Composition: first this, then next.
  FrameChange then(const FrameChange& next) const;

  bool is_real(double threshold = tol::kFrame) const;
  /// Throws ValidationError when the matrix has an imaginary part.
  RealMatrix real_matrix() const;
  RealMatrix real_inverse() const;

 private:
  ComplexMatrix matrix_;
  ComplexMatrix inverse_;
  FrameTag from_;
  FrameTag to_;
};

InvariantForm change_frame(const InvariantForm& form, const FrameChange& fc);
VectorValuedForm change_frame(const VectorValuedForm& form, const FrameChange& fc);
/// Real frame changes only; structure constants stay real.
InvariantAlgebra change_frame(const InvariantAlgebra& alg, const FrameChange& fc,
                              std::vector<std::string> labels = {});
/// Coefficients of a vector in the new frame.
ComplexVector change_frame_vector(const ComplexVector& v, const FrameChange& fc);
/// Endomorphism matrix in the new frame: P^{-1} A P.
RealMatrix change_frame_endomorphism(const RealMatrix& a, const FrameChange& fc);
/// Bilinear form matrix in the new frame: P^T B P.
RealMatrix change_frame_bilinear(const RealMatrix& b, const FrameChange& fc);

/// Frame changes keyed by (from, to). Registering a change also registers its
/// inverse.
class FrameRegistry {
 public:
  void add(const FrameChange& fc);
  std::optional<FrameChange> find(const FrameTag& from, const FrameTag& to) const;

 private:
  std::map<std::pair<FrameTag, FrameTag>, FrameChange> changes_;
};

/// d on invariant forms. The form must live in the algebra's frame.
InvariantForm exterior_derivative(const InvariantForm& form, const InvariantAlgebra& alg);
/// As above, but forms in another frame are routed through a registered change.
InvariantForm exterior_derivative(const InvariantForm& form, const InvariantAlgebra& alg,
                                  const FrameRegistry& registry);

}  // namespace akgeo
