#include <cmath>

#include "akgeo/invariant_algebra.hpp"
#include "mask_iteration.hpp"

namespace akgeo {

FrameChange::FrameChange(ComplexMatrix matrix, FrameTag from, FrameTag to)
    : matrix_(std::move(matrix)), from_(std::move(from)), to_(std::move(to)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw DimensionError("frame change matrix must be square and non-empty");
  }
  Eigen::FullPivLU<ComplexMatrix> lu(matrix_);
  if (!lu.isInvertible()) throw ValidationError("frame change matrix is singular", 0.0);
  inverse_ = lu.inverse();
  const double residual =
      (matrix_ * inverse_ - ComplexMatrix::Identity(matrix_.rows(), matrix_.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (residual >= tol::kFrame) {
    throw ValidationError("frame change matrix is numerically singular", residual);
  }
}

FrameChange::FrameChange(const RealMatrix& matrix, FrameTag from, FrameTag to)
    : FrameChange(ComplexMatrix(matrix.cast<Complex>()), std::move(from), std::move(to)) {}

FrameChange FrameChange::identity(int dim, const FrameTag& tag) {
  return FrameChange(ComplexMatrix(ComplexMatrix::Identity(dim, dim)), tag, tag);
}

FrameChange FrameChange::inverted() const { return FrameChange(inverse_, to_, from_); }

FrameChange FrameChange::then(const FrameChange& next) const {
  if (next.from_ != to_) {
    throw FrameMismatch("cannot compose frame changes '" + from_.name + "'->'" + to_.name +
                        "' and '" + next.from_.name + "'->'" + next.to_.name + "'");
  }
  return FrameChange(ComplexMatrix(matrix_ * next.matrix_), from_, next.to_);
}

bool FrameChange::is_real(double threshold) const {
  return matrix_.imag().cwiseAbs().maxCoeff() < threshold;
}

RealMatrix FrameChange::real_matrix() const {
  const double im = matrix_.imag().cwiseAbs().maxCoeff();
  if (im >= tol::kFrame) throw ValidationError("frame change is not real", im);
  return matrix_.real();
}

RealMatrix FrameChange::real_inverse() const {
  const double im = inverse_.imag().cwiseAbs().maxCoeff();
  if (im >= tol::kFrame) throw ValidationError("frame change is not real", im);
  return inverse_.real();
}

InvariantForm change_frame(const InvariantForm& form, const FrameChange& fc) {
  if (form.frame() != fc.from()) {
    throw FrameMismatch("change_frame: form is in frame '" + form.frame().name +
                        "', change starts at '" + fc.from().name + "'");
  }
  if (form.dim() != fc.dim()) throw DimensionError("change_frame: dimension mismatch");
  // New coefficient on E'^J is the form evaluated on the new vectors E'_J.
  InvariantForm out(form.dim(), form.degree(), fc.to());
  std::vector<ComplexVector> args(static_cast<std::size_t>(form.degree()));
  detail::for_each_mask(form.dim(), form.degree(), [&](InvariantForm::Mask m) {
    const auto idx = mask_indices(m);
    for (std::size_t r = 0; r < idx.size(); ++r) args[r] = fc.matrix().col(idx[r]);
    out.add(m, form.evaluate(args));
  });
  return out.normalized();
}

VectorValuedForm change_frame(const VectorValuedForm& form, const FrameChange& fc) {
  // T = sum_k T^k E_k = sum_j T'^j E'_j with T'^j = sum_k inverse(j, k) T^k.
  std::vector<InvariantForm> moved;
  moved.reserve(static_cast<std::size_t>(form.dim()));
  for (const auto& c : form.components()) moved.push_back(change_frame(c, fc));
  std::vector<InvariantForm> out;
  out.reserve(moved.size());
  for (int j = 0; j < form.dim(); ++j) {
    InvariantForm acc(form.dim(), form.degree(), fc.to());
    for (int k = 0; k < form.dim(); ++k) {
      const Complex w = fc.inverse()(j, k);
      if (w != Complex{}) acc += w * moved[static_cast<std::size_t>(k)];
    }
    out.push_back(acc.normalized());
  }
  return VectorValuedForm(std::move(out));
}

InvariantAlgebra change_frame(const InvariantAlgebra& alg, const FrameChange& fc,
                              std::vector<std::string> labels) {
  if (alg.frame() != fc.from()) {
    throw FrameMismatch("change_frame: algebra is in frame '" + alg.frame().name +
                        "', change starts at '" + fc.from().name + "'");
  }
  const int n = alg.dim();
  if (fc.dim() != n) throw DimensionError("change_frame: dimension mismatch");
  const RealMatrix p = fc.real_matrix();
  const RealMatrix pinv = fc.real_inverse();
  // [E'_a, E'_b] = sum p(i,a) p(j,b) c^k_{ij} E_k, then E_k = sum_c pinv(c,k) E'_c
  std::vector<StructureConstant> constants;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      RealVector old_coords = RealVector::Zero(n);
      for (const auto& [key, value] : alg.structure()) {
        old_coords(key.k) += value * (p(key.i, a) * p(key.j, b) - p(key.j, a) * p(key.i, b));
      }
      const RealVector new_coords = pinv * old_coords;
      for (int c = 0; c < n; ++c) {
        double v = new_coords(c);
        if (std::abs(v) < tol::kPrune) continue;
        // Snap float noise so integer constants stay exact through integer changes.
        if (const double r = std::round(v); std::abs(v - r) < 1e-14) v = r;
        constants.push_back({a, b, c, v});
      }
    }
  }
  if (labels.empty()) labels = alg.labels();
  return InvariantAlgebra(n, constants, fc.to(), std::move(labels));
}

ComplexVector change_frame_vector(const ComplexVector& v, const FrameChange& fc) {
  if (v.size() != fc.dim()) throw DimensionError("change_frame_vector: dimension mismatch");
  return fc.inverse() * v;
}

RealMatrix change_frame_endomorphism(const RealMatrix& a, const FrameChange& fc) {
  return fc.real_inverse() * a * fc.real_matrix();
}

RealMatrix change_frame_bilinear(const RealMatrix& b, const FrameChange& fc) {
  const RealMatrix p = fc.real_matrix();
  return p.transpose() * b * p;
}

void FrameRegistry::add(const FrameChange& fc) {
  changes_.insert_or_assign({fc.from(), fc.to()}, fc);
  changes_.insert_or_assign({fc.to(), fc.from()}, fc.inverted());
}

std::optional<FrameChange> FrameRegistry::find(const FrameTag& from, const FrameTag& to) const {
  if (from == to) return std::nullopt;
  auto it = changes_.find({from, to});
  if (it == changes_.end()) return std::nullopt;
  return it->second;
}

}  // namespace akgeo
