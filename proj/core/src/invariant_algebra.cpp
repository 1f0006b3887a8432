#include "akgeo/invariant_algebra.hpp"

#include <cmath>
#include <sstream>

namespace akgeo {

namespace {

std::vector<std::string> default_labels(int dim) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(dim));
  for (int i = 1; i <= dim; ++i) labels.push_back("E" + std::to_string(i));
  return labels;
}

}  // namespace

InvariantAlgebra::InvariantAlgebra(int dim, std::span<const StructureConstant> constants,
                                   FrameTag frame, std::vector<std::string> labels)
    : dim_(dim), frame_(std::move(frame)), labels_(std::move(labels)) {
  if (dim_ <= 0 || dim_ % 2 != 0) {
    throw DimensionError("algebra dimension must be a positive even integer, got " +
                         std::to_string(dim_));
  }
  if (dim_ > 32) throw DimensionError("algebra dimension above 32 is not supported");
  if (labels_.empty()) labels_ = default_labels(dim_);
  if (static_cast<int>(labels_.size()) != dim_) {
    throw DimensionError("expected " + std::to_string(dim_) + " frame labels");
  }

  for (const auto& c : constants) {
    auto in_range = [this](int x) { return x >= 0 && x < dim_; };
    if (!in_range(c.i) || !in_range(c.j) || !in_range(c.k)) {
      std::ostringstream os;
      os << "structure constant index out of range: (" << c.i + 1 << ", " << c.j + 1 << ", "
         << c.k + 1 << ") for dimension " << dim_;
      throw DimensionError(os.str());
    }
    if (c.i == c.j) {
      if (c.value != 0.0) {
        throw DimensionError("structure constant c^" + std::to_string(c.k + 1) + "_{" +
                             std::to_string(c.i + 1) + std::to_string(c.j + 1) +
                             "} must vanish");
      }
      continue;
    }
    if (c.i < c.j) {
      structure_[{c.i, c.j, c.k}] += c.value;
    } else {
      structure_[{c.j, c.i, c.k}] -= c.value;
    }
  }
  std::erase_if(structure_, [](const auto& kv) { return kv.second == 0.0; });

  dense_.assign(static_cast<std::size_t>(dim_ * dim_ * dim_), 0.0);
  for (const auto& [key, value] : structure_) {
    dense_[static_cast<std::size_t>((key.i * dim_ + key.j) * dim_ + key.k)] = value;
    dense_[static_cast<std::size_t>((key.j * dim_ + key.i) * dim_ + key.k)] = -value;
  }
}

InvariantAlgebra InvariantAlgebra::abelian(int dim, FrameTag frame) {
  return InvariantAlgebra(dim, std::span<const StructureConstant>{}, std::move(frame));
}

RealVector InvariantAlgebra::bracket_basis(int i, int j) const {
  RealVector out(dim_);
  for (int k = 0; k < dim_; ++k) out(k) = constant(i, j, k);
  return out;
}

bool InvariantAlgebra::has_integer_constants() const {
  for (const auto& [key, value] : structure_) {
    if (std::trunc(value) != value) return false;
  }
  return true;
}

JacobiDiagnostics validate_algebra(const InvariantAlgebra& alg) {
  const int n = alg.dim();
  double worst = 0.0;
  // [[E_i,E_j],E_k] + [[E_j,E_k],E_i] + [[E_k,E_i],E_j], coefficient on E_m
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        for (int m = 0; m < n; ++m) {
          double r = 0.0;
          for (int l = 0; l < n; ++l) {
            r += alg.constant(i, j, l) * alg.constant(l, k, m) +
                 alg.constant(j, k, l) * alg.constant(l, i, m) +
                 alg.constant(k, i, l) * alg.constant(l, j, m);
          }
          worst = std::max(worst, std::abs(r));
        }
      }
    }
  }
  JacobiDiagnostics diag;
  diag.max_residual = worst;
  diag.passed = alg.has_integer_constants() ? worst == 0.0 : worst < tol::kFrame;
  return diag;
}

ComplexVector bracket(const InvariantAlgebra& alg, const ComplexVector& x,
                      const ComplexVector& y) {
  const int n = alg.dim();
  if (x.size() != n || y.size() != n) {
    throw DimensionError("bracket: vectors must have length " + std::to_string(n));
  }
  ComplexVector out = ComplexVector::Zero(n);
  for (const auto& [key, value] : alg.structure()) {
    // c^k_{ij} (x_i y_j - x_j y_i)
    out(key.k) += value * (x(key.i) * y(key.j) - x(key.j) * y(key.i));
  }
  return out;
}

}  // namespace akgeo
