#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "akgeo/invariant_algebra.hpp"

namespace akgeo {

std::vector<int> mask_indices(InvariantForm::Mask mask) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::popcount(mask)));
  while (mask != 0) {
    const int i = std::countr_zero(mask);
    out.push_back(i);
    mask &= mask - 1;
  }
  return out;
}

InvariantForm::Mask indices_mask(std::span<const int> indices) {
  InvariantForm::Mask m = 0;
  for (int i : indices) m |= InvariantForm::Mask{1} << i;
  return m;
}

int wedge_sign(InvariantForm::Mask a, InvariantForm::Mask b) {
  // Each pair (x in a, y in b) with x > y costs one transposition.
  int inversions = 0;
  while (b != 0) {
    const int y = std::countr_zero(b);
    b &= b - 1;
    const InvariantForm::Mask above = ~((InvariantForm::Mask{2} << y) - 1);
    inversions += std::popcount(a & above);
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

InvariantForm::InvariantForm(int dim, int degree, FrameTag frame)
    : dim_(dim), degree_(degree), frame_(std::move(frame)) {
  if (dim_ <= 0 || dim_ > 32) throw DimensionError("form dimension must lie in [1, 32]");
  if (degree_ < 0 || degree_ > dim_) {
    throw DimensionError("form degree " + std::to_string(degree_) + " out of range");
  }
}

InvariantForm InvariantForm::monomial(int dim, std::span<const int> indices, FrameTag frame,
                                      Complex coeff) {
  InvariantForm f(dim, static_cast<int>(indices.size()), std::move(frame));
  std::vector<int> sorted(indices.begin(), indices.end());
  for (int i : sorted) {
    if (i < 0 || i >= dim) throw DimensionError("coframe index out of range");
  }
  // Bubble sort keeps the parity count simple for these tiny lists.
  int sign = 1;
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    for (std::size_t b = 0; b + 1 < sorted.size() - a; ++b) {
      if (sorted[b] > sorted[b + 1]) {
        std::swap(sorted[b], sorted[b + 1]);
        sign = -sign;
      }
    }
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return f;
  f.add(indices_mask(sorted), coeff * static_cast<double>(sign));
  return f;
}

InvariantForm InvariantForm::monomial(int dim, std::initializer_list<int> indices,
                                      FrameTag frame, Complex coeff) {
  return monomial(dim, std::span<const int>(indices.begin(), indices.size()), std::move(frame),
                  coeff);
}

InvariantForm InvariantForm::covector(const ComplexVector& coeffs, FrameTag frame) {
  const int n = static_cast<int>(coeffs.size());
  InvariantForm f(n, 1, std::move(frame));
  for (int i = 0; i < n; ++i) f.add(Mask{1} << i, coeffs(i));
  return f;
}

InvariantForm InvariantForm::scalar(int dim, Complex value, FrameTag frame) {
  InvariantForm f(dim, 0, std::move(frame));
  f.add(0, value);
  return f;
}

InvariantForm InvariantForm::from_matrix(const ComplexMatrix& a, FrameTag frame) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw DimensionError("from_matrix: matrix must be square");
  InvariantForm f(n, 2, std::move(frame));
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      f.add((Mask{1} << x) | (Mask{1} << y), 0.5 * (a(x, y) - a(y, x)));
    }
  }
  return f;
}

Complex InvariantForm::coefficient(std::span<const int> indices) const {
  if (static_cast<int>(indices.size()) != degree_) {
    throw DimensionError("coefficient: expected " + std::to_string(degree_) + " indices");
  }
  const InvariantForm probe = monomial(dim_, indices, frame_, 1.0);
  if (probe.terms_.empty()) return 0.0;
  const auto& [mask, sign] = *probe.terms_.begin();
  auto it = terms_.find(mask);
  return it == terms_.end() ? Complex{} : it->second * sign;
}

Complex InvariantForm::coefficient(std::initializer_list<int> indices) const {
  return coefficient(std::span<const int>(indices.begin(), indices.size()));
}

void InvariantForm::add(Mask mask, Complex value) {
  if (std::popcount(mask) != degree_) throw DimensionError("add: multi-index has wrong length");
  if (dim_ < 32 && (mask >> dim_) != 0) throw DimensionError("add: index beyond dimension");
  if (value == Complex{}) return;
  terms_[mask] += value;
}

InvariantForm& InvariantForm::operator+=(const InvariantForm& other) {
  if (other.frame_ != frame_) {
    throw FrameMismatch("cannot add forms in frames '" + frame_.name + "' and '" +
                        other.frame_.name + "'");
  }
  if (other.degree_ != degree_ || other.dim_ != dim_) {
    throw DimensionError("cannot add forms of different degree or dimension");
  }
  for (const auto& [m, v] : other.terms_) terms_[m] += v;
  return *this;
}

InvariantForm& InvariantForm::operator-=(const InvariantForm& other) {
  return *this += (-other);
}

InvariantForm& InvariantForm::operator*=(Complex s) {
  for (auto& [m, v] : terms_) v *= s;
  return *this;
}

InvariantForm InvariantForm::conj() const {
  InvariantForm out = *this;
  for (auto& [m, v] : out.terms_) v = std::conj(v);
  return out;
}

InvariantForm InvariantForm::normalized(double threshold) const {
  InvariantForm out(dim_, degree_, frame_);
  for (const auto& [m, v] : terms_) {
    if (std::abs(v) >= threshold) out.terms_.emplace(m, v);
  }
  return out;
}

double InvariantForm::max_abs() const {
  double worst = 0.0;
  for (const auto& [m, v] : terms_) worst = std::max(worst, std::abs(v));
  return worst;
}

Complex InvariantForm::evaluate(std::span<const ComplexVector> vectors) const {
  if (static_cast<int>(vectors.size()) != degree_) {
    throw DimensionError("evaluate: expected " + std::to_string(degree_) + " vectors");
  }
  for (const auto& v : vectors) {
    if (v.size() != dim_) throw DimensionError("evaluate: vector length mismatch");
  }
  if (degree_ == 0) {
    auto it = terms_.find(0);
    return it == terms_.end() ? Complex{} : it->second;
  }
  Complex total{};
  ComplexMatrix minor(degree_, degree_);
  for (const auto& [mask, coeff] : terms_) {
    const auto idx = mask_indices(mask);
    for (int r = 0; r < degree_; ++r) {
      for (int s = 0; s < degree_; ++s) minor(r, s) = vectors[static_cast<std::size_t>(s)](idx[static_cast<std::size_t>(r)]);
    }
    total += coeff * minor.determinant();
  }
  return total;
}

Complex InvariantForm::evaluate(const ComplexVector& x, const ComplexVector& y) const {
  const ComplexVector args[2] = {x, y};
  return evaluate(std::span<const ComplexVector>(args, 2));
}

ComplexMatrix InvariantForm::as_matrix() const {
  if (degree_ != 2) throw DimensionError("as_matrix: 2-forms only");
  ComplexMatrix a = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& [mask, v] : terms_) {
    const auto idx = mask_indices(mask);
    a(idx[0], idx[1]) += v;
    a(idx[1], idx[0]) -= v;
  }
  return a;
}

namespace {

std::string format_complex(Complex v) {
  std::ostringstream os;
  os.precision(12);
  const double re = v.real();
  const double im = v.imag();
  if (im == 0.0) {
    os << re;
  } else if (re == 0.0) {
    os << im << "i";
  } else {
    os << re << (im < 0 ? "-" : "+") << std::abs(im) << "i";
  }
  return os.str();
}

}  // namespace

std::string InvariantForm::to_string(const std::vector<std::string>& coframe_labels) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mask, v] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << format_complex(v) << ")";
    const auto idx = mask_indices(mask);
    if (idx.empty()) continue;
    if (coframe_labels.empty()) {
      os << "E^";
      for (int i : idx) os << (i + 1);
    } else {
      for (std::size_t r = 0; r < idx.size(); ++r) {
        os << (r == 0 ? "" : "^") << coframe_labels.at(static_cast<std::size_t>(idx[r]));
      }
    }
  }
  return os.str();
}

double max_abs_difference(const InvariantForm& a, const InvariantForm& b) {
  return (a - b).max_abs();
}

InvariantForm wedge(const InvariantForm& a, const InvariantForm& b) {
  if (a.frame() != b.frame()) {
    throw FrameMismatch("wedge: frames '" + a.frame().name + "' and '" + b.frame().name +
                        "' differ");
  }
  if (a.dim() != b.dim()) throw DimensionError("wedge: dimension mismatch");
  if (a.degree() + b.degree() > a.dim()) return InvariantForm(a.dim(), a.dim(), a.frame());
  InvariantForm out(a.dim(), a.degree() + b.degree(), a.frame());
  for (const auto& [ma, va] : a.terms()) {
    for (const auto& [mb, vb] : b.terms()) {
      if ((ma & mb) != 0) continue;
      out.add(ma | mb, static_cast<double>(wedge_sign(ma, mb)) * va * vb);
    }
  }
  return out.normalized();
}

// VectorValuedForm

VectorValuedForm::VectorValuedForm(int dim, int degree, FrameTag frame)
    : dim_(dim), degree_(degree), frame_(std::move(frame)) {
  components_.reserve(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) components_.emplace_back(dim, degree, frame_);
}

VectorValuedForm::VectorValuedForm(std::vector<InvariantForm> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw DimensionError("vector-valued form needs components");
  dim_ = components_.front().dim();
  degree_ = components_.front().degree();
  frame_ = components_.front().frame();
  if (static_cast<int>(components_.size()) != dim_) {
    throw DimensionError("vector-valued form needs one component per frame vector");
  }
  for (const auto& c : components_) {
    if (c.degree() != degree_) throw DimensionError("vector-valued form: degree not uniform");
    if (c.frame() != frame_) throw FrameMismatch("vector-valued form: frame not uniform");
  }
}

ComplexVector VectorValuedForm::evaluate(std::span<const ComplexVector> vectors) const {
  ComplexVector out(dim_);
  for (int k = 0; k < dim_; ++k) out(k) = components_[static_cast<std::size_t>(k)].evaluate(vectors);
  return out;
}

ComplexVector VectorValuedForm::evaluate(const ComplexVector& x, const ComplexVector& y) const {
  const ComplexVector args[2] = {x, y};
  return evaluate(std::span<const ComplexVector>(args, 2));
}

double VectorValuedForm::max_abs() const {
  double worst = 0.0;
  for (const auto& c : components_) worst = std::max(worst, c.max_abs());
  return worst;
}

double max_abs_difference(const VectorValuedForm& a, const VectorValuedForm& b) {
  if (a.dim() != b.dim()) throw DimensionError("vector-valued forms differ in dimension");
  double worst = 0.0;
  for (int k = 0; k < a.dim(); ++k) {
    worst = std::max(worst, max_abs_difference(a.component(k), b.component(k)));
  }
  return worst;
}

// Exterior derivative

namespace {

// de^k = -sum_{i<j} c^k_{ij} e^{ij}
std::vector<std::vector<std::pair<InvariantForm::Mask, double>>> coframe_differentials(
    const InvariantAlgebra& alg) {
  std::vector<std::vector<std::pair<InvariantForm::Mask, double>>> out(
      static_cast<std::size_t>(alg.dim()));
  for (const auto& [key, value] : alg.structure()) {
    const InvariantForm::Mask m = (InvariantForm::Mask{1} << key.i) | (InvariantForm::Mask{1} << key.j);
    out[static_cast<std::size_t>(key.k)].emplace_back(m, -value);
  }
  return out;
}

}  // namespace

InvariantForm exterior_derivative(const InvariantForm& form, const InvariantAlgebra& alg) {
  if (form.frame() != alg.frame()) {
    throw FrameMismatch("exterior_derivative: form frame '" + form.frame().name +
                        "' differs from algebra frame '" + alg.frame().name + "'");
  }
  if (form.dim() != alg.dim()) throw DimensionError("exterior_derivative: dimension mismatch");
  if (form.degree() == form.dim()) return InvariantForm(form.dim(), form.degree(), form.frame());

  const auto de = coframe_differentials(alg);
  InvariantForm out(form.dim(), form.degree() + 1, form.frame());
  if (form.degree() == 0) return out;

  for (const auto& [mask, coeff] : form.terms()) {
    const auto idx = mask_indices(mask);
    // d(e^{i_0} ^ ... ^ e^{i_p}) = sum_r (-1)^r e^{i_<r} ^ de^{i_r} ^ e^{i_>r}
    InvariantForm::Mask before = 0;
    for (std::size_t r = 0; r < idx.size(); ++r) {
      const InvariantForm::Mask self = InvariantForm::Mask{1} << idx[r];
      const InvariantForm::Mask after = mask & ~before & ~self;
      const double position_sign = (r % 2 == 0) ? 1.0 : -1.0;
      for (const auto& [pair_mask, c] : de[static_cast<std::size_t>(idx[r])]) {
        if ((pair_mask & (before | after)) != 0) continue;
        const int s1 = wedge_sign(before, pair_mask);
        const int s2 = wedge_sign(before | pair_mask, after);
        out.add(before | pair_mask | after, position_sign * s1 * s2 * c * coeff);
      }
      before |= self;
    }
  }
  return out.normalized();
}

InvariantForm exterior_derivative(const InvariantForm& form, const InvariantAlgebra& alg,
                                  const FrameRegistry& registry) {
  if (form.frame() == alg.frame()) return exterior_derivative(form, alg);
  const auto to_alg = registry.find(form.frame(), alg.frame());
  if (!to_alg) {
    throw FrameMismatch("exterior_derivative: no registered frame change from '" +
                        form.frame().name + "' to '" + alg.frame().name + "'");
  }
  const InvariantForm d = exterior_derivative(change_frame(form, *to_alg), alg);
  return change_frame(d, to_alg->inverted());
}

}  // namespace akgeo
