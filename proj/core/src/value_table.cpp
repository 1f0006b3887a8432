#include "akgeo/value_table.hpp"

#include <algorithm>
#include <cmath>

namespace akgeo {

namespace {

std::size_t element_count(const std::vector<int>& shape) {
  std::size_t n = 1;
  for (int d : shape) {
    if (d < 0) throw DimensionError("table extent must be non-negative");
    n *= static_cast<std::size_t>(d);
  }
  return n;
}

}  // namespace

ValueTable ValueTable::zeros(std::vector<int> shape) {
  ValueTable t;
  t.values_.assign(element_count(shape), Complex{});
  t.shape_ = std::move(shape);
  return t;
}

ValueTable ValueTable::unknown(std::vector<int> shape) {
  ValueTable t = zeros(std::move(shape));
  t.known_.assign(t.values_.size(), false);
  return t;
}

ValueTable ValueTable::scalar(Complex v) {
  ValueTable t = zeros({});
  t.values_[0] = v;
  return t;
}

std::size_t ValueTable::offset(std::span<const int> index) const {
  if (index.size() != shape_.size()) throw DimensionError("table index has the wrong rank");
  std::size_t off = 0;
  for (std::size_t r = 0; r < index.size(); ++r) {
    if (index[r] < 0 || index[r] >= shape_[r]) throw DimensionError("table index out of range");
    off = off * static_cast<std::size_t>(shape_[r]) + static_cast<std::size_t>(index[r]);
  }
  return off;
}

void ValueTable::set(std::initializer_list<int> index, Complex v) { set_flat(offset(index), v); }

void ValueTable::set_flat(std::size_t i, Complex v) {
  values_.at(i) = v;
  if (!known_.empty()) known_[i] = true;
}

bool ValueTable::fully_known() const {
  return std::all_of(known_.begin(), known_.end(), [](bool b) { return b; });
}

double ValueTable::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (known(i)) m = std::max(m, std::abs(values_[i]));
  }
  return m;
}

double max_abs_difference(const ValueTable& computed, const ValueTable& expected) {
  if (computed.shape() != expected.shape()) throw DimensionError("table shapes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (!expected.known(i)) continue;
    const double d = std::abs(computed.flat(i) - expected.flat(i));
    // NaN must never read as agreement.
    if (std::isnan(d)) return d;
    m = std::max(m, d);
  }
  return m;
}

}  // namespace akgeo
