#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "akgeo/types.hpp"

namespace akgeo {

/// Dense row-major complex array with an optional per-entry "known" mask.
/// Expected-value tables use the mask for entries the source leaves open.
class ValueTable {
 public:
  ValueTable() = default;

  /// All entries zero and known.
  static ValueTable zeros(std::vector<int> shape);
  /// All entries zero and unknown; set() marks entries known.
  static ValueTable unknown(std::vector<int> shape);
  static ValueTable scalar(Complex v);

  const std::vector<int>& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<Complex>& values() const noexcept { return values_; }

  std::size_t offset(std::span<const int> index) const;
  std::size_t offset(std::initializer_list<int> index) const {
    return offset(std::span<const int>(index.begin(), index.size()));
  }

  Complex get(std::initializer_list<int> index) const { return values_[offset(index)]; }
  Complex flat(std::size_t i) const { return values_[i]; }
  void set(std::initializer_list<int> index, Complex v);
  void set_flat(std::size_t i, Complex v);
  bool known(std::size_t i) const { return known_.empty() || known_[i]; }
  bool fully_known() const;

  double max_abs() const;

 private:
  std::vector<int> shape_;
  std::vector<Complex> values_;
  std::vector<bool> known_;  // empty: every entry known
};

/// Max |a - b| over entries known in `expected`. Throws DimensionError on shape mismatch.
double max_abs_difference(const ValueTable& computed, const ValueTable& expected);

}  // namespace akgeo
