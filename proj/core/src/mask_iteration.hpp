#pragma once

#include <cstdint>

#include "akgeo/invariant_algebra.hpp"

namespace akgeo::detail {

/// Calls fn(mask) for every degree-subset of {0..dim-1}, in increasing mask order.
template <class Fn>
void for_each_mask(int dim, int degree, Fn&& fn) {
  if (degree == 0) {
    fn(InvariantForm::Mask{0});
    return;
  }
  if (degree > dim) return;
  // Gosper's hack
  const std::uint64_t limit = std::uint64_t{1} << dim;
  std::uint64_t m = (std::uint64_t{1} << degree) - 1;
  while (m < limit) {
    fn(static_cast<InvariantForm::Mask>(m));
    const std::uint64_t c = m & (~m + 1);
    const std::uint64_t r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
}

}  // namespace akgeo::detail
