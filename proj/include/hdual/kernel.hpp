#pragma once

#include <span>

#include "hdual/point.hpp"

namespace hdual {

inline constexpr int kMaxKernelOrder = 4;

// All x-derivatives of k(x, y) = |x - y|^{2-n} up to `order` (<= 4), written
// as full tensors level by level in the Jet block layout (width 1):
// out[0] = k, out[1 + i] = ∂_i k, out[1 + n + i n + j] = ∂_i ∂_j k, ...
// `diff` is x - y and must be non-zero. `out` needs Jet::block_count(n, order)
// entries.
void kernel_derivatives(const Point& diff, int order, std::span<double> out);

}  // namespace hdual
