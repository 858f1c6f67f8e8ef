#include "hdual/kernel.hpp"

#include <array>
#include <cmath>

#include "hdual/fields.hpp"

namespace hdual {

namespace {

// Sum over partial pairings of the index list `idx` (length m):
//   ∂_{idx} ρ^a = Σ_P Π_{pairs}δ · Π_{singles} d · F_{m-|P|} ρ^{a-2(m-|P|)},
// with F_k = a (a-2) ... (a-2k+2). `radial[k]` holds F_k ρ^{a-2k}; `k` counts
// the singles plus pairs chosen so far.
double pairing_sum(const int* idx, int m, const Point& d, const double* radial, int k) {
  if (m == 0) return radial[k];
  const int first = idx[0];
  // first index is a single
  double total = d[first] * pairing_sum(idx + 1, m - 1, d, radial, k + 1);
  // or paired with a later index
  for (int j = 1; j < m; ++j) {
    if (idx[j] != first) continue;
    std::array<int, kMaxKernelOrder> rest{};
    int t = 0;
    for (int q = 1; q < m; ++q)
      if (q != j) rest[static_cast<std::size_t>(t++)] = idx[q];
    total += pairing_sum(rest.data(), m - 2, d, radial, k + 1);
  }
  return total;
}

}  // namespace

void kernel_derivatives(const Point& diff, int order, std::span<double> out) {
  const int n = diff.dim();
  if (order < 0 || order > kMaxKernelOrder) throw ArgumentError("kernel derivative order out of range");
  if (out.size() < Jet::block_count(n, order)) throw ArgumentError("kernel derivative buffer too small");
  const double rho2 = diff.dot(diff);
  if (rho2 == 0.0) throw SingularityError("kernel evaluated at coincident points");
  const double a = 2.0 - n;
  const double rho = std::sqrt(rho2);
  const double inv_rho2 = 1.0 / rho2;

  std::array<double, kMaxKernelOrder + 1> radial{};
  radial[0] = std::pow(rho, a);
  double f = 1.0;
  for (int k = 1; k <= order; ++k) {
    f *= (a - 2.0 * (k - 1));
    radial[static_cast<std::size_t>(k)] = f * radial[0] * std::pow(inv_rho2, k);
  }

  out[0] = radial[0];
  if (order >= 1) {
    for (int i = 0; i < n; ++i) out[1 + static_cast<std::size_t>(i)] = radial[1] * diff[i];
  }
  if (order >= 2) {
    const std::size_t base = Jet::level_offset(n, 2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = radial[2] * diff[i] * diff[j];
        if (i == j) v += radial[1];
        out[base + static_cast<std::size_t>(i * n + j)] = v;
      }
  }
  for (int level = 3; level <= order; ++level) {
    const std::size_t base = Jet::level_offset(n, level);
    std::size_t count = 1;
    for (int k = 0; k < level; ++k) count *= static_cast<std::size_t>(n);
    std::array<int, kMaxKernelOrder> idx{};
    for (std::size_t flat = 0; flat < count; ++flat) {
      std::size_t rem = flat;
      for (int k = level - 1; k >= 0; --k) {
        idx[static_cast<std::size_t>(k)] = static_cast<int>(rem % static_cast<std::size_t>(n));
        rem /= static_cast<std::size_t>(n);
      }
      out[base + flat] = pairing_sum(idx.data(), level, diff, radial.data(), 0);
    }
  }
}

}  // namespace hdual
