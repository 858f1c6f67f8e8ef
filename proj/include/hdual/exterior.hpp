#pragma once

// Exterior algebra of covectors on oriented Euclidean n-space.
//
// Basis r-covectors e^α are addressed by an n-bit mask (bit k set <=> index k+1
// belongs to the increasing multi-index α). Coefficients of a degree-r covector
// are stored densely, one slot per mask of popcount r, in increasing numeric
// order of the masks. The Hodge star is fixed by e^α ∧ ∗e^α = e^{1…n}.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hdual/errors.hpp"

namespace hdual {

using Mask = std::uint32_t;

inline constexpr int kMaxDim = 32;

// Strictly increasing sequence of indices in {1..n}.
class MultiIndex {
 public:
  MultiIndex(int n, std::vector<int> entries);
  MultiIndex(int n, std::initializer_list<int> entries)
      : MultiIndex(n, std::vector<int>(entries)) {}
  static MultiIndex from_mask(int n, Mask mask);

  int dim() const noexcept { return n_; }
  int length() const noexcept { return static_cast<int>(entries_.size()); }
  const std::vector<int>& entries() const noexcept { return entries_; }
  Mask mask() const noexcept { return mask_; }
  MultiIndex complement() const { return from_mask(n_, full_mask(n_) ^ mask_); }
  std::string to_string() const;

  static Mask full_mask(int n) noexcept {
    return n >= 32 ? ~Mask{0} : ((Mask{1} << n) - 1);
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.n_ == b.n_ && a.mask_ == b.mask_;
  }

 private:
  int n_;
  std::vector<int> entries_;
  Mask mask_ = 0;
};

// Sign (+1/-1) of the permutation sorting the concatenation (a, b) of two
// disjoint increasing index sets; 0 if they intersect.
int wedge_sign(Mask a, Mask b) noexcept;

std::uint64_t binomial(int n, int k) noexcept;

// Masks of popcount r in {0..n-1}, in slot order. Cached; thread-safe.
const std::vector<Mask>& basis_masks(int n, int r);
// Slot of a popcount-r mask (combinatorial rank).
std::size_t slot_of(Mask mask) noexcept;

class Covector {
 public:
  Covector() = default;
  // Zero covector. Degrees above n are allowed and have no coefficients.
  Covector(int n, int r);

  static Covector basis(const MultiIndex& alpha, double value = 1.0);
  static Covector basis(int n, std::initializer_list<int> entries, double value = 1.0) {
    return basis(MultiIndex(n, entries), value);
  }
  static Covector scalar(int n, double value);
  static Covector volume(int n) { return basis(MultiIndex::from_mask(n, MultiIndex::full_mask(n))); }
  static Covector from_coeffs(int n, int r, std::vector<double> coeffs);

  int dim() const noexcept { return n_; }
  int degree() const noexcept { return r_; }
  std::size_t size() const noexcept { return c_.size(); }
  bool empty_basis() const noexcept { return c_.empty(); }

  double operator[](std::size_t slot) const noexcept { return c_[slot]; }
  double& operator[](std::size_t slot) noexcept { return c_[slot]; }
  double coeff(const MultiIndex& alpha) const;
  double& coeff(const MultiIndex& alpha);
  Mask mask_at(std::size_t slot) const { return basis_masks(n_, r_)[slot]; }
  std::span<const double> coeffs() const noexcept { return c_; }
  std::span<double> coeffs() noexcept { return c_; }

  // Value of a degree-0 or degree-n covector as a real number.
  double scalar_value() const;
  bool is_zero() const noexcept;
  double max_abs() const noexcept;

  Covector& operator+=(const Covector& o);
  Covector& operator-=(const Covector& o);
  Covector& operator*=(double s) noexcept;
  Covector operator-() const { Covector c = *this; c *= -1.0; return c; }
  friend Covector operator+(Covector a, const Covector& b) { return a += b; }
  friend Covector operator-(Covector a, const Covector& b) { return a -= b; }
  friend Covector operator*(Covector a, double s) { return a *= s; }
  friend Covector operator*(double s, Covector a) { return a *= s; }
  friend bool operator==(const Covector& a, const Covector& b) {
    return a.n_ == b.n_ && a.r_ == b.r_ && a.c_ == b.c_;
  }

  std::string to_string() const;

 private:
  void check_compatible(const Covector& o) const;

  int n_ = 0;
  int r_ = 0;
  std::vector<double> c_;
};

Covector wedge(const Covector& u, const Covector& v);
Covector hodge(const Covector& u);
double inner(const Covector& u, const Covector& v);
double norm(const Covector& u);

// Degree-1 covector with the given components.
Covector one_form(std::span<const double> components);

// Graded element of the full exterior algebra: one part per degree 0..n.
class MixedCovector {
 public:
  explicit MixedCovector(int n);
  MixedCovector(int n, std::initializer_list<Covector> parts);

  int dim() const noexcept { return n_; }
  const Covector& part(int degree) const;
  Covector& part(int degree);
  void add(const Covector& c);

  MixedCovector& operator+=(const MixedCovector& o);
  friend bool operator==(const MixedCovector& a, const MixedCovector& b) {
    return a.n_ == b.n_ && a.parts_ == b.parts_;
  }
  double max_abs() const noexcept;

 private:
  int n_;
  std::vector<Covector> parts_;
};

MixedCovector mixed_wedge(const MixedCovector& u, const MixedCovector& v);

// Sparse linear maps between coefficient slots used by the differential
// operators: each source slot maps to at most one target slot with a sign.
struct SlotMap {
  int from_degree = 0;
  int to_degree = 0;
  std::vector<std::int32_t> target;  // -1 when the image vanishes
  std::vector<double> sign;
};

// e^i ∧ (.) on degree-r covectors (i is 0-based).
const SlotMap& left_wedge_map(int n, int r, int i);
// Interior product with the basis vector e_i on degree-r covectors.
const SlotMap& interior_map(int n, int r, int i);
// Hodge star on degree-r covectors.
const SlotMap& hodge_map(int n, int r);

// Accumulate scale * map(src) into dst.
inline void apply_slot_map(const SlotMap& m, std::span<const double> src, std::span<double> dst,
                           double scale = 1.0) noexcept {
  for (std::size_t s = 0; s < src.size(); ++s) {
    const auto t = m.target[s];
    if (t >= 0) dst[static_cast<std::size_t>(t)] += scale * m.sign[s] * src[s];
  }
}

// (-1)^k as a double.
constexpr double parity_sign(long k) noexcept { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace hdual
