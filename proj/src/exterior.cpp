#include "hdual/exterior.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

namespace hdual {

namespace {

void check_dim(int n) {
  if (n < 0 || n > kMaxDim) throw UnsupportedDimension("ambient dimension must lie in [0, 32]");
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

MultiIndex::MultiIndex(int n, std::vector<int> entries) : n_(n), entries_(std::move(entries)) {
  check_dim(n);
  if (static_cast<int>(entries_.size()) > n) throw ArgumentError("multi-index longer than ambient dimension");
  int prev = 0;
  for (int e : entries_) {
    if (e < 1 || e > n) throw ArgumentError("multi-index entry out of range");
    if (e <= prev) throw ArgumentError("multi-index must be strictly increasing");
    prev = e;
    mask_ |= Mask{1} << (e - 1);
  }
}

MultiIndex MultiIndex::from_mask(int n, Mask mask) {
  check_dim(n);
  if ((mask & ~full_mask(n)) != 0) throw ArgumentError("mask has bits beyond ambient dimension");
  std::vector<int> e;
  for (int k = 0; k < n; ++k)
    if (mask & (Mask{1} << k)) e.push_back(k + 1);
  return MultiIndex(n, std::move(e));
}

std::string MultiIndex::to_string() const {
  if (entries_.empty()) return "1";
  std::ostringstream os;
  os << "e^";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0 && n_ > 9) os << ',';
    os << entries_[i];
  }
  return os.str();
}

int wedge_sign(Mask a, Mask b) noexcept {
  if (a & b) return 0;
  // Count pairs (i in a, j in b) with i > j.
  int inversions = 0;
  Mask rest = b;
  while (rest) {
    const int j = std::countr_zero(rest);
    rest &= rest - 1;
    const Mask above = (j >= 31) ? Mask{0} : (a >> (j + 1));
    inversions += std::popcount(above);
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

std::uint64_t binomial(int n, int k) noexcept {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::size_t slot_of(Mask mask) noexcept {
  std::size_t rank = 0;
  int k = 0;
  while (mask) {
    const int b = std::countr_zero(mask);
    mask &= mask - 1;
    ++k;
    rank += static_cast<std::size_t>(binomial(b, k));
  }
  return rank;
}

const std::vector<Mask>& basis_masks(int n, int r) {
  check_dim(n);
  static std::map<std::pair<int, int>, std::vector<Mask>> cache;
  std::lock_guard lock(cache_mutex());
  auto [it, inserted] = cache.try_emplace({n, r});
  if (inserted && r >= 0 && r <= n) {
    auto& v = it->second;
    v.reserve(binomial(n, r));
    if (r == 0) {
      v.push_back(0);
    } else {
      // Gosper's hack enumerates popcount-r masks in increasing order.
      std::uint64_t m = (std::uint64_t{1} << r) - 1;
      const std::uint64_t limit = std::uint64_t{1} << n;
      while (m < limit) {
        v.push_back(static_cast<Mask>(m));
        const std::uint64_t c = m & (~m + 1);
        const std::uint64_t s = m + c;
        m = (((s ^ m) >> 2) / c) | s;
      }
    }
  }
  return it->second;
}

// ---------------------------------------------------------------------------

Covector::Covector(int n, int r) : n_(n), r_(r) {
  check_dim(n);
  if (r < 0) throw DegreeMismatch("covector degree must be non-negative");
  c_.assign(static_cast<std::size_t>(binomial(n, r)), 0.0);
}

Covector Covector::basis(const MultiIndex& alpha, double value) {
  Covector c(alpha.dim(), alpha.length());
  c.c_[slot_of(alpha.mask())] = value;
  return c;
}

Covector Covector::scalar(int n, double value) {
  Covector c(n, 0);
  c.c_[0] = value;
  return c;
}

Covector Covector::from_coeffs(int n, int r, std::vector<double> coeffs) {
  Covector c(n, r);
  if (coeffs.size() != c.c_.size()) throw ArgumentError("coefficient count does not match C(n, r)");
  c.c_ = std::move(coeffs);
  return c;
}

double Covector::coeff(const MultiIndex& alpha) const {
  if (alpha.dim() != n_) throw DimensionMismatch("multi-index dimension differs from covector");
  if (alpha.length() != r_) throw DegreeMismatch("multi-index length differs from covector degree");
  return c_[slot_of(alpha.mask())];
}

double& Covector::coeff(const MultiIndex& alpha) {
  if (alpha.dim() != n_) throw DimensionMismatch("multi-index dimension differs from covector");
  if (alpha.length() != r_) throw DegreeMismatch("multi-index length differs from covector degree");
  return c_[slot_of(alpha.mask())];
}

double Covector::scalar_value() const {
  if (r_ != 0 && r_ != n_) throw DegreeMismatch("scalar value requires degree 0 or n");
  return c_[0];
}

bool Covector::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
}

double Covector::max_abs() const noexcept {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

void Covector::check_compatible(const Covector& o) const {
  if (o.n_ != n_) throw DimensionMismatch("covector dimensions differ");
  if (o.r_ != r_) throw DegreeMismatch("covector degrees differ");
}

Covector& Covector::operator+=(const Covector& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Covector& Covector::operator-=(const Covector& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Covector& Covector::operator*=(double s) noexcept {
  for (double& v : c_) v *= s;
  return *this;
}

std::string Covector::to_string() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (std::size_t s = 0; s < c_.size(); ++s) {
    if (c_[s] == 0.0) continue;
    if (!first) os << " + ";
    os << c_[s];
    if (r_ > 0) os << ' ' << MultiIndex::from_mask(n_, mask_at(s)).to_string();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

Covector wedge(const Covector& u, const Covector& v) {
  if (u.dim() != v.dim()) throw DimensionMismatch("wedge of covectors with different dimensions");
  const int n = u.dim();
  Covector out(n, u.degree() + v.degree());
  if (out.size() == 0) return out;
  const auto& mu = basis_masks(n, u.degree());
  const auto& mv = basis_masks(n, v.degree());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0.0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] == 0.0) continue;
      const int s = wedge_sign(mu[i], mv[j]);
      if (s == 0) continue;
      out[slot_of(mu[i] | mv[j])] += s * u[i] * v[j];
    }
  }
  return out;
}

Covector hodge(const Covector& u) {
  const int n = u.dim();
  if (u.degree() > n) throw DegreeMismatch("hodge star of a covector above top degree");
  Covector out(n, n - u.degree());
  apply_slot_map(hodge_map(n, u.degree()), u.coeffs(), out.coeffs());
  return out;
}

double inner(const Covector& u, const Covector& v) {
  if (u.dim() != v.dim()) throw DimensionMismatch("inner product of covectors with different dimensions");
  if (u.degree() != v.degree()) throw DegreeMismatch("inner product of covectors with different degrees");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double norm(const Covector& u) {
  // Scaled accumulation keeps tiny and huge coefficients exact enough.
  const double m = u.max_abs();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double c : u.coeffs()) s += (c / m) * (c / m);
  return m * std::sqrt(s);
}

Covector one_form(std::span<const double> components) {
  const int n = static_cast<int>(components.size());
  Covector c(n, 1);
  // Degree-1 slots are ordered e^1, e^2, ..., e^n.
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = components[static_cast<std::size_t>(i)];
  return c;
}

// ---------------------------------------------------------------------------

MixedCovector::MixedCovector(int n) : n_(n) {
  check_dim(n);
  parts_.reserve(static_cast<std::size_t>(n + 1));
  for (int r = 0; r <= n; ++r) parts_.emplace_back(n, r);
}

MixedCovector::MixedCovector(int n, std::initializer_list<Covector> parts) : MixedCovector(n) {
  for (const auto& p : parts) add(p);
}

const Covector& MixedCovector::part(int degree) const {
  if (degree < 0 || degree > n_) throw DegreeMismatch("mixed covector grade out of range");
  return parts_[static_cast<std::size_t>(degree)];
}

Covector& MixedCovector::part(int degree) {
  if (degree < 0 || degree > n_) throw DegreeMismatch("mixed covector grade out of range");
  return parts_[static_cast<std::size_t>(degree)];
}

void MixedCovector::add(const Covector& c) {
  if (c.dim() != n_) throw DimensionMismatch("covector dimension differs from mixed covector");
  if (c.degree() > n_) return;  // formally zero
  parts_[static_cast<std::size_t>(c.degree())] += c;
}

MixedCovector& MixedCovector::operator+=(const MixedCovector& o) {
  if (o.n_ != n_) throw DimensionMismatch("mixed covector dimensions differ");
  for (int r = 0; r <= n_; ++r) parts_[static_cast<std::size_t>(r)] += o.parts_[static_cast<std::size_t>(r)];
  return *this;
}

double MixedCovector::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& p : parts_) m = std::max(m, p.max_abs());
  return m;
}

MixedCovector mixed_wedge(const MixedCovector& u, const MixedCovector& v) {
  if (u.dim() != v.dim()) throw DimensionMismatch("mixed wedge of different dimensions");
  const int n = u.dim();
  MixedCovector out(n);
  for (int r = 0; r <= n; ++r) {
    if (u.part(r).is_zero()) continue;
    for (int s = 0; r + s <= n; ++s) {
      if (v.part(s).is_zero()) continue;
      out.part(r + s) += wedge(u.part(r), v.part(s));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

enum class MapKind { LeftWedge, Interior, Hodge };

SlotMap build_map(MapKind kind, int n, int r, int i) {
  SlotMap m;
  const auto& src = basis_masks(n, r);
  m.from_degree = r;
  m.to_degree = kind == MapKind::LeftWedge ? r + 1 : kind == MapKind::Interior ? r - 1 : n - r;
  m.target.assign(src.size(), -1);
  m.sign.assign(src.size(), 0.0);
  const Mask bit = (i >= 0) ? (Mask{1} << i) : Mask{0};
  for (std::size_t s = 0; s < src.size(); ++s) {
    const Mask a = src[s];
    switch (kind) {
      case MapKind::LeftWedge:
        if (a & bit) continue;
        m.target[s] = static_cast<std::int32_t>(slot_of(a | bit));
        m.sign[s] = wedge_sign(bit, a);
        break;
      case MapKind::Interior:
        // e_i ⌟ (e^i ∧ e^β) = e^β, so the sign is that of moving i to the front.
        if (!(a & bit)) continue;
        m.target[s] = static_cast<std::int32_t>(slot_of(a ^ bit));
        m.sign[s] = wedge_sign(bit, a ^ bit);
        break;
      case MapKind::Hodge: {
        const Mask c = MultiIndex::full_mask(n) ^ a;
        m.target[s] = static_cast<std::int32_t>(slot_of(c));
        m.sign[s] = wedge_sign(a, c);
        break;
      }
    }
  }
  return m;
}

const SlotMap& cached_map(MapKind kind, int n, int r, int i) {
  check_dim(n);
  if (r < 0 || r > n) throw DegreeMismatch("slot map degree out of range");
  if (kind != MapKind::Hodge && (i < 0 || i >= n)) throw ArgumentError("basis direction out of range");
  static std::map<std::tuple<int, int, int, int>, std::unique_ptr<SlotMap>> cache;
  const auto key = std::make_tuple(static_cast<int>(kind), n, r, i);
  {
    std::lock_guard lock(cache_mutex());
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<SlotMap>(build_map(kind, n, r, i));
  std::lock_guard lock(cache_mutex());
  auto [it, inserted] = cache.try_emplace(key, std::move(built));
  return *it->second;
}

}  // namespace

const SlotMap& left_wedge_map(int n, int r, int i) { return cached_map(MapKind::LeftWedge, n, r, i); }
const SlotMap& interior_map(int n, int r, int i) { return cached_map(MapKind::Interior, n, r, i); }
const SlotMap& hodge_map(int n, int r) { return cached_map(MapKind::Hodge, n, r, -1); }

}  // namespace hdual
