#pragma once

// Differential-form fields on open subsets of E with analytic d, δ and Δ.
//
// Every field family evaluates a Jet: the value of the form together with all
// partial derivatives of its coefficients up to a requested order. The
// differential operators are linear maps on jets, so d, δ, Δ and their
// compositions are evaluated without finite differences.
//
// Conventions: δ on r-forms is (-1)^{nr+n+1} ∗d∗ (the formal adjoint of d for
// the pinned Hodge star), equivalently δu = -Σ_i e_i ⌟ ∂_i u, and
// Δ = -(dδ + δd), which is Σ_i ∂_i² componentwise.

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hdual/exterior.hpp"
#include "hdual/point.hpp"
#include "hdual/polynomial.hpp"

namespace hdual {

inline constexpr int kMaxJetOrder = 3;

// Sign s such that δ = s ∗d∗ on degree-r forms in dimension n.
constexpr double codifferential_sign(int n, int r) noexcept {
  return parity_sign(static_cast<long>(n) * r + n + 1);
}

// Value and coefficient partial derivatives (full tensors) of an r-form at a
// point, up to `order`.
class Jet {
 public:
  Jet(int n, int r, int order);

  int dim() const noexcept { return n_; }
  int degree() const noexcept { return r_; }
  int order() const noexcept { return order_; }
  std::size_t width() const noexcept { return width_; }

  static std::size_t block_count(int n, int order) noexcept;
  static std::size_t level_offset(int n, int level) noexcept;

  // Flat block index of the derivative ∂_{dirs[0]} ∂_{dirs[1]} ... (0-based).
  std::size_t block_index(std::span<const int> dirs) const;
  std::size_t block_index(std::initializer_list<int> dirs) const {
    return block_index(std::span<const int>(dirs.begin(), dirs.size()));
  }

  std::span<double> block(std::size_t b) noexcept { return {data_.data() + b * width_, width_}; }
  std::span<const double> block(std::size_t b) const noexcept { return {data_.data() + b * width_, width_}; }
  std::span<double> raw() noexcept { return data_; }
  std::span<const double> raw() const noexcept { return data_; }

  Covector value() const { return covector(0); }
  Covector partial(std::initializer_list<int> dirs) const { return covector(block_index(dirs)); }
  Covector covector(std::size_t b) const;

  // This jet truncated to a lower order.
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator*=(double s) noexcept;

 private:
  int n_;
  int r_;
  int order_;
  std::size_t width_;
  std::vector<double> data_;
};

// Jet of du from a jet of u (loses one order).
Jet jet_d(const Jet& u);
// Jet of δu via the interior-product path δu = -Σ e_i ⌟ ∂_i u.
Jet jet_delta(const Jet& u);
// Jet of δu via the composed-star path (-1)^{nr+n+1} ∗d∗u.
Jet jet_delta_star(const Jet& u);
// Pointwise Hodge star of a jet.
Jet jet_hodge(const Jet& u);
// Jet of Δu = -(dδ + δd)u (loses two orders).
Jet jet_laplacian(const Jet& u);

class FormField {
 public:
  virtual ~FormField() = default;

  virtual int dim() const = 0;
  virtual int degree() const = 0;
  // Highest derivative order the family can evaluate.
  virtual int max_order() const = 0;
  virtual bool in_domain(const Point& x) const = 0;
  virtual std::string describe() const = 0;

  // Throws DomainError outside the domain, ArgumentError above max_order().
  Jet jet(const Point& x, int order) const;

 protected:
  virtual Jet compute_jet(const Point& x, int order) const = 0;
  // Throws when x is outside the domain; DomainError by default.
  virtual void require_domain(const Point& x) const;
};

using FieldPtr = std::shared_ptr<const FormField>;

// Pointwise evaluation.
Covector eval(const FormField& f, const Point& x);
Covector d(const FormField& f, const Point& x);
// Throws DegreeMismatch on 0-forms.
Covector delta(const FormField& f, const Point& x);
Covector laplacian(const FormField& f, const Point& x);

// Polynomial-coefficient forms; derivatives are exact symbolic ones.
class PolynomialForm final : public FormField {
 public:
  // coeffs[slot] is the coefficient of the slot-th basis r-covector.
  PolynomialForm(int n, int r, std::vector<Polynomial> coeffs);
  static PolynomialForm zero(int n, int r);
  static PolynomialForm constant(const Covector& c);
  // Sum of p_k e^{α_k}.
  static PolynomialForm from_terms(int n, int r, const std::vector<std::pair<MultiIndex, Polynomial>>& terms);

  int dim() const override { return n_; }
  int degree() const override { return r_; }
  int max_order() const override { return kMaxJetOrder; }
  bool in_domain(const Point&) const override { return true; }
  std::string describe() const override;

  const std::vector<Polynomial>& coefficients() const noexcept { return coeffs_; }
  const Polynomial& coefficient(const MultiIndex& alpha) const;

  PolynomialForm exterior_derivative() const;
  PolynomialForm codifferential() const;
  PolynomialForm hodge_star() const;
  PolynomialForm& operator+=(const PolynomialForm& o);
  PolynomialForm& operator*=(double s);

 protected:
  Jet compute_jet(const Point& x, int order) const override;

 private:
  int n_;
  int r_;
  std::vector<Polynomial> coeffs_;
};

// Term of a kernel-built form: k(x, center) ξ, or its d / δ.
enum class KernelOp { None, D, Delta };

struct KernelTerm {
  Point center;
  Covector xi;
  KernelOp op = KernelOp::None;
};

// Linear combination of Newtonian-kernel terms k(x, x0) = |x - x0|^{2-n}.
class KernelForm final : public FormField {
 public:
  KernelForm(int n, int r, std::vector<KernelTerm> terms);

  int dim() const override { return n_; }
  int degree() const override { return r_; }
  int max_order() const override;
  bool in_domain(const Point& x) const override;
  std::string describe() const override;
  const std::vector<KernelTerm>& terms() const noexcept { return terms_; }

 protected:
  Jet compute_jet(const Point& x, int order) const override;

 private:
  int n_;
  int r_;
  std::vector<KernelTerm> terms_;
};

// Field-valued operators. Polynomial inputs stay polynomial (symbolic).
FieldPtr exterior_derivative(const FieldPtr& f);
FieldPtr codifferential(const FieldPtr& f);
FieldPtr hodge_star(const FieldPtr& f);
FieldPtr scaled(const FieldPtr& f, double s);
FieldPtr linear_combination(const std::vector<std::pair<double, FieldPtr>>& terms);
FieldPtr sum(const FieldPtr& a, const FieldPtr& b);

template <class F, class... Args>
FieldPtr make_field(Args&&... args) {
  return std::make_shared<const F>(std::forward<Args>(args)...);
}

struct HarmonicCheck {
  bool harmonic = false;
  double max_residual = 0.0;  // max over samples of max(|du|, |δu|)
};

HarmonicCheck is_harmonic(const FormField& f, std::span<const Point> samples, double tol);

// Non-homogeneous form w_lo + w_hi of degrees r-1 and r+1.
struct HolomorphicPair {
  HolomorphicPair(int r, FieldPtr lo, FieldPtr hi);
  static HolomorphicPair zero(int n, int r);

  int dim() const noexcept { return lo->dim(); }
  int r;
  FieldPtr lo;
  FieldPtr hi;
};

HolomorphicPair pair_sum(const HolomorphicPair& a, const HolomorphicPair& b);
HolomorphicPair pair_scaled(const HolomorphicPair& a, double s);

struct PairCheck {
  bool holomorphic = false;
  double closure_residual = 0.0;  // max |d w_lo + δ w_hi|
  double d_hi_residual = 0.0;     // max |d w_hi|
  double delta_lo_residual = 0.0; // max |δ w_lo|
};

PairCheck is_holomorphic_pair(const HolomorphicPair& w, std::span<const Point> samples, double tol);

}  // namespace hdual
