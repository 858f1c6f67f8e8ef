#include "hdual/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hdual/kernel.hpp"

namespace hdual {

// ---------------------------------------------------------------------------
// Jet

Jet::Jet(int n, int r, int order)
    : n_(n), r_(r), order_(order), width_(static_cast<std::size_t>(binomial(n, r))) {
  if (order < 0) throw ArgumentError("jet order must be non-negative");
  if (r < 0) throw DegreeMismatch("jet degree must be non-negative");
  data_.assign(block_count(n, order) * width_, 0.0);
}

std::size_t Jet::level_offset(int n, int level) noexcept {
  std::size_t off = 0;
  std::size_t p = 1;
  for (int j = 0; j < level; ++j) {
    off += p;
    p *= static_cast<std::size_t>(n);
  }
  return off;
}

std::size_t Jet::block_count(int n, int order) noexcept { return level_offset(n, order + 1); }

std::size_t Jet::block_index(std::span<const int> dirs) const {
  if (static_cast<int>(dirs.size()) > order_) throw ArgumentError("derivative order exceeds jet order");
  std::size_t flat = 0;
  for (int i : dirs) {
    if (i < 0 || i >= n_) throw ArgumentError("derivative direction out of range");
    flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
  }
  return level_offset(n_, static_cast<int>(dirs.size())) + flat;
}

Covector Jet::covector(std::size_t b) const {
  Covector c(n_, r_);
  const auto src = block(b);
  std::copy(src.begin(), src.end(), c.coeffs().begin());
  return c;
}

Jet Jet::truncated(int order) const {
  if (order > order_) throw ArgumentError("cannot truncate a jet to a higher order");
  Jet t(n_, r_, order);
  std::copy(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(t.data_.size()), t.data_.begin());
  return t;
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.n_ != n_ || o.r_ != r_) throw DegreeMismatch("jets of different shape");
  if (o.order_ < order_) throw ArgumentError("jet order too low for accumulation");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Jet& Jet::operator*=(double s) noexcept {
  for (double& v : data_) v *= s;
  return *this;
}

namespace {

// out_β = Σ_i map_i(u_{β i}) for every derivative multi-index β of the output.
template <class MapFor>
Jet jet_first_order(const Jet& u, int out_degree, MapFor map_for, double scale) {
  if (u.order() < 1) throw ArgumentError("differentiating a jet needs order >= 1");
  const int n = u.dim();
  Jet out(n, out_degree, u.order() - 1);
  if (out.width() == 0 || u.width() == 0) return out;
  for (int level = 0; level <= out.order(); ++level) {
    const std::size_t base_out = Jet::level_offset(n, level);
    const std::size_t base_in = Jet::level_offset(n, level + 1);
    const std::size_t count = Jet::level_offset(n, level + 1) - base_out;
    for (std::size_t f = 0; f < count; ++f) {
      auto dst = out.block(base_out + f);
      for (int i = 0; i < n; ++i) {
        const auto src = u.block(base_in + f * static_cast<std::size_t>(n) + static_cast<std::size_t>(i));
        apply_slot_map(map_for(i), src, dst, scale);
      }
    }
  }
  return out;
}

}  // namespace

Jet jet_d(const Jet& u) {
  const int n = u.dim();
  const int r = u.degree();
  if (r >= n) return Jet(n, r + 1, u.order() - 1);
  return jet_first_order(u, r + 1, [&](int i) -> const SlotMap& { return left_wedge_map(n, r, i); }, 1.0);
}

Jet jet_delta(const Jet& u) {
  const int n = u.dim();
  const int r = u.degree();
  if (r == 0) throw DegreeMismatch("codifferential of a 0-form is undefined (degree underflow)");
  if (r > n) return Jet(n, r - 1, u.order() - 1);
  return jet_first_order(u, r - 1, [&](int i) -> const SlotMap& { return interior_map(n, r, i); }, -1.0);
}

Jet jet_hodge(const Jet& u) {
  const int n = u.dim();
  const int r = u.degree();
  if (r > n) throw DegreeMismatch("hodge star above top degree");
  Jet out(n, n - r, u.order());
  const auto& m = hodge_map(n, r);
  const std::size_t blocks = Jet::block_count(n, u.order());
  for (std::size_t b = 0; b < blocks; ++b) apply_slot_map(m, u.block(b), out.block(b));
  return out;
}

Jet jet_delta_star(const Jet& u) {
  if (u.degree() == 0) throw DegreeMismatch("codifferential of a 0-form is undefined (degree underflow)");
  Jet out = jet_hodge(jet_d(jet_hodge(u)));
  out *= codifferential_sign(u.dim(), u.degree());
  return out;
}

Jet jet_laplacian(const Jet& u) {
  if (u.order() < 2) throw ArgumentError("laplacian needs a jet of order >= 2");
  const int n = u.dim();
  const int r = u.degree();
  Jet out(n, r, u.order() - 2);
  if (r > 0) out += jet_d(jet_delta(u));
  if (r < n) out += jet_delta(jet_d(u));
  out *= -1.0;
  return out;
}

// ---------------------------------------------------------------------------
// FormField

Jet FormField::jet(const Point& x, int order) const {
  if (x.dim() != dim()) throw DimensionMismatch("evaluation point has wrong dimension");
  if (order < 0 || order > max_order())
    throw ArgumentError("requested derivative order exceeds what " + describe() + " supports");
  require_domain(x);
  return compute_jet(x, order);
}

void FormField::require_domain(const Point& x) const {
  if (!in_domain(x)) throw DomainError("point outside the domain of " + describe());
}

Covector eval(const FormField& f, const Point& x) { return f.jet(x, 0).value(); }
Covector d(const FormField& f, const Point& x) { return jet_d(f.jet(x, 1)).value(); }

Covector delta(const FormField& f, const Point& x) {
  if (f.degree() == 0) throw DegreeMismatch("codifferential of a 0-form is undefined (degree underflow)");
  return jet_delta(f.jet(x, 1)).value();
}

Covector laplacian(const FormField& f, const Point& x) { return jet_laplacian(f.jet(x, 2)).value(); }

// ---------------------------------------------------------------------------
// PolynomialForm

namespace {

double falling(int e, int k) {
  double f = 1.0;
  for (int t = 0; t < k; ++t) f *= (e - t);
  return f;
}

// ∂^counts p evaluated at x.
double eval_partial(const Polynomial& p, const std::array<int, kMaxPointDim>& counts, const Point& x) {
  const int n = p.dim();
  double sum = 0.0;
  for (const auto& [e, c] : p.terms()) {
    double m = c;
    for (int i = 0; i < n && m != 0.0; ++i) {
      const int ei = e[static_cast<std::size_t>(i)];
      const int ki = counts[static_cast<std::size_t>(i)];
      if (ki > ei) {
        m = 0.0;
        break;
      }
      m *= falling(ei, ki);
      for (int t = 0; t < ei - ki; ++t) m *= x[i];
    }
    sum += m;
  }
  return sum;
}

}  // namespace

PolynomialForm::PolynomialForm(int n, int r, std::vector<Polynomial> coeffs)
    : n_(n), r_(r), coeffs_(std::move(coeffs)) {
  if (n < 1 || n > kMaxPointDim) throw UnsupportedDimension("polynomial forms support 1 <= n <= 8");
  if (r < 0 || r > n) throw DegreeMismatch("polynomial form degree out of range");
  if (coeffs_.size() != binomial(n, r)) throw ArgumentError("polynomial form needs C(n, r) coefficients");
  for (const auto& p : coeffs_)
    if (p.dim() != n) throw DimensionMismatch("coefficient polynomial has wrong arity");
}

PolynomialForm PolynomialForm::zero(int n, int r) {
  return PolynomialForm(n, r, std::vector<Polynomial>(binomial(n, r), Polynomial(n)));
}

PolynomialForm PolynomialForm::constant(const Covector& c) {
  std::vector<Polynomial> coeffs;
  coeffs.reserve(c.size());
  for (std::size_t s = 0; s < c.size(); ++s) coeffs.push_back(Polynomial::constant(c.dim(), c[s]));
  return PolynomialForm(c.dim(), c.degree(), std::move(coeffs));
}

PolynomialForm PolynomialForm::from_terms(int n, int r,
                                          const std::vector<std::pair<MultiIndex, Polynomial>>& terms) {
  auto f = zero(n, r);
  for (const auto& [alpha, p] : terms) {
    if (alpha.dim() != n) throw DimensionMismatch("multi-index dimension differs from form");
    if (alpha.length() != r) throw DegreeMismatch("multi-index length differs from form degree");
    f.coeffs_[slot_of(alpha.mask())] += p;
  }
  return f;
}

const Polynomial& PolynomialForm::coefficient(const MultiIndex& alpha) const {
  if (alpha.dim() != n_ || alpha.length() != r_) throw DegreeMismatch("multi-index does not match form");
  return coeffs_[slot_of(alpha.mask())];
}

std::string PolynomialForm::describe() const {
  std::ostringstream os;
  os << "polynomial " << r_ << "-form in R^" << n_;
  return os.str();
}

Jet PolynomialForm::compute_jet(const Point& x, int order) const {
  Jet j(n_, r_, order);
  if (j.width() == 0) return j;
  std::array<int, kMaxPointDim> counts{};
  for (int level = 0; level <= order; ++level) {
    const std::size_t base = Jet::level_offset(n_, level);
    const std::size_t count = Jet::level_offset(n_, level + 1) - base;
    for (std::size_t f = 0; f < count; ++f) {
      counts.fill(0);
      std::size_t rem = f;
      for (int k = 0; k < level; ++k) {
        ++counts[rem % static_cast<std::size_t>(n_)];
        rem /= static_cast<std::size_t>(n_);
      }
      auto dst = j.block(base + f);
      for (std::size_t s = 0; s < coeffs_.size(); ++s) dst[s] = eval_partial(coeffs_[s], counts, x);
    }
  }
  return j;
}

PolynomialForm PolynomialForm::exterior_derivative() const {
  if (r_ == n_) throw DegreeMismatch("exterior derivative of a top-degree form leaves the algebra");
  auto out = zero(n_, r_ + 1);
  const auto& masks = basis_masks(n_, r_);
  for (std::size_t s = 0; s < coeffs_.size(); ++s) {
    if (coeffs_[s].is_zero()) continue;
    for (int i = 0; i < n_; ++i) {
      const Mask bit = Mask{1} << i;
      if (masks[s] & bit) continue;
      auto term = coeffs_[s].derivative(i);
      term *= wedge_sign(bit, masks[s]);
      out.coeffs_[slot_of(masks[s] | bit)] += term;
    }
  }
  return out;
}

PolynomialForm PolynomialForm::codifferential() const {
  if (r_ == 0) throw DegreeMismatch("codifferential of a 0-form is undefined (degree underflow)");
  auto out = zero(n_, r_ - 1);
  const auto& masks = basis_masks(n_, r_);
  for (std::size_t s = 0; s < coeffs_.size(); ++s) {
    if (coeffs_[s].is_zero()) continue;
    for (int i = 0; i < n_; ++i) {
      const Mask bit = Mask{1} << i;
      if (!(masks[s] & bit)) continue;
      auto term = coeffs_[s].derivative(i);
      term *= -wedge_sign(bit, masks[s] ^ bit);
      out.coeffs_[slot_of(masks[s] ^ bit)] += term;
    }
  }
  return out;
}

PolynomialForm PolynomialForm::hodge_star() const {
  auto out = zero(n_, n_ - r_);
  const auto& m = hodge_map(n_, r_);
  for (std::size_t s = 0; s < coeffs_.size(); ++s) {
    out.coeffs_[static_cast<std::size_t>(m.target[s])] += coeffs_[s] * m.sign[s];
  }
  return out;
}

PolynomialForm& PolynomialForm::operator+=(const PolynomialForm& o) {
  if (o.n_ != n_) throw DimensionMismatch("polynomial forms of different dimension");
  if (o.r_ != r_) throw DegreeMismatch("polynomial forms of different degree");
  for (std::size_t s = 0; s < coeffs_.size(); ++s) coeffs_[s] += o.coeffs_[s];
  return *this;
}

PolynomialForm& PolynomialForm::operator*=(double s) {
  for (auto& p : coeffs_) p *= s;
  return *this;
}

// ---------------------------------------------------------------------------
// KernelForm

namespace {

int term_degree(const KernelTerm& t) {
  switch (t.op) {
    case KernelOp::None: return t.xi.degree();
    case KernelOp::D: return t.xi.degree() + 1;
    case KernelOp::Delta: return t.xi.degree() - 1;
  }
  return -1;
}

}  // namespace

KernelForm::KernelForm(int n, int r, std::vector<KernelTerm> terms) : n_(n), r_(r), terms_(std::move(terms)) {
  if (n < 3 || n > kMaxPointDim) throw UnsupportedDimension("kernel forms need 3 <= n <= 8");
  if (r < 0 || r > n) throw DegreeMismatch("kernel form degree out of range");
  for (const auto& t : terms_) {
    if (t.center.dim() != n || t.xi.dim() != n) throw DimensionMismatch("kernel term dimension mismatch");
    if (t.op == KernelOp::Delta && t.xi.degree() == 0)
      throw DegreeMismatch("codifferential of a scalar kernel term is undefined");
    if (term_degree(t) != r) throw DegreeMismatch("kernel term degree differs from form degree");
  }
}

int KernelForm::max_order() const { return kMaxJetOrder; }

bool KernelForm::in_domain(const Point& x) const {
  return std::none_of(terms_.begin(), terms_.end(), [&](const KernelTerm& t) { return x == t.center; });
}

std::string KernelForm::describe() const {
  std::ostringstream os;
  os << "kernel " << r_ << "-form in R^" << n_ << " with " << terms_.size() << " term(s)";
  return os.str();
}

Jet KernelForm::compute_jet(const Point& x, int order) const {
  Jet out(n_, r_, order);
  std::vector<double> k;
  for (const auto& t : terms_) {
    const int kord = order + (t.op == KernelOp::None ? 0 : 1);
    k.assign(Jet::block_count(n_, kord), 0.0);
    kernel_derivatives(x - t.center, kord, k);
    Jet base(n_, t.xi.degree(), kord);
    for (std::size_t b = 0; b < k.size(); ++b) {
      auto dst = base.block(b);
      for (std::size_t s = 0; s < t.xi.size(); ++s) dst[s] = k[b] * t.xi[s];
    }
    switch (t.op) {
      case KernelOp::None: out += base; break;
      case KernelOp::D: out += jet_d(base); break;
      case KernelOp::Delta: out += jet_delta(base); break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Composite fields

namespace {

enum class UnaryOp { D, Delta, Hodge };

class DerivedField final : public FormField {
 public:
  DerivedField(FieldPtr parent, UnaryOp op) : parent_(std::move(parent)), op_(op) {
    if (op_ == UnaryOp::Delta && parent_->degree() == 0)
      throw DegreeMismatch("codifferential of a 0-form is undefined (degree underflow)");
  }
  int dim() const override { return parent_->dim(); }
  int degree() const override {
    switch (op_) {
      case UnaryOp::D: return parent_->degree() + 1;
      case UnaryOp::Delta: return parent_->degree() - 1;
      case UnaryOp::Hodge: return parent_->dim() - parent_->degree();
    }
    return 0;
  }
  int max_order() const override { return parent_->max_order() - (op_ == UnaryOp::Hodge ? 0 : 1); }
  bool in_domain(const Point& x) const override { return parent_->in_domain(x); }
  std::string describe() const override {
    const char* name = op_ == UnaryOp::D ? "d" : op_ == UnaryOp::Delta ? "delta" : "star";
    return std::string(name) + "(" + parent_->describe() + ")";
  }

 protected:
  Jet compute_jet(const Point& x, int order) const override {
    switch (op_) {
      case UnaryOp::D: return jet_d(parent_->jet(x, order + 1));
      case UnaryOp::Delta: return jet_delta(parent_->jet(x, order + 1));
      case UnaryOp::Hodge: return jet_hodge(parent_->jet(x, order));
    }
    throw ArgumentError("unknown operator");
  }
  // The parent's jet() performs the domain check with its own error type.
  void require_domain(const Point&) const override {}

 private:
  FieldPtr parent_;
  UnaryOp op_;
};

class CombinationField final : public FormField {
 public:
  explicit CombinationField(std::vector<std::pair<double, FieldPtr>> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw ArgumentError("linear combination needs at least one term");
    for (const auto& [c, f] : terms_) {
      if (f->dim() != terms_.front().second->dim()) throw DimensionMismatch("combined fields differ in dimension");
      if (f->degree() != terms_.front().second->degree()) throw DegreeMismatch("combined fields differ in degree");
    }
  }
  int dim() const override { return terms_.front().second->dim(); }
  int degree() const override { return terms_.front().second->degree(); }
  int max_order() const override {
    int m = kMaxJetOrder;
    for (const auto& [c, f] : terms_) m = std::min(m, f->max_order());
    return m;
  }
  bool in_domain(const Point& x) const override {
    return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.second->in_domain(x); });
  }
  std::string describe() const override {
    std::string s = "combination(";
    for (std::size_t k = 0; k < terms_.size(); ++k) s += (k ? ", " : "") + terms_[k].second->describe();
    return s + ")";
  }

 protected:
  Jet compute_jet(const Point& x, int order) const override {
    Jet out(dim(), degree(), order);
    for (const auto& [c, f] : terms_) {
      if (c == 0.0) continue;
      Jet j = f->jet(x, order);
      j *= c;
      out += j;
    }
    return out;
  }
  void require_domain(const Point&) const override {}

 private:
  std::vector<std::pair<double, FieldPtr>> terms_;
};

const PolynomialForm* as_polynomial(const FieldPtr& f) { return dynamic_cast<const PolynomialForm*>(f.get()); }

}  // namespace

FieldPtr exterior_derivative(const FieldPtr& f) {
  if (const auto* p = as_polynomial(f); p && p->degree() < p->dim())
    return std::make_shared<const PolynomialForm>(p->exterior_derivative());
  return std::make_shared<const DerivedField>(f, UnaryOp::D);
}

FieldPtr codifferential(const FieldPtr& f) {
  if (const auto* p = as_polynomial(f)) return std::make_shared<const PolynomialForm>(p->codifferential());
  return std::make_shared<const DerivedField>(f, UnaryOp::Delta);
}

FieldPtr hodge_star(const FieldPtr& f) {
  if (const auto* p = as_polynomial(f)) return std::make_shared<const PolynomialForm>(p->hodge_star());
  return std::make_shared<const DerivedField>(f, UnaryOp::Hodge);
}

FieldPtr scaled(const FieldPtr& f, double s) {
  if (const auto* p = as_polynomial(f)) {
    auto q = *p;
    q *= s;
    return std::make_shared<const PolynomialForm>(std::move(q));
  }
  return std::make_shared<const CombinationField>(std::vector<std::pair<double, FieldPtr>>{{s, f}});
}

FieldPtr linear_combination(const std::vector<std::pair<double, FieldPtr>>& terms) {
  if (!terms.empty() && std::all_of(terms.begin(), terms.end(), [](const auto& t) { return as_polynomial(t.second); })) {
    auto acc = PolynomialForm::zero(terms.front().second->dim(), terms.front().second->degree());
    for (const auto& [c, f] : terms) {
      auto q = *as_polynomial(f);
      q *= c;
      acc += q;
    }
    return std::make_shared<const PolynomialForm>(std::move(acc));
  }
  return std::make_shared<const CombinationField>(terms);
}

FieldPtr sum(const FieldPtr& a, const FieldPtr& b) { return linear_combination({{1.0, a}, {1.0, b}}); }

// ---------------------------------------------------------------------------
// Predicates

HarmonicCheck is_harmonic(const FormField& f, std::span<const Point> samples, double tol) {
  if (samples.empty()) throw ArgumentError("harmonicity check needs at least one sample point");
  HarmonicCheck out;
  for (const auto& x : samples) {
    const Jet j = f.jet(x, 1);
    double res = norm(jet_d(j).value());
    if (f.degree() > 0) res = std::max(res, norm(jet_delta(j).value()));
    out.max_residual = std::max(out.max_residual, res);
  }
  out.harmonic = out.max_residual <= tol;
  return out;
}

HolomorphicPair::HolomorphicPair(int r_, FieldPtr lo_, FieldPtr hi_) : r(r_), lo(std::move(lo_)), hi(std::move(hi_)) {
  if (!lo || !hi) throw ArgumentError("holomorphic pair components must be non-null");
  if (lo->dim() != hi->dim()) throw DimensionMismatch("pair components differ in dimension");
  const int n = lo->dim();
  if (r < 1 || r > n - 1) throw DegreeMismatch("pair central degree must satisfy 1 <= r <= n-1");
  if (lo->degree() != r - 1 || hi->degree() != r + 1) throw DegreeMismatch("pair component degrees must be r-1 and r+1");
}

HolomorphicPair HolomorphicPair::zero(int n, int r) {
  return HolomorphicPair(r, make_field<PolynomialForm>(PolynomialForm::zero(n, r - 1)),
                         make_field<PolynomialForm>(PolynomialForm::zero(n, r + 1)));
}

HolomorphicPair pair_sum(const HolomorphicPair& a, const HolomorphicPair& b) {
  if (a.r != b.r) throw DegreeMismatch("pairs of different central degree");
  return HolomorphicPair(a.r, sum(a.lo, b.lo), sum(a.hi, b.hi));
}

HolomorphicPair pair_scaled(const HolomorphicPair& a, double s) {
  return HolomorphicPair(a.r, scaled(a.lo, s), scaled(a.hi, s));
}

PairCheck is_holomorphic_pair(const HolomorphicPair& w, std::span<const Point> samples, double tol) {
  if (samples.empty()) throw ArgumentError("pair check needs at least one sample point");
  PairCheck out;
  for (const auto& x : samples) {
    const Jet lo = w.lo->jet(x, 1);
    const Jet hi = w.hi->jet(x, 1);
    const Covector dlo = jet_d(lo).value();
    const Covector delta_hi = jet_delta(hi).value();
    out.closure_residual = std::max(out.closure_residual, norm(dlo + delta_hi));
    out.d_hi_residual = std::max(out.d_hi_residual, norm(jet_d(hi).value()));
    if (w.r - 1 > 0) out.delta_lo_residual = std::max(out.delta_lo_residual, norm(jet_delta(lo).value()));
  }
  out.holomorphic = std::max({out.closure_residual, out.d_hi_residual, out.delta_lo_residual}) <= tol;
  return out;
}

}  // namespace hdual
