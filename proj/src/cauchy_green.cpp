#include "hdual/cauchy_green.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hdual {

namespace {

constexpr std::size_t kPreconditionSamples = 64;

double side_scale(int n, Side side) { return (side == Side::Interior ? -1.0 : 1.0) / c_n(n); }

FieldPtr layer(const SurfacePtr& s, const SurfaceCovector& density) {
  return make_field<LayerPotentialForm>(s, density);
}

std::vector<Point> sample_nodes(const QuadratureSurface& s) {
  const std::size_t stride = std::max<std::size_t>(1, s.size() / kPreconditionSamples);
  std::vector<Point> out;
  for (std::size_t i = 0; i < s.size(); i += stride) out.push_back(s.nodes()[i]);
  return out;
}

double boundary_sup(const FormField& u, const QuadratureSurface& s) {
  double m = 0.0;
  for (const auto& y : s.nodes()) m = std::max(m, norm(eval(u, y)));
  return m;
}

void check_surface(const FormField& f, const SurfacePtr& s) {
  if (!s) throw ArgumentError("a quadrature surface is required");
  if (f.dim() != s->dim()) throw DimensionMismatch("field and surface differ in dimension");
  if (f.dim() < 3) throw UnsupportedDimension("boundary formulas need n >= 3");
}

void check_decay(const FormField& u, const QuadratureSurface& s, double sup, Precondition& pre) {
  Point far = s.descriptor().center;
  far[0] += 1e4 * s.scale();
  if (!u.in_domain(far)) return;
  const double v = norm(eval(u, far));
  if (v > 1e-2 * std::max(sup, 1e-300) && v > 0.0) {
    pre.ok = false;
    std::ostringstream os;
    os << "field does not appear to vanish at infinity (|u| = " << v << " at distance " << 1e4 * s.scale() << ")";
    pre.warnings.push_back(os.str());
  }
}

Precondition harmonic_precondition(const FormField& u, const QuadratureSurface& s, Side side, double tol) {
  Precondition pre;
  const auto samples = sample_nodes(s);
  const auto h = is_harmonic(u, samples, tol);
  const double sup = boundary_sup(u, s);
  pre.residual = h.max_residual;
  if (h.max_residual > tol * std::max(1.0, sup)) {
    pre.ok = false;
    std::ostringstream os;
    os << "input is not harmonic near the surface (residual " << h.max_residual << ")";
    pre.warnings.push_back(os.str());
  }
  if (side == Side::Exterior) check_decay(u, s, sup, pre);
  return pre;
}

Precondition pair_precondition(const HolomorphicPair& w, const QuadratureSurface& s, Side side, double tol) {
  Precondition pre;
  const auto samples = sample_nodes(s);
  const auto c = is_holomorphic_pair(w, samples, tol);
  const double sup = std::max(boundary_sup(*w.lo, s), boundary_sup(*w.hi, s));
  pre.residual = std::max({c.closure_residual, c.d_hi_residual, c.delta_lo_residual});
  if (pre.residual > tol * std::max(1.0, sup)) {
    pre.ok = false;
    std::ostringstream os;
    os << "input is not a holomorphic pair near the surface (residual " << pre.residual << ")";
    pre.warnings.push_back(os.str());
  }
  if (side == Side::Exterior) {
    check_decay(*w.lo, s, sup, pre);
    check_decay(*w.hi, s, sup, pre);
  }
  return pre;
}

void check_side(const QuadratureSurface& s, const Point& x, Side side) {
  if (x.dim() != s.dim()) throw DimensionMismatch("point and surface differ in dimension");
  const bool inside = s.contains(x);
  if (side == Side::Interior && !inside) throw DomainError("interior formula evaluated outside the surface");
  if (side == Side::Exterior && inside) throw DomainError("exterior formula evaluated inside the surface");
  s.check_clearance(x);
}

}  // namespace

ReproducedField cauchy_green_field(const FieldPtr& u, const SurfacePtr& surface, Side side, double tol) {
  if (!u) throw ArgumentError("a field is required");
  check_surface(*u, surface);
  const int n = u->dim();
  const int r = u->degree();
  const double s = side_scale(n, side);
  std::vector<std::pair<double, FieldPtr>> terms;
  if (r < n) terms.emplace_back(s, codifferential(layer(surface, nwedge_density(u))));
  if (r > 0) terms.emplace_back(s * gamma_sign(n, r), exterior_derivative(layer(surface, star_nwedge_star_density(u))));
  return {linear_combination(terms), harmonic_precondition(*u, *surface, side, tol)};
}

ReproducedPair cauchy_green_pair(const HolomorphicPair& w, const SurfacePtr& surface, Side side, double tol) {
  check_surface(*w.lo, surface);
  const int n = w.dim();
  const int r = w.r;
  const double s = side_scale(n, side);

  const FieldPtr lo_n = layer(surface, nwedge_density(w.lo));                 // degree r
  const FieldPtr hi_sns = layer(surface, star_nwedge_star_density(w.hi));     // degree r

  std::vector<std::pair<double, FieldPtr>> hi_terms;
  if (r + 1 < n) hi_terms.emplace_back(s, codifferential(layer(surface, nwedge_density(w.hi))));
  hi_terms.emplace_back(s * gamma_sign(n, r + 1), exterior_derivative(hi_sns));
  hi_terms.emplace_back(s, exterior_derivative(lo_n));

  std::vector<std::pair<double, FieldPtr>> lo_terms;
  lo_terms.emplace_back(s, codifferential(lo_n));
  if (r - 1 > 0)
    lo_terms.emplace_back(s * gamma_sign(n, r - 1),
                          exterior_derivative(layer(surface, star_nwedge_star_density(w.lo))));
  lo_terms.emplace_back(s * gamma_sign(n, r + 1), codifferential(hi_sns));

  return {linear_combination(hi_terms), linear_combination(lo_terms), pair_precondition(w, *surface, side, tol)};
}

namespace {

Reproduction reproduce(const FieldPtr& u, const SurfacePtr& surface, const Point& x, Side side) {
  if (!u) throw ArgumentError("a field is required");
  check_surface(*u, surface);
  check_side(*surface, x, side);
  auto rf = cauchy_green_field(u, surface, side);
  return {eval(*rf.field, x), std::move(rf.precondition)};
}

PairReproduction reproduce_pair(const HolomorphicPair& w, const SurfacePtr& surface, const Point& x, Side side) {
  check_surface(*w.lo, surface);
  check_side(*surface, x, side);
  auto rp = cauchy_green_pair(w, surface, side);
  return {eval(*rp.hi, x), eval(*rp.lo, x), std::move(rp.precondition)};
}

}  // namespace

Reproduction reproduce_interior(const FieldPtr& u, const SurfacePtr& surface, const Point& x) {
  return reproduce(u, surface, x, Side::Interior);
}

Reproduction reproduce_exterior(const FieldPtr& u, const SurfacePtr& surface, const Point& x) {
  return reproduce(u, surface, x, Side::Exterior);
}

PairReproduction reproduce_pair_interior(const HolomorphicPair& w, const SurfacePtr& surface, const Point& x) {
  return reproduce_pair(w, surface, x, Side::Interior);
}

PairReproduction reproduce_pair_exterior(const HolomorphicPair& w, const SurfacePtr& surface, const Point& x) {
  return reproduce_pair(w, surface, x, Side::Exterior);
}

Decomposition decompose_exterior(const FieldPtr& u, const SurfacePtr& surface) {
  if (!u) throw ArgumentError("a field is required");
  check_surface(*u, surface);
  const int n = u->dim();
  const int r = u->degree();
  if (r < 1 || r > n - 1) throw DegreeMismatch("decomposition needs 1 <= r <= n-1");
  const double cn = c_n(n);
  Decomposition dec;
  dec.u1 = make_field<LayerPotentialForm>(surface, star_nwedge_star_density(u), gamma_sign(n, r) / cn);
  dec.u2 = make_field<LayerPotentialForm>(surface, nwedge_density(u), 1.0 / cn);
  dec.boundary_sup = boundary_sup(*u, *surface);
  dec.precondition = harmonic_precondition(*u, *surface, Side::Exterior, 1e-9);
  return dec;
}

DecompositionResiduals decomposition_residuals(const Decomposition& dec, const FormField& u,
                                               const std::vector<Point>& points) {
  DecompositionResiduals out;
  for (const auto& x : points) {
    const Jet j1 = dec.u1->jet(x, 1);
    const Jet j2 = dec.u2->jet(x, 1);
    const Covector rebuilt = jet_d(j1).value() + jet_delta(j2).value();
    out.sum = std::max(out.sum, norm(rebuilt - eval(u, x)));
    if (j1.degree() > 0) out.delta_u1 = std::max(out.delta_u1, norm(jet_delta(j1).value()));
    if (j2.degree() < j2.dim()) out.d_u2 = std::max(out.d_u2, norm(jet_d(j2).value()));
  }
  return out;
}

}  // namespace hdual
