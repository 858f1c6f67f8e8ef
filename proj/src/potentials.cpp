#include "hdual/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "hdual/kernel.hpp"

namespace hdual {

double sphere_measure(int n) {
  if (n < 1) throw UnsupportedDimension("sphere measure needs n >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double c_n(int n) {
  if (n < 3) throw UnsupportedDimension("the Newtonian kernel needs n >= 3");
  return (n - 2) * sphere_measure(n);
}

int gamma_sign(int n, int r) { return parity_sign(static_cast<long>(n) * r + n + 1) > 0 ? 1 : -1; }

namespace {

void check_pair(const Point& x, const Point& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("kernel arguments differ in dimension");
  if (x.dim() < 3) throw UnsupportedDimension("the Newtonian kernel needs n >= 3");
}

Covector normal_form(const Point& normal) { return one_form(normal.coords()); }

}  // namespace

double kernel(const Point& x, const Point& y) {
  check_pair(x, y);
  double k[1];
  kernel_derivatives(x - y, 0, k);
  return k[0];
}

Covector kernel_grad_x(const Point& x, const Point& y) {
  check_pair(x, y);
  const Point diff = x - y;
  const double rho = diff.norm();
  if (rho == 0.0) throw SingularityError("kernel gradient at coincident points");
  const int n = x.dim();
  const double f = (2.0 - n) * std::pow(rho, -n);
  Covector g(n, 1);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = f * diff[i];
  return g;
}

std::vector<double> kernel_hessian_x(const Point& x, const Point& y) {
  check_pair(x, y);
  const Point diff = x - y;
  const double rho = diff.norm();
  if (rho == 0.0) throw SingularityError("kernel hessian at coincident points");
  const int n = x.dim();
  const double a = std::pow(rho, -n);
  const double b = n * std::pow(rho, -n - 2);
  std::vector<double> h(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      h[static_cast<std::size_t>(i * n + j)] = (2.0 - n) * ((i == j ? a : 0.0) - b * diff[i] * diff[j]);
  return h;
}

SurfaceCovector nwedge_density(FieldPtr u) {
  return [u = std::move(u)](const Point& y, const Point& normal) {
    return wedge(normal_form(normal), eval(*u, y));
  };
}

SurfaceCovector star_nwedge_star_density(FieldPtr u) {
  return [u = std::move(u)](const Point& y, const Point& normal) {
    return hodge(wedge(normal_form(normal), hodge(eval(*u, y))));
  };
}

// ---------------------------------------------------------------------------

namespace {

struct Sampled {
  int degree = 0;
  double sup = 0.0;
  std::vector<double> values;
};

Sampled sample_density(const QuadratureSurface& s, const SurfaceCovector& density) {
  Sampled out;
  if (s.size() == 0) throw ArgumentError("layer potential over an empty surface");
  for (std::size_t i = 0; i < s.size(); ++i) {
    Covector v;
    try {
      v = density(s.nodes()[i], s.normals()[i]);
    } catch (const Error& e) {
      throw NodeEvaluationError("density at quadrature node " + std::to_string(i) + ": " + e.what(), i);
    }
    if (v.dim() != s.dim()) throw DimensionMismatch("density dimension differs from surface");
    if (i == 0) {
      out.degree = v.degree();
      out.values.reserve(s.size() * v.size());
    } else if (v.degree() != out.degree) {
      throw DegreeMismatch("density changes degree across nodes");
    }
    out.values.insert(out.values.end(), v.coeffs().begin(), v.coeffs().end());
    out.sup = std::max(out.sup, norm(v));
  }
  return out;
}

Jet layer_jet(const QuadratureSurface& s, int degree, const std::vector<double>& values, double scale,
              const Point& x, int order) {
  const int n = s.dim();
  Jet j(n, degree, order);
  const std::size_t width = j.width();
  if (width == 0) return j;
  const std::size_t blocks = Jet::block_count(n, order);
  std::vector<double> k(blocks);
  auto raw = j.raw();
  for (std::size_t i = 0; i < s.size(); ++i) {
    kernel_derivatives(x - s.nodes()[i], order, k);
    const double w = s.weights()[i];
    const double* rho = values.data() + i * width;
    for (std::size_t b = 0; b < blocks; ++b) {
      const double kb = w * k[b];
      double* dst = raw.data() + b * width;
      for (std::size_t c = 0; c < width; ++c) dst[c] += kb * rho[c];
    }
  }
  j *= scale;
  return j;
}

}  // namespace

LayerPotentialForm::LayerPotentialForm(SurfacePtr surface, const SurfaceCovector& density, double scale)
    : surface_(std::move(surface)), scale_(scale) {
  if (!surface_) throw ArgumentError("layer potential needs a surface");
  if (surface_->dim() < 3) throw UnsupportedDimension("layer potentials need n >= 3");
  Sampled smp = sample_density(*surface_, density);
  degree_ = smp.degree;
  density_sup_ = smp.sup;
  values_ = std::move(smp.values);
}

int LayerPotentialForm::max_order() const { return kMaxKernelOrder; }

bool LayerPotentialForm::in_domain(const Point& x) const {
  return x.dim() == dim() && surface_->clearance(x) >= surface_->exclusion_radius();
}

void LayerPotentialForm::require_domain(const Point& x) const { surface_->check_clearance(x); }

std::string LayerPotentialForm::describe() const {
  std::ostringstream os;
  os << "layer potential (" << degree_ << "-form density on a " << surface_->descriptor().shape << ")";
  return os.str();
}

Jet LayerPotentialForm::compute_jet(const Point& x, int order) const {
  return layer_jet(*surface_, degree_, values_, scale_, x, order);
}

namespace {

Jet one_shot(const QuadratureSurface& s, const SurfaceCovector& density, const Point& x, int order) {
  if (x.dim() != s.dim()) throw DimensionMismatch("point and surface differ in dimension");
  s.check_clearance(x);
  const Sampled smp = sample_density(s, density);
  return layer_jet(s, smp.degree, smp.values, 1.0, x, order);
}

}  // namespace

Covector layer_potential(const QuadratureSurface& s, const SurfaceCovector& density, const Point& x) {
  return one_shot(s, density, x, 0).value();
}

Covector d_layer(const QuadratureSurface& s, const SurfaceCovector& density, const Point& x) {
  return jet_d(one_shot(s, density, x, 1)).value();
}

Covector delta_layer(const QuadratureSurface& s, const SurfaceCovector& density, const Point& x) {
  return jet_delta_star(one_shot(s, density, x, 1)).value();
}

// ---------------------------------------------------------------------------

HolomorphicPair point_pair(const Point& x0, const Covector& xi) {
  const int n = x0.dim();
  if (xi.dim() != n) throw DimensionMismatch("charge and centre differ in dimension");
  const int r = xi.degree();
  if (r < 1 || r > n - 1) throw DegreeMismatch("point pair needs 1 <= r <= n-1");
  auto lo = make_field<KernelForm>(n, r - 1, std::vector<KernelTerm>{{x0, xi, KernelOp::Delta}});
  auto hi = make_field<KernelForm>(n, r + 1, std::vector<KernelTerm>{{x0, xi, KernelOp::D}});
  return HolomorphicPair(r, std::move(lo), std::move(hi));
}

Reciprocity reciprocity_check(const Point& x1, const Covector& xi1, const Point& x2, const Covector& xi2) {
  const int n = x1.dim();
  if (x2.dim() != n || xi1.dim() != n || xi2.dim() != n) throw DimensionMismatch("point measures differ in dimension");
  const int r = xi1.degree();
  if (xi2.degree() != n - r) throw DegreeMismatch("second measure must have complementary degree n - r");
  if (x1 == x2) throw SingularityError("reciprocity needs distinct support points");
  const double k = kernel(x1, x2);
  Reciprocity out;
  out.t1_on_u2 = hodge(wedge(xi1, k * xi2)).scalar_value();
  out.t2_on_u1 = hodge(wedge(xi2, k * xi1)).scalar_value();
  out.sign = parity_sign(static_cast<long>(n) * r + r);
  return out;
}

}  // namespace hdual
