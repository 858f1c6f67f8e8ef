#pragma once

// Newtonian kernel, surface layer potentials and point-source pairs.

#include <memory>
#include <vector>

#include "hdual/fields.hpp"
#include "hdual/geometry.hpp"

namespace hdual {

// (n-1)-dimensional measure of the unit sphere S^{n-1}.
double sphere_measure(int n);
// c_n = (n - 2) |S^{n-1}|; c_3 = 4π. Throws UnsupportedDimension for n < 3.
double c_n(int n);
// γ_r = (-1)^{nr+n+1}.
int gamma_sign(int n, int r);

double kernel(const Point& x, const Point& y);
Covector kernel_grad_x(const Point& x, const Point& y);
// Row-major n×n matrix ∂_i∂_j k(x, y).
std::vector<double> kernel_hessian_x(const Point& x, const Point& y);

// y ↦ N(y) ∧ u(y).
SurfaceCovector nwedge_density(FieldPtr u);
// y ↦ ∗(N(y) ∧ ∗u(y)).
SurfaceCovector star_nwedge_star_density(FieldPtr u);

using SurfacePtr = std::shared_ptr<const QuadratureSurface>;

// x ↦ scale · Σ w_i k(x, y_i) ρ(y_i). The density is sampled at the nodes once.
class LayerPotentialForm final : public FormField {
 public:
  LayerPotentialForm(SurfacePtr surface, const SurfaceCovector& density, double scale = 1.0);

  int dim() const override { return surface_->dim(); }
  int degree() const override { return degree_; }
  int max_order() const override;
  bool in_domain(const Point& x) const override;
  std::string describe() const override;

  const QuadratureSurface& surface() const noexcept { return *surface_; }
  double density_sup() const noexcept { return density_sup_; }

 protected:
  Jet compute_jet(const Point& x, int order) const override;
  void require_domain(const Point& x) const override;

 private:
  SurfacePtr surface_;
  int degree_ = 0;
  double scale_;
  double density_sup_ = 0.0;
  std::vector<double> values_;  // node-major density coefficients
};

// One-shot evaluations; each checks the exclusion zone.
Covector layer_potential(const QuadratureSurface& s, const SurfaceCovector& density, const Point& x);
Covector d_layer(const QuadratureSurface& s, const SurfaceCovector& density, const Point& x);
// δ of the potential via (-1)^{nr+n+1} ∗d∗ applied to the kernel terms.
Covector delta_layer(const QuadratureSurface& s, const SurfaceCovector& density, const Point& x);

// The pair (δU, dU) for U(x) = k(x, x0) ξ, ξ of degree r with 1 <= r <= n-1.
HolomorphicPair point_pair(const Point& x0, const Covector& xi);

struct Reciprocity {
  double t1_on_u2 = 0.0;  // ∗(ξ1 ∧ U^{μ2}(x1))
  double t2_on_u1 = 0.0;  // ∗(ξ2 ∧ U^{μ1}(x2))
  double sign = 1.0;      // (-1)^{nr+r}
  double residual() const { return std::abs(t1_on_u2 - sign * t2_on_u1); }
};

// Point measures μ1 = (x1, ξ1) of degree r and μ2 = (x2, ξ2) of degree n-r.
Reciprocity reciprocity_check(const Point& x1, const Covector& xi1, const Point& x2, const Covector& xi2);

}  // namespace hdual
