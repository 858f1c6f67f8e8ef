#pragma once

// Closed hypersurfaces as quadrature rules with outward unit normals, and
// closed curves in R^3 for period integrals.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hdual/exterior.hpp"
#include "hdual/point.hpp"

namespace hdual {

// Consumers of layer potentials keep dist(x, surface) >= kExclusionFactor * scale.
inline constexpr double kExclusionFactor = 0.05;

struct SurfaceDescriptor {
  std::string shape;  // "sphere" or "ellipsoid"
  Point center;
  std::vector<double> semi_axes;  // all equal for a sphere
  int order = 0;
};

class QuadratureSurface {
 public:
  QuadratureSurface(int n, std::vector<Point> nodes, std::vector<double> weights, std::vector<Point> normals,
                    SurfaceDescriptor descriptor);

  int dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<Point>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<Point>& normals() const noexcept { return normals_; }
  const SurfaceDescriptor& descriptor() const noexcept { return desc_; }

  // Smallest semi-axis; the exclusion zone is kExclusionFactor times this.
  double scale() const noexcept;
  double exclusion_radius() const noexcept { return kExclusionFactor * scale(); }
  // Distance from x to the surface (exact for spheres, node-based otherwise).
  double clearance(const Point& x) const;
  bool contains(const Point& x) const;
  // Throws ProximityError when x is inside the exclusion zone.
  void check_clearance(const Point& x) const;

 private:
  int n_;
  std::vector<Point> nodes_;
  std::vector<double> weights_;
  std::vector<Point> normals_;
  SurfaceDescriptor desc_;
};

// Product rule on S^{n-1}, n in {3, 4}: Gauss–Legendre in cos(polar angle)
// (n = 3) or in sin^2 of the Hopf angle (n = 4), trapezoid in the azimuths.
QuadratureSurface sphere_surface(const Point& center, double radius, int order);

// Axis-aligned ellipsoid, pushed forward from the unit-sphere rule.
QuadratureSurface ellipsoid_surface(const Point& center, const std::vector<double>& semi_axes, int order);

// Gauss–Legendre nodes and weights on [a, b].
void gauss_legendre(int count, double a, double b, std::vector<double>& nodes, std::vector<double>& weights);

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

using SurfaceScalar = std::function<double(const Point& y, const Point& normal)>;
using SurfaceCovector = std::function<Covector(const Point& y, const Point& normal)>;

// Σ w_i f(node_i) in node order with compensated summation. Library errors
// raised by f are rethrown as NodeEvaluationError carrying the node index.
double integrate_scalar(const QuadratureSurface& s, const std::function<double(const Point&)>& f);
double integrate_scalar(const QuadratureSurface& s, const SurfaceScalar& f);
Covector integrate_covector(const QuadratureSurface& s, const std::function<Covector(const Point&)>& g);
Covector integrate_covector(const QuadratureSurface& s, const SurfaceCovector& g);

// Closed curve in R^3 with unit tangents and arclength weights.
struct Cycle3 {
  std::vector<Point> nodes;
  std::vector<Point> tangents;
  std::vector<double> weights;
  double length() const;
};

Cycle3 circle_cycle(const Point& center, double radius, const Point& axis, int order);

}  // namespace hdual
