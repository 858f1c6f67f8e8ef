#include "hdual/geometry.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

namespace hdual {

QuadratureSurface::QuadratureSurface(int n, std::vector<Point> nodes, std::vector<double> weights,
                                     std::vector<Point> normals, SurfaceDescriptor descriptor)
    : n_(n), nodes_(std::move(nodes)), weights_(std::move(weights)), normals_(std::move(normals)),
      desc_(std::move(descriptor)) {
  if (nodes_.size() != weights_.size() || nodes_.size() != normals_.size())
    throw ArgumentError("surface nodes, weights and normals differ in length");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].dim() != n || normals_[i].dim() != n) throw DimensionMismatch("surface node dimension");
    if (!(weights_[i] > 0.0)) throw ArgumentError("surface weights must be positive");
  }
}

double QuadratureSurface::scale() const noexcept {
  return *std::min_element(desc_.semi_axes.begin(), desc_.semi_axes.end());
}

double QuadratureSurface::clearance(const Point& x) const {
  if (x.dim() != n_) throw DimensionMismatch("point and surface differ in dimension");
  if (desc_.shape == "sphere") return std::abs(distance(x, desc_.center) - desc_.semi_axes.front());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& y : nodes_) best = std::min(best, distance(x, y));
  return best;
}

bool QuadratureSurface::contains(const Point& x) const {
  if (x.dim() != n_) throw DimensionMismatch("point and surface differ in dimension");
  double q = 0.0;
  for (int i = 0; i < n_; ++i) {
    const double t = (x[i] - desc_.center[i]) / desc_.semi_axes[static_cast<std::size_t>(i)];
    q += t * t;
  }
  return q < 1.0;
}

void QuadratureSurface::check_clearance(const Point& x) const {
  const double dist = clearance(x);
  const double need = exclusion_radius();
  if (dist < need) {
    std::ostringstream os;
    os << "evaluation point within the exclusion zone of the " << desc_.shape << " (distance " << dist
       << " < required " << need << ")";
    throw ProximityError(os.str(), dist, need);
  }
}

void gauss_legendre(int count, double a, double b, std::vector<double>& nodes, std::vector<double>& weights) {
  if (count < 1) throw ArgumentError("Gauss-Legendre rule needs at least one node");
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(count)), &gsl_integration_glfixed_table_free);
  if (!table) throw ArgumentError("could not build Gauss-Legendre table");
  nodes.resize(static_cast<std::size_t>(count));
  weights.resize(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < nodes.size(); ++i)
    gsl_integration_glfixed_point(a, b, i, &nodes[i], &weights[i], table.get());
}

namespace {

void unit_sphere_rule(int n, int order, std::vector<Point>& nodes, std::vector<double>& weights) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> gx, gw;
  const int m = 2 * order;
  const double h = two_pi / m;
  if (n == 3) {
    gauss_legendre(order, -1.0, 1.0, gx, gw);
    for (std::size_t a = 0; a < gx.size(); ++a) {
      const double z = gx[a];
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int k = 0; k < m; ++k) {
        const double phi = h * k;
        nodes.push_back(Point{s * std::cos(phi), s * std::sin(phi), z});
        weights.push_back(gw[a] * h);
      }
    }
  } else if (n == 4) {
    // x = (√t cos ξ1, √t sin ξ1, √(1-t) cos ξ2, √(1-t) sin ξ2), dS = ½ dt dξ1 dξ2.
    gauss_legendre(order, 0.0, 1.0, gx, gw);
    for (std::size_t a = 0; a < gx.size(); ++a) {
      const double c1 = std::sqrt(gx[a]);
      const double c2 = std::sqrt(1.0 - gx[a]);
      for (int k = 0; k < m; ++k) {
        const double p1 = h * k;
        for (int l = 0; l < m; ++l) {
          const double p2 = h * l;
          nodes.push_back(Point{c1 * std::cos(p1), c1 * std::sin(p1), c2 * std::cos(p2), c2 * std::sin(p2)});
          weights.push_back(0.5 * gw[a] * h * h);
        }
      }
    }
  } else {
    throw UnsupportedDimension("sphere quadrature supports n = 3 and n = 4 only");
  }
}

void check_order(int order) {
  if (order < 4) throw ArgumentError("quadrature order must be at least 4");
}

}  // namespace

QuadratureSurface sphere_surface(const Point& center, double radius, int order) {
  if (!(radius > 0.0)) throw ArgumentError("sphere radius must be positive");
  check_order(order);
  const int n = center.dim();
  std::vector<Point> unit;
  std::vector<double> w;
  unit_sphere_rule(n, order, unit, w);
  std::vector<Point> nodes;
  nodes.reserve(unit.size());
  const double jac = std::pow(radius, n - 1);
  for (std::size_t i = 0; i < unit.size(); ++i) {
    nodes.push_back(center + radius * unit[i]);
    w[i] *= jac;
  }
  SurfaceDescriptor desc{"sphere", center, std::vector<double>(static_cast<std::size_t>(n), radius), order};
  return QuadratureSurface(n, std::move(nodes), std::move(w), std::move(unit), std::move(desc));
}

QuadratureSurface ellipsoid_surface(const Point& center, const std::vector<double>& semi_axes, int order) {
  const int n = center.dim();
  if (static_cast<int>(semi_axes.size()) != n) throw DimensionMismatch("one semi-axis per coordinate required");
  for (double a : semi_axes)
    if (!(a > 0.0)) throw ArgumentError("semi-axes must be positive");
  check_order(order);
  std::vector<Point> unit;
  std::vector<double> w;
  unit_sphere_rule(n, order, unit, w);
  double det = 1.0;
  for (double a : semi_axes) det *= a;
  std::vector<Point> nodes, normals;
  nodes.reserve(unit.size());
  normals.reserve(unit.size());
  for (std::size_t i = 0; i < unit.size(); ++i) {
    Point y = center;
    Point m(n);
    for (int k = 0; k < n; ++k) {
      const double a = semi_axes[static_cast<std::size_t>(k)];
      y[k] += a * unit[i][k];
      m[k] = unit[i][k] / a;
    }
    const double len = m.norm();
    nodes.push_back(y);
    normals.push_back(m * (1.0 / len));
    w[i] *= det * len;
  }
  SurfaceDescriptor desc{"ellipsoid", center, semi_axes, order};
  return QuadratureSurface(n, std::move(nodes), std::move(w), std::move(normals), std::move(desc));
}

void CompensatedSum::add(double v) noexcept {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v))
    comp_ += (sum_ - t) + v;
  else
    comp_ += (v - t) + sum_;
  sum_ = t;
}

namespace {

template <class F>
auto at_node(std::size_t i, F&& f) {
  try {
    return f();
  } catch (const NodeEvaluationError&) {
    throw;
  } catch (const Error& e) {
    throw NodeEvaluationError("quadrature node " + std::to_string(i) + ": " + e.what(), i);
  }
}

}  // namespace

double integrate_scalar(const QuadratureSurface& s, const SurfaceScalar& f) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < s.size(); ++i)
    acc.add(s.weights()[i] * at_node(i, [&] { return f(s.nodes()[i], s.normals()[i]); }));
  return acc.value();
}

double integrate_scalar(const QuadratureSurface& s, const std::function<double(const Point&)>& f) {
  return integrate_scalar(s, SurfaceScalar([&](const Point& y, const Point&) { return f(y); }));
}

Covector integrate_covector(const QuadratureSurface& s, const SurfaceCovector& g) {
  std::vector<CompensatedSum> acc;
  int degree = -1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Covector v = at_node(i, [&] { return g(s.nodes()[i], s.normals()[i]); });
    if (degree < 0) {
      degree = v.degree();
      acc.resize(v.size());
    } else if (v.degree() != degree) {
      throw DegreeMismatch("integrand changes degree across nodes");
    }
    for (std::size_t k = 0; k < v.size(); ++k) acc[k].add(s.weights()[i] * v[k]);
  }
  if (degree < 0) throw ArgumentError("cannot integrate over an empty surface");
  Covector out(s.dim(), degree);
  for (std::size_t k = 0; k < acc.size(); ++k) out[k] = acc[k].value();
  return out;
}

Covector integrate_covector(const QuadratureSurface& s, const std::function<Covector(const Point&)>& g) {
  return integrate_covector(s, SurfaceCovector([&](const Point& y, const Point&) { return g(y); }));
}

double Cycle3::length() const {
  CompensatedSum acc;
  for (double w : weights) acc.add(w);
  return acc.value();
}

Cycle3 circle_cycle(const Point& center, double radius, const Point& axis, int order) {
  if (center.dim() != 3 || axis.dim() != 3) throw UnsupportedDimension("cycles are supported in R^3 only");
  if (!(radius > 0.0)) throw ArgumentError("circle radius must be positive");
  if (order < 3) throw ArgumentError("circle needs at least three nodes");
  const double len = axis.norm();
  if (len == 0.0) throw ArgumentError("circle axis must be non-zero");
  const Point a = axis * (1.0 / len);
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(a[i]) < std::abs(a[k])) k = i;
  Point e(3);
  e[k] = 1.0;
  Point u = e - a.dot(e) * a;
  u *= 1.0 / u.norm();
  const Point v{a[1] * u[2] - a[2] * u[1], a[2] * u[0] - a[0] * u[2], a[0] * u[1] - a[1] * u[0]};

  Cycle3 c;
  const double h = 2.0 * std::numbers::pi / order;
  for (int j = 0; j < order; ++j) {
    const double t = h * j;
    c.nodes.push_back(center + radius * (std::cos(t) * u + std::sin(t) * v));
    c.tangents.push_back(-std::sin(t) * u + std::cos(t) * v);
    c.weights.push_back(radius * h);
  }
  return c;
}

}  // namespace hdual
