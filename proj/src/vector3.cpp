#include "hdual/vector3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hdual {

Vec3 to_vec3(const Covector& c) {
  if (c.dim() != 3 || c.degree() != 1) throw DegreeMismatch("vector view needs a 1-covector in R^3");
  return {c[0], c[1], c[2]};
}

Covector from_vec3(const Vec3& v) { return one_form(v); }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

namespace {

double vec_norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 minus(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

}  // namespace

VectorField3::VectorField3(FieldPtr form) : form_(std::move(form)) {
  if (!form_) throw ArgumentError("a field is required");
  if (form_->dim() != 3) throw DimensionMismatch("vector fields live in R^3");
  if (form_->degree() != 1) throw DegreeMismatch("vector fields correspond to 1-forms");
}

Vec3 VectorField3::operator()(const Point& x) const { return to_vec3(eval(*form_, x)); }

double VectorField3::div(const Point& x) const { return -delta(*form_, x).scalar_value(); }

Vec3 VectorField3::curl(const Point& x) const { return to_vec3(hodge(d(*form_, x))); }

Vec3 VectorField3::laplacian(const Point& x) const { return to_vec3(hdual::laplacian(*form_, x)); }

VectorField3 form_to_vector(const FieldPtr& u) { return VectorField3(u); }

FieldPtr vector_to_form(const VectorField3& v) { return v.form(); }

Vec3 grad(const FormField& f, const Point& x) {
  if (f.degree() != 0) throw DegreeMismatch("gradient needs a scalar field");
  return to_vec3(d(f, x));
}

HolomorphicPair to_form_pair(const HolomorphicVectorPair& p) {
  return HolomorphicPair(1, p.f, hodge_star(p.v.form()));
}

HolomorphicVectorPair to_vector_pair(const HolomorphicPair& w) {
  if (w.dim() != 3 || w.r != 1) throw DegreeMismatch("vector pairs correspond to n = 3, r = 1");
  return {w.lo, VectorField3(hodge_star(w.hi))};
}

namespace {

double vector_pairing(const VectorField3& u, const FieldPtr& f, const VectorField3& v, const QuadratureSurface& s) {
  if (!f || f->dim() != 3 || f->degree() != 0) throw DegreeMismatch("f must be a scalar field in R^3");
  if (s.dim() != 3) throw DimensionMismatch("vector pairings need a surface in R^3");
  CompensatedSum a, b;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Point& y = s.nodes()[i];
    const Vec3 normal{s.normals()[i][0], s.normals()[i][1], s.normals()[i][2]};
    const Vec3 uy = u(y);
    a.add(s.weights()[i] * dot(v(y), cross(normal, uy)));
    b.add(s.weights()[i] * eval(*f, y).scalar_value() * dot(normal, uy));
  }
  const double four_pi = 4.0 * std::numbers::pi;
  return (-a.value() + b.value()) / four_pi;
}

}  // namespace

double pairing_vector_h(const VectorField3& u, const FieldPtr& f, const VectorField3& v, const QuadratureSurface& s) {
  return vector_pairing(u, f, v, s);
}

double pairing_vector_p(const FieldPtr& f, const VectorField3& v, const VectorField3& u, const QuadratureSurface& s) {
  return vector_pairing(u, f, v, s);
}

Helmholtz helmholtz_decompose(const VectorField3& u, const SurfacePtr& surface) {
  Decomposition dec = decompose_exterior(u.form(), surface);
  FieldPtr f = dec.u1;
  VectorField3 v(hodge_star(dec.u2));
  return {std::move(f), std::move(v), std::move(dec)};
}

HelmholtzResiduals helmholtz_residuals(const Helmholtz& h, const VectorField3& u, const std::vector<Point>& points) {
  HelmholtzResiduals out;
  for (const auto& x : points) {
    const Vec3 gf = grad(*h.f, x);
    const Vec3 cv = h.v.curl(x);
    const Vec3 rebuilt{gf[0] + cv[0], gf[1] + cv[1], gf[2] + cv[2]};
    out.sum = std::max(out.sum, vec_norm(minus(rebuilt, u(x))));
    out.div_v = std::max(out.div_v, std::abs(h.v.div(x)));
    out.lap_f = std::max(out.lap_f, std::abs(laplacian(*h.f, x).scalar_value()));
    out.lap_v = std::max(out.lap_v, vec_norm(h.v.laplacian(x)));
  }
  return out;
}

}  // namespace hdual
