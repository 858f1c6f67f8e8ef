#pragma once

// Vector-calculus view of the n = 3, r = 1 case: 1-forms as vector fields,
// pairs (w0, w2) as (f, v) with ∗w2 = v.

#include <array>

#include "hdual/cauchy_green.hpp"
#include "hdual/duality.hpp"

namespace hdual {

using Vec3 = std::array<double, 3>;

Vec3 to_vec3(const Covector& one_form_value);
Covector from_vec3(const Vec3& v);
Vec3 cross(const Vec3& a, const Vec3& b);
double dot(const Vec3& a, const Vec3& b);

// A vector field on an open subset of R^3, backed by the corresponding 1-form.
class VectorField3 {
 public:
  explicit VectorField3(FieldPtr form);

  const FieldPtr& form() const noexcept { return form_; }
  bool in_domain(const Point& x) const { return form_->in_domain(x); }

  Vec3 operator()(const Point& x) const;
  // div v = -δv♭.
  double div(const Point& x) const;
  // curl v = (∗dv♭)♯.
  Vec3 curl(const Point& x) const;
  Vec3 laplacian(const Point& x) const;

 private:
  FieldPtr form_;
};

VectorField3 form_to_vector(const FieldPtr& u);
FieldPtr vector_to_form(const VectorField3& v);

Vec3 grad(const FormField& f, const Point& x);

// (f, v) with grad f + curl v = 0 and div v = 0.
struct HolomorphicVectorPair {
  FieldPtr f;
  VectorField3 v;
};

HolomorphicPair to_form_pair(const HolomorphicVectorPair& p);
HolomorphicVectorPair to_vector_pair(const HolomorphicPair& w);

// -(1/4π) ∫ ⟨v, N × u⟩ dS + (1/4π) ∫ ⟨N, f u⟩ dS, with the cross product taken directly.
double pairing_vector_h(const VectorField3& u, const FieldPtr& f, const VectorField3& v, const QuadratureSurface& s);
// Same surface integrals for u harmonic outside and (f, v) regular near the compact.
double pairing_vector_p(const FieldPtr& f, const VectorField3& v, const VectorField3& u, const QuadratureSurface& s);

// u = grad f + curl v outside the surface, with div v = 0, Δf = 0, Δv = 0.
struct Helmholtz {
  FieldPtr f;
  VectorField3 v;
  Decomposition decomposition;
};
Helmholtz helmholtz_decompose(const VectorField3& u, const SurfacePtr& surface);

struct HelmholtzResiduals {
  double sum = 0.0;        // max |grad f + curl v - u|
  double div_v = 0.0;      // max |div v|
  double lap_f = 0.0;      // max |Δf|
  double lap_v = 0.0;      // max |Δv|
};
HelmholtzResiduals helmholtz_residuals(const Helmholtz& h, const VectorField3& u, const std::vector<Point>& points);

}  // namespace hdual
