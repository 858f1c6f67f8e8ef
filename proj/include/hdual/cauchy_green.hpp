#pragma once

// Boundary-integral reproduction of harmonic forms and holomorphic pairs, and
// the exterior decomposition u = du1 + δu2.

#include <string>
#include <vector>

#include "hdual/potentials.hpp"

namespace hdual {

// Interior: evaluation points inside the surface, the form regular on the
// closed inside. Exterior: points outside, the form regular outside and
// vanishing at infinity. The formulas differ only in the overall sign.
enum class Side { Interior, Exterior };

struct Precondition {
  bool ok = true;
  double residual = 0.0;  // harmonicity or pair residual at sampled nodes
  std::vector<std::string> warnings;
};

// The reproduced field as a FormField, evaluable at any admissible point:
//   ∓(1/c_n) [δU^{N∧u} + γ_r dU^{∗(N∧∗u)}]   (- interior, + exterior)
struct ReproducedField {
  FieldPtr field;
  Precondition precondition;
};
ReproducedField cauchy_green_field(const FieldPtr& u, const SurfacePtr& surface, Side side, double tol = 1e-9);

struct ReproducedPair {
  FieldPtr hi;
  FieldPtr lo;
  Precondition precondition;
};
ReproducedPair cauchy_green_pair(const HolomorphicPair& w, const SurfacePtr& surface, Side side,
                                 double tol = 1e-9);

struct Reproduction {
  Covector value;
  Precondition precondition;
};
struct PairReproduction {
  Covector hi;
  Covector lo;
  Precondition precondition;
};

// Single-point forms. Throw DomainError when x lies on the wrong side and
// ProximityError inside the exclusion zone.
Reproduction reproduce_interior(const FieldPtr& u, const SurfacePtr& surface, const Point& x);
Reproduction reproduce_exterior(const FieldPtr& u, const SurfacePtr& surface, const Point& x);
PairReproduction reproduce_pair_interior(const HolomorphicPair& w, const SurfacePtr& surface, const Point& x);
PairReproduction reproduce_pair_exterior(const HolomorphicPair& w, const SurfacePtr& surface, const Point& x);

// u1 = (γ_r/c_n) U^{∗(N∧∗u)}, u2 = (1/c_n) U^{N∧u}; du1 + δu2 = u outside.
struct Decomposition {
  FieldPtr u1;  // degree r-1
  FieldPtr u2;  // degree r+1
  double boundary_sup = 0.0;  // max |u| over the surface nodes
  Precondition precondition;
};
Decomposition decompose_exterior(const FieldPtr& u, const SurfacePtr& surface);

struct DecompositionResiduals {
  double sum = 0.0;       // max |du1 + δu2 - u|
  double delta_u1 = 0.0;  // max |δu1|
  double d_u2 = 0.0;      // max |du2|
};
DecompositionResiduals decomposition_residuals(const Decomposition& dec, const FormField& u,
                                               const std::vector<Point>& points);

}  // namespace hdual
