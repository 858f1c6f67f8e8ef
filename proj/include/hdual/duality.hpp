#pragma once

// Duality pairings between harmonic forms and holomorphic pairs, the
// vanishing lemma, and period identities for n = 3.

#include <string>
#include <vector>

#include "hdual/potentials.hpp"

namespace hdual {

// Coefficients of the two surface integrals
//   A = ∫ ∗(w_hi ∧ ∗(N ∧ u)) dS,   B = ∫ ∗(w_lo ∧ (N ∧ ∗u)) dS
// in value = (hi·A + lo·B) / c_n.
struct PairingSigns {
  double hi;
  double lo;
};
// -1 and (-1)^{r+1}.
PairingSigns theorem1_signs(int n, int r);
// (-1)^{n+r+1} and (-1)^{n+1}; the second pairing equals (-1)^{n+r+1}⟨u(x0), ξ⟩
// on point pairs with these.
PairingSigns theorem2_signs(int n, int r);
// The first coefficient written as (-1)^{nr+r+1}. Agrees with theorem2_signs
// unless n is odd and r even.
PairingSigns theorem2_signs_as_printed(int n, int r);

// Pointwise integrands of A and B.
double pairing_density_hi(const Covector& w_hi, const Covector& normal, const Covector& u);
double pairing_density_lo(const Covector& w_lo, const Covector& normal, const Covector& u);

struct PairingReport {
  double value = 0.0;
  double term1 = 0.0;  // hi·A / c_n
  double term2 = 0.0;  // lo·B / c_n
  SurfaceDescriptor surface;
  int order = 0;
  std::size_t nodes = 0;
  double u_residual = 0.0;     // harmonicity residual of u at sampled nodes
  double pair_residual = 0.0;  // pair-equation residual of w at sampled nodes
};

PairingReport pairing(const FieldPtr& u, const HolomorphicPair& w, const QuadratureSurface& s, PairingSigns signs);
PairingReport pairing_theorem1(const FieldPtr& u, const HolomorphicPair& w, const QuadratureSurface& s);
PairingReport pairing_theorem2(const HolomorphicPair& w, const FieldPtr& u, const QuadratureSurface& s);

// |pairing_theorem1|; small when u and w are both regular inside the surface.
double lemma1_residual(const FieldPtr& u, const HolomorphicPair& w, const QuadratureSurface& s);

// C with |pairing_theorem1(u, w)| <= C max_{∂K}|u|: (1/c_n) ∫ (|w_hi| + |w_lo|) dS.
double continuity_constant(const HolomorphicPair& w, const QuadratureSurface& s);

// Periods for n = 3, r = 1.
// ∫_λ ∗w_hi = Σ w_i ⟨∗w_hi(p_i), τ_i⟩.
double period_star_whi(const Cycle3& cycle, const HolomorphicPair& w);
// δU^λ with U^λ(x) = ∫_λ k(x, y) ∗τ(y) ds(y).
FieldPtr cycle_codifferential_potential(const Cycle3& cycle);
// pairing_theorem1(δU^λ, w, s); equals the period when λ lies outside the surface.
double period_star_whi_rhs(const Cycle3& cycle, const HolomorphicPair& w, const QuadratureSurface& s);

// 0-chain Σ c_j [p_j]: Σ c_j w_lo(p_j).
double period_wlo(const std::vector<Point>& points, const std::vector<double>& charges, const HolomorphicPair& w);
// d∗U with U(x) = Σ c_j k(x, p_j) vol.
FieldPtr chain_dstar_potential(const std::vector<Point>& points, const std::vector<double>& charges);
double period_wlo_rhs(const std::vector<Point>& points, const std::vector<double>& charges, const HolomorphicPair& w,
                      const QuadratureSurface& s);

}  // namespace hdual
