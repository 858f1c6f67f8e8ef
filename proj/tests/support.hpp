#pragma once

// Generators and independent oracles shared by the test programs.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hdual/cauchy_green.hpp"
#include "hdual/duality.hpp"
#include "hdual/vector3.hpp"

namespace testing_support {

using namespace hdual;
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

inline Covector random_covector(Rng& rng, int n, int r) {
  Covector c(n, r);
  for (std::size_t s = 0; s < c.size(); ++s) c[s] = uniform(rng, -1.0, 1.0);
  return c;
}

inline Point random_direction(Rng& rng, int n) {
  Point p(n);
  double len = 0.0;
  while (len < 1e-3) {
    for (int i = 0; i < n; ++i) p[i] = std::normal_distribution<double>(0.0, 1.0)(rng);
    len = p.norm();
  }
  return p * (1.0 / len);
}

inline Point random_point(Rng& rng, int n, double rmin, double rmax) {
  return random_direction(rng, n) * uniform(rng, rmin, rmax);
}

inline Polynomial random_polynomial(Rng& rng, int n, int max_degree, int terms) {
  Polynomial p(n);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(static_cast<std::size_t>(n));
    int budget = std::uniform_int_distribution<int>(0, max_degree)(rng);
    while (budget-- > 0) ++e[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, n - 1)(rng))];
    p.add_term(uniform(rng, -1.0, 1.0), e);
  }
  return p;
}

inline PolynomialForm random_polynomial_form(Rng& rng, int n, int r, int max_degree = 4) {
  std::vector<Polynomial> coeffs;
  for (std::size_t s = 0; s < binomial(n, r); ++s) coeffs.push_back(random_polynomial(rng, n, max_degree, 3));
  return PolynomialForm(n, r, coeffs);
}

// Sign of the permutation sorting v; 0 on repeated entries.
inline int permutation_sign(std::vector<int> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) return 0;
      if (v[i] > v[j]) sign = -sign;
    }
  return sign;
}

inline KernelTerm kterm(const Point& c, const Covector& xi, KernelOp op = KernelOp::None) { return {c, xi, op}; }

// dδ(k(·, c) ξ), harmonic off c (r >= 1).
inline FieldPtr d_delta_kernel(const Point& c, const Covector& xi) {
  const int n = c.dim();
  return exterior_derivative(make_field<KernelForm>(n, xi.degree() - 1, std::vector<KernelTerm>{kterm(c, xi, KernelOp::Delta)}));
}

// δd(k(·, c) ξ), harmonic off c (r <= n-1).
inline FieldPtr delta_d_kernel(const Point& c, const Covector& xi) {
  const int n = c.dim();
  return codifferential(make_field<KernelForm>(n, xi.degree() + 1, std::vector<KernelTerm>{kterm(c, xi, KernelOp::D)}));
}

// Random harmonic r-form with singular centres at distances in [rmin, rmax].
inline FieldPtr random_harmonic(Rng& rng, int n, int r, double rmin, double rmax) {
  std::vector<std::pair<double, FieldPtr>> parts;
  for (int t = 0; t < 2; ++t) {
    const Point c = random_point(rng, n, rmin, rmax);
    if (r > 0) parts.emplace_back(1.0, d_delta_kernel(c, random_covector(rng, n, r)));
    if (r < n) parts.emplace_back(1.0, delta_d_kernel(c, random_covector(rng, n, r)));
  }
  return linear_combination(parts);
}

inline double sup_on(const FormField& f, const QuadratureSurface& s) {
  double m = 0.0;
  for (const auto& y : s.nodes()) m = std::max(m, norm(eval(f, y)));
  return m;
}

inline SurfacePtr sphere(int n, double radius, int order) {
  return std::make_shared<const QuadratureSurface>(sphere_surface(Point(n), radius, order));
}

// ---------------------------------------------------------------------------
// Plain vector-calculus oracle for n = 3, r = 1, independent of the exterior
// algebra: a point pair (δ(kξ), d(kξ)) at c is f = -∇k·ξ, ∗w_hi = ∇k × ξ.

using V3 = std::array<double, 3>;

inline V3 grad_inv_dist(const V3& x, const V3& c) {
  const V3 d{x[0] - c[0], x[1] - c[1], x[2] - c[2]};
  const double r = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  const double f = -1.0 / (r * r * r);
  return {f * d[0], f * d[1], f * d[2]};
}

inline V3 vcross(const V3& a, const V3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double vdot(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// -(1/4π)∫⟨v, N×u⟩ + (1/4π)∫ f⟨N, u⟩ on the sphere |y - center| = R with a
// composite Simpson rule in θ (sin θ dθ) and the trapezoid rule in φ.
template <class U>
double dense_vector_pairing(const U& u, const V3& c, const V3& xi, const V3& center, double R, int nt, int np) {
  const double pi = std::numbers::pi;
  const double ht = pi / nt, hp = 2.0 * pi / np;
  double acc = 0.0;
  for (int i = 0; i <= nt; ++i) {
    const double th = i * ht;
    const double wt = (i == 0 || i == nt) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    for (int j = 0; j < np; ++j) {
      const double ph = j * hp;
      const V3 N{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
      const V3 y{center[0] + R * N[0], center[1] + R * N[1], center[2] + R * N[2]};
      const V3 g = grad_inv_dist(y, c);
      const V3 v = vcross(g, xi);
      const double f = -vdot(g, xi);
      const V3 uy = u(y);
      const double integrand = -vdot(v, vcross(N, uy)) + f * vdot(N, uy);
      acc += wt * std::sin(th) * integrand;
    }
  }
  return acc * (ht / 3.0) * hp * R * R / (4.0 * pi);
}

}  // namespace testing_support
