#include <doctest.h>

#include "support.hpp"

using namespace hdual;
using namespace testing_support;

namespace {

FieldPtr constant(const Covector& c) { return make_field<PolynomialForm>(PolynomialForm::constant(c)); }

FieldPtr grad_inverse_distance(const Point& c) {
  return make_field<KernelForm>(3, 1, std::vector<KernelTerm>{kterm(c, Covector::scalar(3, 1.0), KernelOp::D)});
}

}  // namespace

TEST_CASE("interior reproduction examples") {
  const auto s = sphere(3, 1.0, 32);
  Polynomial h(3);
  h.add_term(1.0, {2, 0, 0});
  h.add_term(-1.0, {0, 2, 0});
  const FieldPtr u = exterior_derivative(make_field<PolynomialForm>(PolynomialForm(3, 0, {h})));
  const Point x{0.3, 0.1, -0.2};
  CHECK(norm(reproduce_interior(u, s, x).value - eval(*u, x)) < 1e-7);
  CHECK(norm(reproduce_interior(constant(Covector::basis(3, {1})), s, x).value - Covector::basis(3, {1})) < 1e-8);
  CHECK(norm(reproduce_interior(constant(Covector(3, 2)), s, x).value) == 0.0);
}

TEST_CASE("interior reproduction for every degree") {
  Rng rng(41);
  for (int n : {3, 4}) {
    const auto s = sphere(n, 1.0, n == 3 ? 32 : 20);
    for (int r = 0; r <= n; ++r) {
      const FieldPtr u = r == 0 || r == n ? constant(random_covector(rng, n, r)) : random_harmonic(rng, n, r, 2.0, 3.0);
      const auto rep = cauchy_green_field(u, s, Side::Interior);
      CHECK(rep.precondition.ok);
      for (int k = 0; k < 3; ++k) {
        const Point x = random_point(rng, n, 0.0, 0.6);
        CHECK(norm(eval(*rep.field, x) - eval(*u, x)) <= 1e-8 * std::max(1.0, norm(eval(*u, x))));
      }
    }
  }
}

TEST_CASE("exterior reproduction") {
  const FieldPtr u = grad_inverse_distance(Point{0, 0, 0});
  const Point x{2.0, 0.5, 0.0};
  const auto a = reproduce_exterior(u, sphere(3, 1.0, 32), x);
  const auto b = reproduce_exterior(u, sphere(3, 1.5, 32), x);
  CHECK(norm(a.value - eval(*u, x)) < 1e-7);
  CHECK(norm(a.value - b.value) < 1e-7);
  CHECK(norm(reproduce_exterior(constant(Covector(3, 1)), sphere(3, 1.0, 8), x).value) == 0.0);
}

TEST_CASE("pair reproduction") {
  const auto s = sphere(3, 1.0, 32);
  const auto far = point_pair(Point{3, 0, 0}, Covector::basis(3, {2}) - 0.5 * Covector::basis(3, {1}));
  const Point xin{0.2, 0, 0};
  const auto pin = reproduce_pair_interior(far, s, xin);
  CHECK(norm(pin.hi - eval(*far.hi, xin)) < 1e-7);
  CHECK(norm(pin.lo - eval(*far.lo, xin)) < 1e-7);

  const auto zero = reproduce_pair_interior(HolomorphicPair::zero(3, 1), s, xin);
  CHECK(norm(zero.hi) == 0.0);
  CHECK(norm(zero.lo) == 0.0);

  // (w_lo, w_hi) = (c, 0) is a pair for r = 1
  const HolomorphicPair cst(1, constant(Covector::scalar(3, 2.5)), constant(Covector(3, 2)));
  const auto pc = reproduce_pair_interior(cst, s, xin);
  CHECK(norm(pc.hi) < 1e-8);
  CHECK(pc.lo.scalar_value() == doctest::Approx(2.5).epsilon(1e-8));

  const auto near = point_pair(Point{0, 0, 0}, Covector::basis(3, {3}));
  const Point xout{0, 2, 1};
  const auto a = reproduce_pair_exterior(near, s, xout);
  const auto b = reproduce_pair_exterior(near, sphere(3, 1.4, 32), xout);
  CHECK(norm(a.hi - eval(*near.hi, xout)) < 1e-7);
  CHECK(norm(a.lo - eval(*near.lo, xout)) < 1e-7);
  CHECK(norm(a.hi - b.hi) + norm(a.lo - b.lo) < 1e-7);
}

TEST_CASE("pair reproduction in R^4") {
  Rng rng(42);
  const auto s = sphere(4, 1.0, 20);
  for (int r = 1; r <= 3; ++r) {
    const auto w = point_pair(random_point(rng, 4, 2.5, 3.0), random_covector(rng, 4, r));
    const auto rep = cauchy_green_pair(w, s, Side::Interior);
    const Point x = random_point(rng, 4, 0.0, 0.5);
    CHECK(norm(eval(*rep.hi, x) - eval(*w.hi, x)) < 1e-8);
    CHECK(norm(eval(*rep.lo, x) - eval(*w.lo, x)) < 1e-8);
  }
}

TEST_CASE("ellipsoidal surfaces reproduce as well") {
  auto e = std::make_shared<const QuadratureSurface>(ellipsoid_surface(Point{0.1, 0, 0}, {1.3, 1.0, 0.8}, 48));
  const FieldPtr u = d_delta_kernel(Point{2.5, 1.0, 0.0}, Covector::basis(3, {1}));
  const Point x{0.2, -0.1, 0.3};
  CHECK(norm(reproduce_interior(u, e, x).value - eval(*u, x)) < 1e-6 * norm(eval(*u, x)));
}

TEST_CASE("decomposition examples") {
  const FieldPtr u = grad_inverse_distance(Point{0, 0, 0});
  const auto dec = decompose_exterior(u, sphere(3, 1.0, 32));
  const Point x{2.0, 0.5, 0.0};
  const auto res = decomposition_residuals(dec, *u, {x});
  CHECK(res.sum < 1e-6);
  CHECK(res.delta_u1 < 1e-10);
  CHECK(res.d_u2 < 1e-10);
  CHECK(dec.boundary_sup == doctest::Approx(1.0));

  const auto z = decompose_exterior(constant(Covector(3, 1)), sphere(3, 1.0, 8));
  CHECK(norm(eval(*z.u1, x)) == 0.0);
  CHECK(norm(eval(*z.u2, x)) == 0.0);
  CHECK_THROWS_AS(decompose_exterior(constant(Covector(3, 0)), sphere(3, 1.0, 8)), DegreeMismatch);
}

TEST_CASE("side and proximity errors") {
  const auto s = sphere(3, 1.0, 16);
  const FieldPtr u = constant(Covector::basis(3, {1}));
  CHECK_THROWS_AS(reproduce_interior(u, s, Point{2, 0, 0}), DomainError);
  CHECK_THROWS_AS(reproduce_exterior(u, s, Point{0, 0, 0}), DomainError);
  CHECK_THROWS_AS(reproduce_interior(u, s, Point{0.99, 0, 0}), ProximityError);
  const auto rep = cauchy_green_field(u, s, Side::Interior);
  CHECK_THROWS_AS(eval(*rep.field, Point{0, 0, 1.02}), ProximityError);
}

TEST_CASE("preconditions flag non-harmonic input") {
  const auto s = sphere(3, 1.0, 16);
  const FieldPtr bad = make_field<PolynomialForm>(
      PolynomialForm::from_terms(3, 1, {{MultiIndex(3, {1}), Polynomial::variable(3, 0)}}));
  const auto rep = cauchy_green_field(bad, s, Side::Interior);
  CHECK_FALSE(rep.precondition.ok);
  CHECK(rep.precondition.residual > 0.5);
  CHECK_FALSE(rep.precondition.warnings.empty());
  // a constant does not vanish at infinity
  CHECK_FALSE(cauchy_green_field(constant(Covector::basis(3, {1})), s, Side::Exterior).precondition.ok);
}
