#include <doctest.h>

#include "support.hpp"

using namespace hdual;
using namespace testing_support;

namespace {

V3 as_v3(const Vec3& v) { return {v[0], v[1], v[2]}; }

}  // namespace

TEST_CASE("form and vector identification") {
  const auto e1 = make_field<PolynomialForm>(PolynomialForm::constant(Covector::basis(3, {1})));
  const Vec3 v = form_to_vector(e1)(Point{0.3, 0.2, 0.1});
  CHECK(v == Vec3{1.0, 0.0, 0.0});
  Rng rng(61);
  for (int t = 0; t < 10; ++t) {
    const auto u = make_field<PolynomialForm>(random_polynomial_form(rng, 3, 1));
    const Point x = random_point(rng, 3, 0.0, 1.0);
    CHECK(eval(*vector_to_form(form_to_vector(u)), x) == eval(*u, x));
    CHECK(from_vec3(to_vec3(eval(*u, x))) == eval(*u, x));
  }
  CHECK(cross(Vec3{1, 0, 0}, Vec3{0, 1, 0}) == Vec3{0, 0, 1});
  CHECK(dot(Vec3{1, 2, 3}, Vec3{4, -5, 6}) == 12.0);
}

TEST_CASE("div, curl and grad against hand-computed values") {
  // v = (x1 x2, x2 x3, x3 x1): div v = x2 + x3 + x1, curl v = (-x2, -x3, -x1)
  const auto v = VectorField3(make_field<PolynomialForm>(PolynomialForm::from_terms(
      3, 1,
      {{MultiIndex(3, {1}), Polynomial(3).add_term(1.0, {1, 1, 0})},
       {MultiIndex(3, {2}), Polynomial(3).add_term(1.0, {0, 1, 1})},
       {MultiIndex(3, {3}), Polynomial(3).add_term(1.0, {1, 0, 1})}})));
  const Point x{0.5, -1.0, 2.0};
  CHECK(v.div(x) == doctest::Approx(1.5));
  const Vec3 c = v.curl(x);
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c[1] == doctest::Approx(-2.0));
  CHECK(c[2] == doctest::Approx(-0.5));
  const auto f = make_field<PolynomialForm>(PolynomialForm(3, 0, {Polynomial(3).add_term(1.0, {2, 1, 0})}));
  const Vec3 g = grad(*f, x);
  CHECK(g[0] == doctest::Approx(-1.0));
  CHECK(g[1] == doctest::Approx(0.25));
  CHECK(g[2] == 0.0);
}

TEST_CASE("vector pairs solve grad f + curl v = 0, div v = 0") {
  Rng rng(62);
  const auto w = point_pair(Point{0, 0, 0}, random_covector(rng, 3, 1));
  const auto vp = to_vector_pair(w);
  for (int t = 0; t < 5; ++t) {
    const Point x = random_point(rng, 3, 0.5, 2.0);
    const Vec3 g = grad(*vp.f, x), c = vp.v.curl(x);
    CHECK(std::hypot(g[0] + c[0], g[1] + c[1], g[2] + c[2]) < 1e-12);
    CHECK(std::abs(vp.v.div(x)) < 1e-12);
  }
  const auto back = to_form_pair(vp);
  const Point y{0.7, 0.1, -0.4};
  CHECK(norm(eval(*back.hi, y) - eval(*w.hi, y)) < 1e-15);
  CHECK(norm(eval(*back.lo, y) - eval(*w.lo, y)) < 1e-15);
}

TEST_CASE("point-pair vector fields match the plain vector oracle") {
  const Point c{0.1, 0.2, -0.1};
  const Covector xi = Covector::basis(3, {1}) - 0.4 * Covector::basis(3, {3});
  const auto vp = to_vector_pair(point_pair(c, xi));
  const Point x{1.0, -0.5, 0.7};
  const V3 g = grad_inv_dist({x[0], x[1], x[2]}, {c[0], c[1], c[2]});
  const V3 vx{1.0, 0.0, -0.4};
  CHECK(eval(*vp.f, x).scalar_value() == doctest::Approx(-vdot(g, vx)));
  const V3 v = as_v3(vp.v(x)), expect = vcross(g, vx);
  for (int i = 0; i < 3; ++i) CHECK(v[static_cast<std::size_t>(i)] == doctest::Approx(expect[static_cast<std::size_t>(i)]));
}

TEST_CASE("vector pairings equal the form pairings") {
  Rng rng(63);
  const auto s = sphere_surface(Point{0, 0, 0}, 1.0, 32);
  for (int t = 0; t < 4; ++t) {
    const FieldPtr u = random_harmonic(rng, 3, 1, 2.5, 3.5);
    const auto w = point_pair(random_point(rng, 3, 0.0, 0.5), random_covector(rng, 3, 1));
    const auto vp = to_vector_pair(w);
    CHECK(pairing_vector_h(VectorField3(u), vp.f, vp.v, s) == doctest::Approx(pairing_theorem1(u, w, s).value).epsilon(1e-12));

    // both regular inside: vanishes
    const auto wf = to_vector_pair(point_pair(random_point(rng, 3, 2.5, 3.5), random_covector(rng, 3, 1)));
    CHECK(std::abs(pairing_vector_h(VectorField3(u), wf.f, wf.v, s)) < 1e-9);

    const FieldPtr ue = random_harmonic(rng, 3, 1, 0.0, 0.5);
    const auto w2 = point_pair(random_point(rng, 3, 2.5, 3.5), random_covector(rng, 3, 1));
    const auto vp2 = to_vector_pair(w2);
    CHECK(pairing_vector_p(vp2.f, vp2.v, VectorField3(ue), s) ==
          doctest::Approx(pairing_theorem2(w2, ue, s).value).epsilon(1e-12));
  }
  const auto zf = make_field<PolynomialForm>(PolynomialForm::zero(3, 0));
  const VectorField3 zv(make_field<PolynomialForm>(PolynomialForm::zero(3, 1)));
  CHECK(pairing_vector_p(zf, zv, VectorField3(random_harmonic(rng, 3, 1, 0.0, 0.5)), s) == 0.0);
}

TEST_CASE("pairing with x/|x|^3 against the closed form") {
  const auto s = sphere_surface(Point{0, 0, 0}, 1.0, 40);
  // x/|x|^3 = -d(1/|x|)
  const auto u = VectorField3(make_field<KernelForm>(
      3, 1, std::vector<KernelTerm>{kterm(Point{0, 0, 0}, Covector::scalar(3, -1.0), KernelOp::D)}));
  const Point x1{2.0, 1.0, -0.5};
  const Covector xi = Covector::basis(3, {2}) + 0.3 * Covector::basis(3, {1});
  const auto vp = to_vector_pair(point_pair(x1, xi));
  const Vec3 ux = u(x1);
  const double closed = -(ux[0] * 0.3 + ux[1] * 1.0);  // (-1)^{n+r+1} <u(x1), ξ>
  CHECK(pairing_vector_p(vp.f, vp.v, u, s) == doctest::Approx(closed).epsilon(1e-8));
}

TEST_CASE("Helmholtz decomposition") {
  auto s = sphere(3, 1.0, 32);
  const auto u = VectorField3(make_field<KernelForm>(
      3, 1, std::vector<KernelTerm>{kterm(Point{0, 0, 0}, Covector::scalar(3, -1.0), KernelOp::D)}));
  const auto h = helmholtz_decompose(u, s);
  const auto res = helmholtz_residuals(h, u, {Point{2, 1, 0}});
  CHECK(res.sum < 1e-6);
  CHECK(res.div_v < 1e-6);
  CHECK(res.lap_f < 1e-6);
  CHECK(res.lap_v < 1e-6);

  // u = curl curl (0, 0, k)
  const auto dip = VectorField3(d_delta_kernel(Point{0, 0, 0}, Covector::basis(3, {3})));
  const auto hd = helmholtz_decompose(dip, s);
  CHECK(helmholtz_residuals(hd, dip, {Point{2, 1, 0}, Point{0, -1.5, 1.5}}).sum < 1e-6);

  const VectorField3 zero(make_field<PolynomialForm>(PolynomialForm::zero(3, 1)));
  const auto hz = helmholtz_decompose(zero, s);
  CHECK(eval(*hz.f, Point{2, 0, 0}).scalar_value() == 0.0);
  CHECK(hz.v(Point{2, 0, 0}) == Vec3{0, 0, 0});
}

TEST_CASE("vector view errors") {
  CHECK_THROWS_AS(VectorField3(make_field<PolynomialForm>(PolynomialForm::zero(3, 2))), DegreeMismatch);
  CHECK_THROWS_AS(VectorField3(make_field<PolynomialForm>(PolynomialForm::zero(4, 1))), DimensionMismatch);
}
