#include <doctest.h>

#include "support.hpp"

using namespace hdual;
using namespace testing_support;

namespace {

FieldPtr zero_field(int n, int r) { return make_field<PolynomialForm>(PolynomialForm::zero(n, r)); }

}  // namespace

TEST_CASE("sign sets") {
  CHECK(theorem1_signs(3, 1).hi == -1.0);
  CHECK(theorem1_signs(3, 1).lo == 1.0);
  CHECK(theorem1_signs(4, 2).lo == -1.0);
  CHECK(theorem2_signs(3, 1).hi == -1.0);
  CHECK(theorem2_signs(3, 1).lo == 1.0);
  CHECK(theorem2_signs(4, 2).hi == -1.0);
  CHECK(theorem2_signs(4, 2).lo == -1.0);
  // the two forms of the first coefficient differ exactly when n is odd and r even
  for (int n = 3; n <= 6; ++n)
    for (int r = 1; r < n; ++r)
      CHECK((theorem2_signs(n, r).hi != theorem2_signs_as_printed(n, r).hi) == (n % 2 == 1 && r % 2 == 0));
}

TEST_CASE("vanishing lemma") {
  Rng rng(51);
  for (int t = 0; t < 6; ++t) {
    const int n = 3 + t % 2;
    const int r = 1 + t % (n - 1);
    const auto s = sphere_surface(Point(n), 1.0, n == 3 ? 32 : 16);
    const FieldPtr u = random_harmonic(rng, n, r, 2.5, 3.5);
    const auto w = point_pair(random_point(rng, n, 2.5, 3.5), random_covector(rng, n, r));
    CHECK(lemma1_residual(u, w, s) <= 1e-9);
    CHECK(lemma1_residual(zero_field(n, r), w, s) == 0.0);
  }
}

TEST_CASE("point-measure identities") {
  Rng rng(52);
  for (int t = 0; t < 6; ++t) {
    const int n = 3 + t % 2;
    const int r = 1 + t % (n - 1);
    const auto s = sphere_surface(Point(n), 1.2, n == 3 ? 40 : 20);
    const Covector xi = random_covector(rng, n, r);

    const FieldPtr u = random_harmonic(rng, n, r, 3.0, 4.0);
    const Point x0 = random_point(rng, n, 0.0, 0.5);
    const auto rep1 = pairing_theorem1(u, point_pair(x0, xi), s);
    CHECK(rep1.value == doctest::Approx(inner(eval(*u, x0), xi)).epsilon(1e-8));
    CHECK(rep1.value == doctest::Approx(rep1.term1 + rep1.term2));
    CHECK(rep1.nodes == s.size());

    const FieldPtr ue = random_harmonic(rng, n, r, 0.0, 0.5);
    const Point x1 = random_point(rng, n, 2.5, 3.5);
    const auto rep2 = pairing_theorem2(point_pair(x1, xi), ue, s);
    CHECK(rep2.value == doctest::Approx(parity_sign(n + r + 1) * inner(eval(*ue, x1), xi)).epsilon(1e-8));
    CHECK(pairing_theorem2(point_pair(x1, xi), zero_field(n, r), s).value == 0.0);
  }
}

TEST_CASE("bilinearity") {
  Rng rng(53);
  const auto s = sphere_surface(Point{0, 0, 0, 0}, 1.0, 16);
  const FieldPtr u1 = random_harmonic(rng, 4, 2, 2.0, 3.0), u2 = random_harmonic(rng, 4, 2, 2.0, 3.0);
  const auto w1 = point_pair(random_point(rng, 4, 0.0, 0.5), random_covector(rng, 4, 2));
  const auto w2 = point_pair(random_point(rng, 4, 0.0, 0.5), random_covector(rng, 4, 2));
  const double a = pairing_theorem1(linear_combination({{2.0, u1}, {-0.5, u2}}), w1, s).value;
  const double b = 2.0 * pairing_theorem1(u1, w1, s).value - 0.5 * pairing_theorem1(u2, w1, s).value;
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
  const double c = pairing_theorem1(u1, pair_sum(w1, pair_scaled(w2, 3.0)), s).value;
  const double e = pairing_theorem1(u1, w1, s).value + 3.0 * pairing_theorem1(u1, w2, s).value;
  CHECK(c == doctest::Approx(e).epsilon(1e-12));
}

TEST_CASE("continuity bound") {
  Rng rng(54);
  const auto s = sphere_surface(Point{0, 0, 0}, 1.0, 24);
  for (int t = 0; t < 5; ++t) {
    const FieldPtr u = random_harmonic(rng, 3, 1, 2.0, 3.0);
    const auto w = point_pair(random_point(rng, 3, 0.0, 0.5), random_covector(rng, 3, 1));
    CHECK(std::abs(pairing_theorem1(u, w, s).value) <= continuity_constant(w, s) * sup_on(*u, s) * (1.0 + 1e-12));
  }
}

TEST_CASE("periods of a point pair") {
  const auto s = sphere_surface(Point{0, 0, 0}, 1.0, 40);
  const auto w = point_pair(Point{0.1, 0.2, 0.0}, Covector::basis(3, {1}) + 0.5 * Covector::basis(3, {2}));
  const auto cyc = circle_cycle(Point{0, 0, 2}, 0.8, Point{0, 0, 1}, 128);
  const double lhs = period_star_whi(cyc, w);
  CHECK(lhs == doctest::Approx(period_star_whi_rhs(cyc, w, s)).epsilon(1e-9));
  CHECK(period_star_whi(cyc, HolomorphicPair::zero(3, 1)) == 0.0);

  // moving the cycle away makes the period decay
  double prev = std::abs(lhs);
  for (double h : {4.0, 8.0, 16.0}) {
    const double v = std::abs(period_star_whi(circle_cycle(Point{0, 0, h}, 0.8, Point{0, 0, 1}, 128), w));
    CHECK(v < prev);
    prev = v;
  }

  const std::vector<Point> pts = {Point{2, 0, 0}, Point{0, 2.5, 0.5}};
  const std::vector<double> q = {1.0, -0.5};
  CHECK(period_wlo(pts, q, w) == doctest::Approx(period_wlo_rhs(pts, q, w, s)).epsilon(1e-9));
}

TEST_CASE("duality errors") {
  const auto s = sphere_surface(Point{0, 0, 0}, 1.0, 8);
  const auto w = point_pair(Point{0, 0, 0}, Covector::basis(3, {1}));
  CHECK_THROWS_AS(pairing_theorem1(zero_field(3, 2), w, s), DegreeMismatch);
  CHECK_THROWS_AS(pairing_theorem1(zero_field(4, 1), w, s), DimensionMismatch);
  const auto w4 = point_pair(Point{0, 0, 0, 0}, Covector::basis(4, {1}));
  CHECK_THROWS_AS(period_star_whi(circle_cycle(Point{0, 0, 2}, 0.5, Point{0, 0, 1}, 16), w4), UnsupportedDimension);
}
