#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hdual/cli.hpp"

namespace hdual::cli {

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> list = {
      {"algebra", "wedge signs, double Hodge star and u^*v = <u,v> vol on all basis covectors, n = 3..5"},
      {"operators", "d^2 = 0, delta^2 = 0, the two codifferential paths, the Laplacian and finite differences"},
      {"quadrature", "sphere measures and spectral convergence of the product rules"},
      {"reciprocity", "sign relation between the two pairings of complementary point measures"},
      {"lemma1", "vanishing pairing for both-regular configurations, with a singular negative control"},
      {"contour", "pairing independence of the separating sphere"},
      {"decomposition", "exterior decomposition u = du1 + delta u2 and its constraints"},
      {"vector_equivalence", "form-language and vector-language pairings in R^3"},
  };
  return list;
}

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

Covector random_covector(Rng& rng, int n, int r) {
  Covector c(n, r);
  for (std::size_t s = 0; s < c.size(); ++s) c[s] = uniform(rng, -1.0, 1.0);
  return c;
}

Point random_point(Rng& rng, int n, double rmin, double rmax) {
  Point p(n);
  double len = 0.0;
  while (len < 1e-3) {
    for (int i = 0; i < n; ++i) p[i] = std::normal_distribution<double>(0.0, 1.0)(rng);
    len = p.norm();
  }
  return p * (uniform(rng, rmin, rmax) / len);
}

PolynomialForm random_polynomial_form(Rng& rng, int n, int r) {
  auto f = PolynomialForm::zero(n, r);
  std::vector<std::pair<MultiIndex, Polynomial>> terms;
  for (Mask m : basis_masks(n, r)) {
    Polynomial p(n);
    for (int t = 0; t < 3; ++t) {
      std::vector<int> e(static_cast<std::size_t>(n));
      int budget = 4;
      for (int i = 0; i < n && budget > 0; ++i) {
        const int k = std::uniform_int_distribution<int>(0, budget)(rng);
        e[static_cast<std::size_t>(i)] = k;
        budget -= k;
      }
      std::shuffle(e.begin(), e.end(), rng);
      p.add_term(uniform(rng, -1.0, 1.0), e);
    }
    terms.emplace_back(MultiIndex::from_mask(n, m), p);
  }
  return PolynomialForm::from_terms(n, r, terms);
}

// Harmonic r-form: Σ dδ(k(·, c) ξ) + δd(k(·, c') η) with centres at the given distances.
FieldPtr random_harmonic(Rng& rng, int n, int r, double rmin, double rmax, int count = 2) {
  std::vector<std::pair<double, FieldPtr>> parts;
  for (int t = 0; t < count; ++t) {
    const Point c = random_point(rng, n, rmin, rmax);
    if (r > 0) {
      auto base = make_field<KernelForm>(n, r - 1, std::vector<KernelTerm>{{c, random_covector(rng, n, r), KernelOp::Delta}});
      parts.emplace_back(1.0, exterior_derivative(base));
    }
    if (r < n) {
      auto base = make_field<KernelForm>(n, r + 1, std::vector<KernelTerm>{{c, random_covector(rng, n, r), KernelOp::D}});
      parts.emplace_back(1.0, codifferential(base));
    }
    if (r == 0) parts.emplace_back(1.0, make_field<KernelForm>(n, 0, std::vector<KernelTerm>{{c, random_covector(rng, n, 0)}}));
  }
  return linear_combination(parts);
}

double sup_on(const FormField& f, const QuadratureSurface& s) {
  double m = 0.0;
  for (const auto& y : s.nodes()) m = std::max(m, norm(eval(f, y)));
  return m;
}

int permutation_sign(std::vector<int> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j + 1 < v.size() - i; ++j)
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        sign = -sign;
      } else if (v[j] == v[j + 1]) {
        return 0;
      }
  return sign;
}

SuiteCheck check(std::string name, double value, double tol) { return {std::move(name), value, tol, value <= tol}; }

std::vector<SuiteCheck> suite_algebra(Rng& rng, int samples) {
  double wedge_res = 0.0, star_res = 0.0, inner_res = 0.0;
  for (int n = 3; n <= 5; ++n) {
    for (int r = 0; r <= n; ++r) {
      for (Mask a : basis_masks(n, r)) {
        const auto ea = Covector::basis(MultiIndex::from_mask(n, a));
        const double expect = parity_sign(static_cast<long>(r) * (n - r));
        star_res = std::max(star_res, norm(hodge(hodge(ea)) - expect * ea));
        for (int s = 0; r + s <= n; ++s)
          for (Mask b : basis_masks(n, s)) {
            const auto eb = Covector::basis(MultiIndex::from_mask(n, b));
            const auto ia = MultiIndex::from_mask(n, a).entries();
            const auto ib = MultiIndex::from_mask(n, b).entries();
            std::vector<int> cat(ia.begin(), ia.end());
            cat.insert(cat.end(), ib.begin(), ib.end());
            const int sign = permutation_sign(cat);
            const Covector w = wedge(ea, eb);
            const double got = sign == 0 ? w.max_abs() : w.coeff(MultiIndex::from_mask(n, a | b));
            wedge_res = std::max(wedge_res, std::abs(got - sign));
          }
      }
      for (int t = 0; t < std::max(1, samples / 10); ++t) {
        const auto u = random_covector(rng, n, r);
        const auto v = random_covector(rng, n, r);
        const double lhs = wedge(u, hodge(v)).scalar_value();
        inner_res = std::max(inner_res, std::abs(lhs - inner(u, v)));
      }
    }
  }
  return {check("wedge_sign", wedge_res, 1e-13), check("double_star", star_res, 1e-13),
          check("wedge_star_inner", inner_res, 1e-13)};
}

std::vector<SuiteCheck> suite_operators(Rng& rng, int samples) {
  double dd = 0.0, deldel = 0.0, paths = 0.0, lap = 0.0, fd = 0.0;
  for (int t = 0; t < samples; ++t) {
    const int n = 3 + t % 2;
    const int r = std::uniform_int_distribution<int>(0, n)(rng);
    const FieldPtr f = make_field<PolynomialForm>(random_polynomial_form(rng, n, r));
    const Point x = random_point(rng, n, 0.1, 1.5);
    const Jet j = f->jet(x, 2);
    if (r + 2 <= n) dd = std::max(dd, norm(jet_d(jet_d(j)).value()));
    if (r >= 2) deldel = std::max(deldel, norm(jet_delta(jet_delta(j)).value()));
    if (r >= 1) {
      const Covector a = jet_delta(j).value(), b = jet_delta_star(j).value();
      paths = std::max(paths, norm(a - b) / std::max(1.0, norm(a)));
    }
    Covector composed(n, r);
    if (r >= 1) composed += d(*codifferential(f), x);
    if (r < n) composed += delta(*exterior_derivative(f), x);
    const Covector l = laplacian(*f, x);
    lap = std::max(lap, norm(l + composed) / std::max(1.0, norm(l)));
  }
  // Analytic versus central differences on kernel fields.
  const double h = 1e-5;
  for (int t = 0; t < std::max(1, samples / 20); ++t) {
    const int n = 3 + t % 2;
    const int r = 1 + t % (n - 1);
    const FieldPtr f = random_harmonic(rng, n, r, 2.0, 3.0, 1);
    const Point x = random_point(rng, n, 0.0, 0.8);
    const Jet j = f->jet(x, 1);
    for (int i = 0; i < n; ++i) {
      Point xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const Covector diff = (eval(*f, xp) - eval(*f, xm)) * (0.5 / h);
      const Covector exact = j.partial({i});
      fd = std::max(fd, norm(diff - exact) / std::max(1e-3, norm(exact)));
    }
  }
  return {check("d_squared", dd, 1e-12), check("delta_squared", deldel, 1e-12),
          check("delta_star_path", paths, 1e-12), check("laplacian_composed", lap, 1e-10),
          check("finite_difference", fd, 1e-6)};
}

std::vector<SuiteCheck> suite_quadrature(Rng&, int) {
  const double s3 = integrate_scalar(sphere_surface(Point{0, 0, 0}, 1.0, 32), [](const Point&) { return 1.0; });
  const double s4 = integrate_scalar(sphere_surface(Point{0, 0, 0, 0}, 1.0, 24), [](const Point&) { return 1.0; });
  const double x2 = integrate_scalar(sphere_surface(Point{0, 0, 0}, 1.0, 16), [](const Point& p) { return p[0] * p[0]; });
  const double pi = std::numbers::pi;
  // ∫_{S^2} e^{x1} dS = 2π (e - 1/e)
  const double exact = 2.0 * pi * (std::exp(1.0) - std::exp(-1.0));
  double worst_ratio = 1e300;
  double prev = std::abs(integrate_scalar(sphere_surface(Point{0, 0, 0}, 1.0, 4), [](const Point& p) { return std::exp(p[0]); }) - exact);
  for (int order : {8, 16}) {
    const double e = std::abs(integrate_scalar(sphere_surface(Point{0, 0, 0}, 1.0, order), [](const Point& p) { return std::exp(p[0]); }) - exact);
    if (prev > 1e-13) worst_ratio = std::min(worst_ratio, prev / std::max(e, 1e-300));
    prev = e;
  }
  return {check("area_s2", std::abs(s3 - 4.0 * pi) / (4.0 * pi), 1e-10),
          check("area_s3", std::abs(s4 - 2.0 * pi * pi) / (2.0 * pi * pi), 1e-10),
          check("second_moment", std::abs(x2 - 4.0 * pi / 3.0), 1e-9),
          check("convergence_inverse_ratio", 10.0 / worst_ratio, 1.0)};
}

std::vector<SuiteCheck> suite_reciprocity(Rng& rng, int samples) {
  double res = 0.0;
  for (int t = 0; t < samples; ++t) {
    const int n = 3 + t % 2;
    const int r = std::uniform_int_distribution<int>(0, n)(rng);
    const auto rc = reciprocity_check(random_point(rng, n, 0.5, 2.0), random_covector(rng, n, r),
                                      random_point(rng, n, 0.5, 2.0), random_covector(rng, n, n - r));
    res = std::max(res, rc.residual() / std::max(1.0, std::abs(rc.t1_on_u2)));
  }
  return {check("sign_relation", res, 1e-12)};
}

std::vector<SuiteCheck> suite_lemma1(Rng& rng, int samples) {
  double worst = 0.0, control = 1e300;
  for (int t = 0; t < samples; ++t) {
    const int n = 3 + t % 2;
    const int r = 1 + t % (n - 1);
    const auto s = sphere_surface(Point(n), 1.0, n == 3 ? 32 : 16);
    const FieldPtr u = random_harmonic(rng, n, r, 2.5, 3.5);
    const HolomorphicPair w = point_pair(random_point(rng, n, 2.5, 3.5), random_covector(rng, n, r));
    const double scale = sup_on(*u, s) * std::max(sup_on(*w.lo, s), sup_on(*w.hi, s));
    worst = std::max(worst, lemma1_residual(u, w, s) / scale);
    if (t < 2) {
      const HolomorphicPair inside = point_pair(random_point(rng, n, 0.0, 0.3), random_covector(rng, n, r));
      const double sc = sup_on(*u, s) * std::max(sup_on(*inside.lo, s), sup_on(*inside.hi, s));
      control = std::min(control, lemma1_residual(u, inside, s) / sc);
    }
  }
  return {check("both_regular", worst, 1e-8), check("negative_control_inverse", 1e-3 / control, 1.0)};
}

std::vector<SuiteCheck> suite_contour(Rng& rng, int samples) {
  double worst = 0.0;
  for (int t = 0; t < samples; ++t) {
    const int n = 3 + t % 2;
    const int r = 1 + t % (n - 1);
    const FieldPtr u = random_harmonic(rng, n, r, 3.0, 4.0);
    const HolomorphicPair w = point_pair(random_point(rng, n, 0.0, 0.5), random_covector(rng, n, r));
    const int order = n == 3 ? 40 : 20;
    const double a = pairing_theorem1(u, w, sphere_surface(Point(n), 1.2, order)).value;
    const double b = pairing_theorem1(u, w, sphere_surface(Point(n), 1.6, order)).value;
    worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-300));
  }
  return {check("two_radii", worst, 1e-7)};
}

std::vector<SuiteCheck> suite_decomposition(Rng& rng, int samples) {
  double sum = 0.0, cons = 0.0;
  for (int t = 0; t < samples; ++t) {
    const int n = 3 + t % 2;
    const int r = 1 + t % (n - 1);
    const FieldPtr u = random_harmonic(rng, n, r, 0.0, 0.4);
    auto s = std::make_shared<const QuadratureSurface>(sphere_surface(Point(n), 1.0, n == 3 ? 32 : 16));
    const Decomposition dec = decompose_exterior(u, s);
    std::vector<Point> pts;
    double scale = 0.0;
    for (int k = 0; k < 5; ++k) {
      pts.push_back(random_point(rng, n, 1.5, 3.0));
      scale = std::max(scale, norm(eval(*u, pts.back())));
    }
    const auto res = decomposition_residuals(dec, *u, pts);
    sum = std::max(sum, res.sum / scale);
    cons = std::max(cons, std::max(res.delta_u1, res.d_u2) / dec.boundary_sup);
  }
  return {check("sum", sum, 1e-5), check("constraints", cons, 1e-5)};
}

std::vector<SuiteCheck> suite_vector(Rng& rng, int samples) {
  double worst = 0.0;
  const auto s = sphere_surface(Point{0, 0, 0}, 1.0, 24);
  for (int t = 0; t < samples; ++t) {
    const FieldPtr u = random_harmonic(rng, 3, 1, 2.5, 3.5);
    const HolomorphicPair w = point_pair(random_point(rng, 3, 0.0, 0.5), random_covector(rng, 3, 1));
    const auto vp = to_vector_pair(w);
    const double a = pairing_vector_h(VectorField3(u), vp.f, vp.v, s);
    const double b = pairing_theorem1(u, w, s).value;
    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
  }
  return {check("form_vs_vector", worst, 1e-10)};
}

}  // namespace

std::vector<SuiteCheck> run_suite(const std::string& name, std::uint64_t seed, int samples) {
  Rng rng(seed);
  auto pick = [&](int def) { return samples > 0 ? samples : def; };
  if (name == "algebra") return suite_algebra(rng, pick(50));
  if (name == "operators") return suite_operators(rng, pick(200));
  if (name == "quadrature") return suite_quadrature(rng, pick(1));
  if (name == "reciprocity") return suite_reciprocity(rng, pick(20));
  if (name == "lemma1") return suite_lemma1(rng, pick(10));
  if (name == "contour") return suite_contour(rng, pick(6));
  if (name == "decomposition") return suite_decomposition(rng, pick(4));
  if (name == "vector_equivalence") return suite_vector(rng, pick(10));
  throw ConfigError("unknown suite '" + name + "'");
}

}  // namespace hdual::cli
