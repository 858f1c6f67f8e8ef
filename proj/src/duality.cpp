#include "hdual/duality.hpp"

#include <algorithm>
#include <cmath>

namespace hdual {

PairingSigns theorem1_signs(int, int r) { return {-1.0, parity_sign(r + 1)}; }

PairingSigns theorem2_signs(int n, int r) { return {parity_sign(n + r + 1), parity_sign(n + 1)}; }

PairingSigns theorem2_signs_as_printed(int n, int r) {
  return {parity_sign(static_cast<long>(n) * r + r + 1), parity_sign(n + 1)};
}

double pairing_density_hi(const Covector& w_hi, const Covector& normal, const Covector& u) {
  return hodge(wedge(w_hi, hodge(wedge(normal, u)))).scalar_value();
}

double pairing_density_lo(const Covector& w_lo, const Covector& normal, const Covector& u) {
  return hodge(wedge(w_lo, wedge(normal, hodge(u)))).scalar_value();
}

namespace {

constexpr std::size_t kDiagnosticSamples = 32;

std::vector<Point> diagnostic_nodes(const QuadratureSurface& s) {
  const std::size_t stride = std::max<std::size_t>(1, s.size() / kDiagnosticSamples);
  std::vector<Point> out;
  for (std::size_t i = 0; i < s.size(); i += stride) out.push_back(s.nodes()[i]);
  return out;
}

void check_inputs(const FieldPtr& u, const HolomorphicPair& w, const QuadratureSurface& s) {
  if (!u) throw ArgumentError("a field is required");
  if (u->dim() != w.dim() || u->dim() != s.dim()) throw DimensionMismatch("pairing inputs differ in dimension");
  if (u->dim() < 3) throw UnsupportedDimension("pairings need n >= 3");
  if (u->degree() != w.r) throw DegreeMismatch("pair central degree must equal the form degree");
}

}  // namespace

PairingReport pairing(const FieldPtr& u, const HolomorphicPair& w, const QuadratureSurface& s, PairingSigns signs) {
  check_inputs(u, w, s);
  const int n = s.dim();
  CompensatedSum a, b;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Point& y = s.nodes()[i];
    const Covector normal = one_form(s.normals()[i].coords());
    try {
      const Covector uy = eval(*u, y);
      a.add(s.weights()[i] * pairing_density_hi(eval(*w.hi, y), normal, uy));
      b.add(s.weights()[i] * pairing_density_lo(eval(*w.lo, y), normal, uy));
    } catch (const Error& e) {
      throw NodeEvaluationError("pairing at quadrature node " + std::to_string(i) + ": " + e.what(), i);
    }
  }
  PairingReport rep;
  const double cn = c_n(n);
  rep.term1 = signs.hi * a.value() / cn;
  rep.term2 = signs.lo * b.value() / cn;
  rep.value = rep.term1 + rep.term2;
  rep.surface = s.descriptor();
  rep.order = s.descriptor().order;
  rep.nodes = s.size();
  const auto samples = diagnostic_nodes(s);
  rep.u_residual = is_harmonic(*u, samples, 0.0).max_residual;
  const auto pc = is_holomorphic_pair(w, samples, 0.0);
  rep.pair_residual = std::max({pc.closure_residual, pc.d_hi_residual, pc.delta_lo_residual});
  return rep;
}

PairingReport pairing_theorem1(const FieldPtr& u, const HolomorphicPair& w, const QuadratureSurface& s) {
  return pairing(u, w, s, theorem1_signs(s.dim(), w.r));
}

PairingReport pairing_theorem2(const HolomorphicPair& w, const FieldPtr& u, const QuadratureSurface& s) {
  return pairing(u, w, s, theorem2_signs(s.dim(), w.r));
}

double lemma1_residual(const FieldPtr& u, const HolomorphicPair& w, const QuadratureSurface& s) {
  return std::abs(pairing_theorem1(u, w, s).value);
}

double continuity_constant(const HolomorphicPair& w, const QuadratureSurface& s) {
  if (w.dim() != s.dim()) throw DimensionMismatch("pair and surface differ in dimension");
  const double total = integrate_scalar(s, [&](const Point& y) { return norm(eval(*w.hi, y)) + norm(eval(*w.lo, y)); });
  return total / c_n(s.dim());
}

namespace {

void check_period_pair(const HolomorphicPair& w) {
  if (w.dim() != 3 || w.r != 1) throw UnsupportedDimension("periods are implemented for n = 3, r = 1");
}

}  // namespace

double period_star_whi(const Cycle3& cycle, const HolomorphicPair& w) {
  check_period_pair(w);
  CompensatedSum acc;
  for (std::size_t i = 0; i < cycle.nodes.size(); ++i) {
    const Covector t = one_form(cycle.tangents[i].coords());
    acc.add(cycle.weights[i] * inner(hodge(eval(*w.hi, cycle.nodes[i])), t));
  }
  return acc.value();
}

FieldPtr cycle_codifferential_potential(const Cycle3& cycle) {
  std::vector<KernelTerm> terms;
  terms.reserve(cycle.nodes.size());
  for (std::size_t i = 0; i < cycle.nodes.size(); ++i)
    terms.push_back({cycle.nodes[i], hodge(one_form(cycle.tangents[i].coords())) * cycle.weights[i], KernelOp::Delta});
  return make_field<KernelForm>(3, 1, std::move(terms));
}

double period_star_whi_rhs(const Cycle3& cycle, const HolomorphicPair& w, const QuadratureSurface& s) {
  check_period_pair(w);
  return pairing_theorem1(cycle_codifferential_potential(cycle), w, s).value;
}

double period_wlo(const std::vector<Point>& points, const std::vector<double>& charges, const HolomorphicPair& w) {
  check_period_pair(w);
  if (points.size() != charges.size()) throw ArgumentError("one charge per chain point required");
  CompensatedSum acc;
  for (std::size_t j = 0; j < points.size(); ++j) acc.add(charges[j] * eval(*w.lo, points[j]).scalar_value());
  return acc.value();
}

FieldPtr chain_dstar_potential(const std::vector<Point>& points, const std::vector<double>& charges) {
  if (points.size() != charges.size()) throw ArgumentError("one charge per chain point required");
  std::vector<KernelTerm> terms;
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].dim() != 3) throw UnsupportedDimension("chains are implemented in R^3");
    // ∗(k vol) = k, so d∗U is the gradient of the scalar potential.
    terms.push_back({points[j], Covector::scalar(3, charges[j]), KernelOp::D});
  }
  return make_field<KernelForm>(3, 1, std::move(terms));
}

double period_wlo_rhs(const std::vector<Point>& points, const std::vector<double>& charges, const HolomorphicPair& w,
                      const QuadratureSurface& s) {
  check_period_pair(w);
  return pairing_theorem1(chain_dstar_potential(points, charges), w, s).value;
}

}  // namespace hdual
