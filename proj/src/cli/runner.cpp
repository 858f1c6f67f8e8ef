#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "hdual/cli.hpp"

namespace hdual::cli {

using nlohmann::json;

namespace {

json to_json(const Covector& c) {
  json a = json::array();
  for (double v : c.coeffs()) a.push_back(v);
  return a;
}

struct ErrorAcc {
  double abs = 0.0;
  double ref_scale = 0.0;
  void add(const Covector& value, const Covector& ref) {
    abs = std::max(abs, norm(value - ref));
    ref_scale = std::max(ref_scale, norm(ref));
  }
  // Relative to the largest reference norm; absolute when every reference vanishes.
  double rel() const { return ref_scale > 0.0 ? abs / ref_scale : abs; }
};

double scalar_rel(double value, double ref) {
  const double a = std::abs(value - ref);
  return std::abs(ref) > 0.0 ? a / std::abs(ref) : a;
}

void check_side(const QuadratureSurface& s, const Point& x, Side side) {
  const bool inside = s.contains(x);
  if (side == Side::Interior && !inside) throw DomainError("interior formula evaluated outside the surface");
  if (side == Side::Exterior && inside) throw DomainError("exterior formula evaluated inside the surface");
  s.check_clearance(x);
}

void add_warnings(json& out, const Precondition& pre) {
  if (!pre.warnings.empty()) out["warnings"] = pre.warnings;
  out["precondition_residual"] = pre.residual;
}

json run_reproduce(const Case& c) {
  json out;
  ErrorAcc err;
  json values = json::array(), refs = json::array();
  if (c.field) {
    auto rf = cauchy_green_field(c.field, c.surface, c.side);
    for (const auto& x : c.points) {
      check_side(*c.surface, x, c.side);
      const Covector v = eval(*rf.field, x);
      const Covector ref = eval(*c.field, x);
      err.add(v, ref);
      values.push_back(to_json(v));
      refs.push_back(to_json(ref));
    }
    add_warnings(out, rf.precondition);
  } else {
    auto rp = cauchy_green_pair(*c.pair, c.surface, c.side);
    for (const auto& x : c.points) {
      check_side(*c.surface, x, c.side);
      const Covector hi = eval(*rp.hi, x), lo = eval(*rp.lo, x);
      const Covector rhi = eval(*c.pair->hi, x), rlo = eval(*c.pair->lo, x);
      err.add(hi, rhi);
      err.add(lo, rlo);
      values.push_back({{"hi", to_json(hi)}, {"lo", to_json(lo)}});
      refs.push_back({{"hi", to_json(rhi)}, {"lo", to_json(rlo)}});
    }
    add_warnings(out, rp.precondition);
  }
  out["values"] = values;
  out["reference"] = refs;
  out["provenance"] = "direct_evaluation";
  out["abs_error"] = err.abs;
  out["rel_error"] = err.rel();
  out["pass"] = err.rel() <= c.tolerance;
  return out;
}

json run_pairing(const Case& c, Mode mode, int n, int r) {
  json out;
  const PairingReport rep =
      mode == Mode::Pair1 ? pairing_theorem1(c.field, *c.pair, *c.surface) : pairing_theorem2(*c.pair, c.field, *c.surface);
  out["value"] = rep.value;
  out["term1"] = rep.term1;
  out["term2"] = rep.term2;
  out["order"] = rep.order;
  out["nodes"] = rep.nodes;
  out["u_residual"] = rep.u_residual;
  out["pair_residual"] = rep.pair_residual;
  if (c.reference == "point_measure") {
    double ref = c.kappa * inner(eval(*c.field, c.charge->center), c.charge->xi);
    if (mode == Mode::Pair2) ref *= parity_sign(n + r + 1);
    out["reference"] = ref;
    out["provenance"] = mode == Mode::Pair1 ? "point_measure_identity(kappa)" : "point_measure_identity(kappa')";
    out["abs_error"] = std::abs(rep.value - ref);
    out["rel_error"] = scalar_rel(rep.value, ref);
    out["pass"] = scalar_rel(rep.value, ref) <= c.tolerance;
  } else if (c.reference == "zero") {
    out["reference"] = 0.0;
    out["provenance"] = "vanishing_lemma";
    out["abs_error"] = std::abs(rep.value);
    out["rel_error"] = std::abs(rep.value);
    out["pass"] = std::abs(rep.value) <= c.tolerance;
  } else {
    out["reference"] = nullptr;
    out["provenance"] = "none";
    out["pass"] = true;
  }
  return out;
}

json run_decompose(const Case& c) {
  json out;
  const Decomposition dec = decompose_exterior(c.field, c.surface);
  for (const auto& x : c.points) check_side(*c.surface, x, Side::Exterior);
  const DecompositionResiduals res = decomposition_residuals(dec, *c.field, c.points);
  double u_scale = 0.0;
  for (const auto& x : c.points) u_scale = std::max(u_scale, norm(eval(*c.field, x)));
  const double sum_rel = u_scale > 0.0 ? res.sum / u_scale : res.sum;
  const double sup = dec.boundary_sup;
  const double cons_rel = sup > 0.0 ? std::max(res.delta_u1, res.d_u2) / sup : std::max(res.delta_u1, res.d_u2);

  const int n = c.field->dim();
  Point far = c.surface->descriptor().center;
  for (int i = 0; i < n; ++i) far[i] += c.decay_range / std::sqrt(static_cast<double>(n));
  const double decay = std::max(norm(eval(*dec.u1, far)), norm(eval(*dec.u2, far)));
  const double decay_rel = sup > 0.0 ? decay / sup : decay;

  out["sum_residual"] = res.sum;
  out["sum_rel_error"] = sum_rel;
  out["delta_u1"] = res.delta_u1;
  out["d_u2"] = res.d_u2;
  out["constraint_rel"] = cons_rel;
  out["boundary_sup"] = sup;
  out["decay_range"] = c.decay_range;
  out["decay_rel"] = decay_rel;
  out["provenance"] = "direct_evaluation";
  out["rel_error"] = std::max(sum_rel, cons_rel);
  out["pass"] = sum_rel <= c.tolerance && cons_rel <= c.tolerance && decay_rel <= 1e-3;
  add_warnings(out, dec.precondition);
  return out;
}

json run_periods(const Case& c) {
  json out;
  double lhs = 0.0, rhs = 0.0;
  if (c.cycle) {
    const Cycle3 cyc = circle_cycle(c.cycle->center, c.cycle->radius, c.cycle->axis, c.cycle->order);
    for (const auto& p : cyc.nodes)
      if (c.surface->contains(p)) throw DomainError("cycle enters the compact bounded by the surface");
    lhs = period_star_whi(cyc, *c.pair);
    rhs = period_star_whi_rhs(cyc, *c.pair, *c.surface);
  } else {
    for (const auto& p : c.chain->points)
      if (c.surface->contains(p)) throw DomainError("chain point inside the compact bounded by the surface");
    lhs = period_wlo(c.chain->points, c.chain->charges, *c.pair);
    rhs = period_wlo_rhs(c.chain->points, c.chain->charges, *c.pair, *c.surface);
  }
  out["value"] = lhs;
  out["reference"] = rhs;
  out["provenance"] = "pairing_of_curve_potential";
  out["abs_error"] = std::abs(lhs - rhs);
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  out["rel_error"] = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
  out["pass"] = out["rel_error"].get<double>() <= c.tolerance;
  return out;
}

json run_identities(const Case& c, std::uint64_t seed) {
  json out;
  json checks = json::array();
  bool pass = true;
  for (const auto& ch : run_suite(c.suite, seed, c.samples)) {
    checks.push_back({{"name", ch.name}, {"value", ch.value}, {"tolerance", ch.tolerance}, {"pass", ch.pass}});
    pass = pass && ch.pass;
  }
  out["suite"] = c.suite;
  out["checks"] = checks;
  out["provenance"] = "property_suite";
  out["pass"] = pass;
  return out;
}

}  // namespace

json run_experiment(const Experiment& e, const RunOptions& opts) {
  const std::uint64_t seed = opts.seed.value_or(e.seed);
  json report;
  report["schema_version"] = kSchemaVersion;
  report["name"] = e.name;
  report["mode"] = mode_name(e.mode);
  report["n"] = e.n;
  report["r"] = e.r;
  report["seed"] = seed;
  json cases = json::array();
  std::size_t passed = 0, failed = 0, errors = 0;
  for (std::size_t k = 0; k < e.cases.size(); ++k) {
    const Case& c = e.cases[k];
    json out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      switch (e.mode) {
        case Mode::Reproduce: out = run_reproduce(c); break;
        case Mode::Pair1:
        case Mode::Pair2: out = run_pairing(c, e.mode, e.n, e.r); break;
        case Mode::Decompose: out = run_decompose(c); break;
        case Mode::Periods: out = run_periods(c); break;
        case Mode::Identities: out = run_identities(c, seed + k); break;
      }
    } catch (const Error& err) {
      out = json::object();
      out["error"] = err.what();
      out["pass"] = false;
      ++errors;
    }
    out["id"] = k;
    out["input"] = c.input;
    out["tolerance"] = c.tolerance;
    if (opts.timing)
      out["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!out.contains("error")) (out["pass"].get<bool>() ? passed : failed)++;
    cases.push_back(std::move(out));
  }
  report["cases"] = cases;
  report["summary"] = {{"cases", e.cases.size()}, {"passed", passed}, {"failed", failed}, {"errors", errors}};
  return report;
}

int report_exit_code(const json& report) {
  const auto& s = report.at("summary");
  if (s.at("errors").get<std::size_t>() > 0) return kRuntimeError;
  if (s.at("failed").get<std::size_t>() > 0) return kFail;
  return kPass;
}

// RFC 4180 quoting: wrap in quotes and double any embedded quote.
static std::string csv_quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string report_to_csv(const json& report) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "id,mode,label,value,reference,abs_error,rel_error,tolerance,pass,error\n";
  auto num = [&](const json& c, const char* key) {
    if (c.contains(key) && c[key].is_number()) os << c[key].get<double>();
  };
  for (const auto& c : report.at("cases")) {
    os << c.at("id").get<std::size_t>() << ',' << report.at("mode").get<std::string>() << ',';
    if (c.at("input").is_object() && c["input"].contains("label") && c["input"]["label"].is_string())
      os << csv_quoted(c["input"]["label"].get<std::string>());
    os << ',';
    num(c, "value");
    os << ',';
    num(c, "reference");
    os << ',';
    num(c, "abs_error");
    os << ',';
    num(c, "rel_error");
    os << ',';
    num(c, "tolerance");
    os << ',' << (c.at("pass").get<bool>() ? "true" : "false") << ',';
    if (c.contains("error")) os << csv_quoted(c["error"].get<std::string>());
    os << '\n';
  }
  return os.str();
}

}  // namespace hdual::cli
