#include <fstream>
#include <set>
#include <sstream>

#include "hdual/cli.hpp"

namespace hdual::cli {

using nlohmann::json;

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::Reproduce: return "reproduce";
    case Mode::Pair1: return "pair1";
    case Mode::Pair2: return "pair2";
    case Mode::Decompose: return "decompose";
    case Mode::Periods: return "periods";
    case Mode::Identities: return "identities";
  }
  return "unknown";
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ConfigError(where + ": " + what); }

void expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
}

void expect_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  expect_object(j, where);
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) fail(where, "unknown key '" + key + "'");
}

const json& require(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) fail(where, "missing required key '" + key + "'");
  return j.at(key);
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

Point as_point(const json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    fail(where, "expected an array of " + std::to_string(n) + " coordinates");
  Point p(n);
  for (int i = 0; i < n; ++i) p[i] = as_number(j[static_cast<std::size_t>(i)], where);
  return p;
}

MultiIndex as_index(const json& j, int n, const std::string& where) {
  if (!j.is_array()) fail(where, "multi-index must be an array");
  std::vector<int> entries;
  for (const auto& e : j) entries.push_back(as_int(e, where));
  try {
    return MultiIndex(n, entries);
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

// [{"index": [1, 3], "value": 0.5}, ...]
Covector as_covector(const json& j, int n, int degree, const std::string& where) {
  if (!j.is_array()) fail(where, "covector must be an array of {index, value} terms");
  if (degree < 0 || degree > n) fail(where, "covector degree out of range");
  Covector c(n, degree);
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    expect_keys(j[k], {"index", "value"}, at);
    const MultiIndex alpha = as_index(require(j[k], "index", at), n, at);
    if (alpha.length() != degree) fail(at, "index length must equal the degree " + std::to_string(degree));
    c.coeff(alpha) += as_number(require(j[k], "value", at), at);
  }
  return c;
}

Polynomial as_polynomial(const json& j, int n, const std::string& where) {
  if (!j.is_array()) fail(where, "monomials must be an array of [coefficient, [exponents]]");
  Polynomial p(n);
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    const json& m = j[k];
    if (!m.is_array() || m.size() != 2 || !m[1].is_array() || static_cast<int>(m[1].size()) != n)
      fail(at, "monomial must be [coefficient, [" + std::to_string(n) + " exponents]]");
    std::vector<int> powers;
    for (const auto& e : m[1]) {
      const int v = as_int(e, at);
      if (v < 0 || v > 255) fail(at, "exponents must lie in [0, 255]");
      powers.push_back(v);
    }
    p.add_term(as_number(m[0], at), powers);
  }
  return p;
}

FieldPtr as_field(const json& j, int n, int degree, const std::string& where) {
  expect_object(j, where);
  const std::string family = as_string(require(j, "family", where), where + ".family");
  if (degree < 0 || degree > n) fail(where, "field degree out of range");
  try {
    if (family == "zero") {
      expect_keys(j, {"family"}, where);
      return make_field<PolynomialForm>(PolynomialForm::zero(n, degree));
    }
    if (family == "constant") {
      expect_keys(j, {"family", "value"}, where);
      return make_field<PolynomialForm>(
          PolynomialForm::constant(as_covector(require(j, "value", where), n, degree, where + ".value")));
    }
    if (family == "polynomial") {
      expect_keys(j, {"family", "components"}, where);
      const json& comps = require(j, "components", where);
      if (!comps.is_array()) fail(where, "components must be an array");
      std::vector<std::pair<MultiIndex, Polynomial>> terms;
      for (std::size_t k = 0; k < comps.size(); ++k) {
        const std::string at = where + ".components[" + std::to_string(k) + "]";
        expect_keys(comps[k], {"index", "monomials"}, at);
        const MultiIndex alpha = as_index(require(comps[k], "index", at), n, at);
        if (alpha.length() != degree) fail(at, "index length must equal the degree " + std::to_string(degree));
        terms.emplace_back(alpha, as_polynomial(require(comps[k], "monomials", at), n, at + ".monomials"));
      }
      return make_field<PolynomialForm>(PolynomialForm::from_terms(n, degree, terms));
    }
    if (family == "kernel") {
      expect_keys(j, {"family", "terms"}, where);
      const json& ts = require(j, "terms", where);
      if (!ts.is_array()) fail(where, "terms must be an array");
      std::vector<KernelTerm> terms;
      for (std::size_t k = 0; k < ts.size(); ++k) {
        const std::string at = where + ".terms[" + std::to_string(k) + "]";
        expect_keys(ts[k], {"center", "xi", "op"}, at);
        const std::string op = ts[k].contains("op") ? as_string(ts[k]["op"], at + ".op") : "none";
        KernelOp kop = KernelOp::None;
        int xi_degree = degree;
        if (op == "d") {
          kop = KernelOp::D;
          xi_degree = degree - 1;
        } else if (op == "delta") {
          kop = KernelOp::Delta;
          xi_degree = degree + 1;
        } else if (op != "none") {
          fail(at + ".op", "expected none, d or delta");
        }
        terms.push_back({as_point(require(ts[k], "center", at), n, at + ".center"),
                         as_covector(require(ts[k], "xi", at), n, xi_degree, at + ".xi"), kop});
      }
      return make_field<KernelForm>(n, degree, std::move(terms));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const UnsupportedDimension&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where, "unknown field family '" + family + "'");
}

HolomorphicPair as_pair(const json& j, int n, int r, std::optional<PointCharge>& charge, const std::string& where) {
  expect_object(j, where);
  const std::string family = as_string(require(j, "family", where), where + ".family");
  if (r < 1 || r > n - 1) fail(where, "pairs need 1 <= r <= n-1");
  std::optional<HolomorphicPair> w;
  try {
    if (family == "zero") {
      expect_keys(j, {"family", "gauge"}, where);
      w = HolomorphicPair::zero(n, r);
    } else if (family == "point_pair") {
      expect_keys(j, {"family", "center", "xi", "gauge"}, where);
      PointCharge pc{as_point(require(j, "center", where), n, where + ".center"),
                     as_covector(require(j, "xi", where), n, r, where + ".xi")};
      w = point_pair(pc.center, pc.xi);
      charge = pc;
    } else if (family == "components") {
      expect_keys(j, {"family", "lo", "hi", "gauge"}, where);
      w = HolomorphicPair(r, as_field(require(j, "lo", where), n, r - 1, where + ".lo"),
                          as_field(require(j, "hi", where), n, r + 1, where + ".hi"));
    } else {
      fail(where, "unknown pair family '" + family + "'");
    }
    if (j.contains("gauge")) {
      const json& g = j["gauge"];
      const std::string at = where + ".gauge";
      expect_keys(g, {"h1", "h2"}, at);
      FieldPtr lo = w->lo;
      FieldPtr hi = w->hi;
      if (g.contains("h1")) hi = sum(hi, exterior_derivative(as_field(g["h1"], n, r, at + ".h1")));
      if (g.contains("h2")) lo = sum(lo, codifferential(as_field(g["h2"], n, r, at + ".h2")));
      w = HolomorphicPair(r, lo, hi);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
  return *w;
}

SurfacePtr as_surface(const json& j, int n, const std::string& where) {
  expect_keys(j, {"shape", "center", "radius", "semi_axes", "order"}, where);
  const std::string shape = j.contains("shape") ? as_string(j["shape"], where + ".shape") : "sphere";
  const Point center = j.contains("center") ? as_point(j["center"], n, where + ".center") : Point(n);
  const int order = as_int(require(j, "order", where), where + ".order");
  try {
    if (shape == "sphere") {
      if (j.contains("semi_axes")) fail(where, "spheres take a radius, not semi_axes");
      return std::make_shared<const QuadratureSurface>(
          sphere_surface(center, as_number(require(j, "radius", where), where + ".radius"), order));
    }
    if (shape == "ellipsoid") {
      if (j.contains("radius")) fail(where, "ellipsoids take semi_axes, not a radius");
      const json& ax = require(j, "semi_axes", where);
      if (!ax.is_array()) fail(where, "semi_axes must be an array");
      std::vector<double> axes;
      for (const auto& a : ax) axes.push_back(as_number(a, where + ".semi_axes"));
      return std::make_shared<const QuadratureSurface>(ellipsoid_surface(center, axes, order));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const UnsupportedDimension&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where, "unknown surface shape '" + shape + "'");
}

std::vector<Point> as_points(const json& j, int n, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of points");
  std::vector<Point> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(as_point(j[k], n, where + "[" + std::to_string(k) + "]"));
  return out;
}

Mode as_mode(const json& j) {
  const std::string m = as_string(j, "mode");
  for (Mode mode : {Mode::Reproduce, Mode::Pair1, Mode::Pair2, Mode::Decompose, Mode::Periods, Mode::Identities})
    if (mode_name(mode) == m) return mode;
  fail("mode", "unknown mode '" + m + "'");
}

Case parse_case(const json& j, const Experiment& e, const SurfacePtr& default_surface, double default_tol,
                const std::string& where) {
  Case c;
  c.input = j;
  c.tolerance = default_tol;
  c.surface = default_surface;
  const int n = e.n;
  const int r = e.r;
  auto common = [&](std::set<std::string> keys) {
    keys.insert({"tolerance", "surface", "label"});
    expect_keys(j, keys, where);
    if (j.contains("tolerance")) c.tolerance = as_number(j["tolerance"], where + ".tolerance");
    if (j.contains("surface")) c.surface = as_surface(j["surface"], n, where + ".surface");
    if (e.mode != Mode::Identities && !c.surface) fail(where, "no surface given (case or top level)");
  };
  switch (e.mode) {
    case Mode::Reproduce: {
      common({"field", "pair", "side", "points"});
      if (j.contains("field") == j.contains("pair")) fail(where, "give exactly one of 'field' or 'pair'");
      if (j.contains("field")) c.field = as_field(j["field"], n, r, where + ".field");
      if (j.contains("pair")) c.pair = as_pair(j["pair"], n, r, c.charge, where + ".pair");
      const std::string side = j.contains("side") ? as_string(j["side"], where + ".side") : "interior";
      if (side == "interior")
        c.side = Side::Interior;
      else if (side == "exterior")
        c.side = Side::Exterior;
      else
        fail(where + ".side", "expected interior or exterior");
      c.points = as_points(require(j, "points", where), n, where + ".points");
      break;
    }
    case Mode::Pair1:
    case Mode::Pair2: {
      common({"u", "pair", "reference", "kappa"});
      c.field = as_field(require(j, "u", where), n, r, where + ".u");
      c.pair = as_pair(require(j, "pair", where), n, r, c.charge, where + ".pair");
      c.reference = j.contains("reference") ? as_string(j["reference"], where + ".reference") : "none";
      if (c.reference != "point_measure" && c.reference != "zero" && c.reference != "none")
        fail(where + ".reference", "expected point_measure, zero or none");
      if (c.reference == "point_measure" && !c.charge) fail(where, "point_measure reference needs a point_pair");
      c.kappa = j.contains("kappa") ? as_number(j["kappa"], where + ".kappa")
                                    : (e.mode == Mode::Pair1 ? kKappa : kKappaPrime);
      break;
    }
    case Mode::Decompose: {
      common({"field", "points", "decay_range"});
      c.field = as_field(require(j, "field", where), n, r, where + ".field");
      c.points = as_points(require(j, "points", where), n, where + ".points");
      if (j.contains("decay_range")) c.decay_range = as_number(j["decay_range"], where + ".decay_range");
      break;
    }
    case Mode::Periods: {
      common({"pair", "cycle", "chain"});
      if (n != 3 || r != 1) throw UnsupportedDimension("periods are implemented for n = 3, r = 1");
      c.pair = as_pair(require(j, "pair", where), n, r, c.charge, where + ".pair");
      if (j.contains("cycle") == j.contains("chain")) fail(where, "give exactly one of 'cycle' or 'chain'");
      if (j.contains("cycle")) {
        const json& cy = j["cycle"];
        const std::string at = where + ".cycle";
        expect_keys(cy, {"center", "radius", "axis", "order"}, at);
        CycleSpec cs;
        cs.center = as_point(require(cy, "center", at), 3, at + ".center");
        cs.radius = as_number(require(cy, "radius", at), at + ".radius");
        cs.axis = as_point(require(cy, "axis", at), 3, at + ".axis");
        if (cy.contains("order")) cs.order = as_int(cy["order"], at + ".order");
        c.cycle = cs;
      } else {
        const json& ch = j["chain"];
        const std::string at = where + ".chain";
        expect_keys(ch, {"points", "charges"}, at);
        ChainSpec cs;
        cs.points = as_points(require(ch, "points", at), 3, at + ".points");
        for (const auto& q : require(ch, "charges", at)) cs.charges.push_back(as_number(q, at + ".charges"));
        if (cs.points.size() != cs.charges.size()) fail(at, "one charge per point required");
        c.chain = cs;
      }
      break;
    }
    case Mode::Identities: {
      common({"suite", "samples"});
      c.suite = as_string(require(j, "suite", where), where + ".suite");
      bool known = false;
      for (const auto& s : suites()) known = known || s.name == c.suite;
      if (!known) fail(where + ".suite", "unknown suite '" + c.suite + "'");
      if (j.contains("samples")) c.samples = as_int(j["samples"], where + ".samples");
      break;
    }
  }
  return c;
}

}  // namespace

Experiment parse_config(const json& doc) {
  expect_keys(doc, {"schema_version", "name", "mode", "n", "r", "seed", "tolerance", "surface", "cases", "output"},
              "config");
  const int version = as_int(require(doc, "schema_version", "config"), "schema_version");
  if (version != kSchemaVersion) fail("schema_version", "unsupported version " + std::to_string(version));
  Experiment e;
  e.mode = as_mode(require(doc, "mode", "config"));
  if (doc.contains("name")) e.name = as_string(doc["name"], "name");
  e.n = as_int(require(doc, "n", "config"), "n");
  if (e.n == 2) throw UnsupportedDimension("n = 2 is not supported (the kernel |x-y|^{2-n} degenerates)");
  if (e.n < 3 || e.n > 6) throw UnsupportedDimension("n must lie in 3..6");
  if (e.mode != Mode::Identities && e.n > 4) throw UnsupportedDimension("integral modes support n = 3 and n = 4");
  e.r = doc.contains("r") ? as_int(doc["r"], "r") : 1;
  if (e.r < 0 || e.r > e.n) fail("r", "degree out of range");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
    e.seed = doc["seed"].get<std::uint64_t>();
  }
  const double tol = doc.contains("tolerance") ? as_number(doc["tolerance"], "tolerance") : 1e-6;
  SurfacePtr surface;
  if (doc.contains("surface")) surface = as_surface(doc["surface"], e.n, "surface");
  const json& cases = require(doc, "cases", "config");
  if (!cases.is_array()) fail("cases", "expected an array");
  for (std::size_t k = 0; k < cases.size(); ++k)
    e.cases.push_back(parse_case(cases[k], e, surface, tol, "cases[" + std::to_string(k) + "]"));
  return e;
}

Experiment load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

}  // namespace hdual::cli
