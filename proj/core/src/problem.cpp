#include "funcmodel/problem.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace funcmodel {
namespace {

using nlohmann::json;

cplx parse_complex(const json& v, const std::string& what) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw InputError(what + ": expected a number or [re, im]");
}

CMatrix parse_matrix(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty() || !v[0].is_array()) {
    throw InputError(what + ": expected a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(v.size());
  const auto cols = static_cast<Eigen::Index>(v[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InputError(what + ": ragged rows");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = parse_complex(row[static_cast<std::size_t>(j)], what);
    }
  }
  return m;
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw InputError(what + ": expected a number");
  return v.get<double>();
}

// Profile (1 - t^2)^bump * sum_i poly[i] x^i with t the position mapped to [-1, 1].
CVector profile_values(const json& p, const QuadratureRule& rule, double lo, double hi) {
  const int bump = p.value("bump", 2);
  if (bump < 0) throw InputError("profile: bump must be non-negative");
  const json& poly = require(p, "poly", "profile");
  if (!poly.is_array() || poly.empty()) throw InputError("profile: poly must be non-empty");
  std::vector<cplx> c;
  for (const auto& e : poly) c.push_back(parse_complex(e, "profile poly"));
  CVector out(rule.nodes.size());
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    const double x = rule.nodes(j);
    const double t = (2.0 * x - lo - hi) / (hi - lo);
    cplx acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    out(j) = std::pow(1.0 - t * t, bump) * acc;
  }
  return out;
}

KappaParameter::Preset parse_preset(const std::string& s) {
  using P = KappaParameter::Preset;
  if (s == "zero") return P::Zero;
  if (s == "iI") return P::PlusI;
  if (s == "-iI") return P::MinusI;
  if (s == "iJ") return P::IJ;
  if (s == "custom") return P::Custom;
  throw InputError("kappa: unknown preset '" + s + "'");
}

std::vector<double> parse_ladder(const json& v) {
  if (!v.is_array()) throw InputError("boundary: eps_ladder must be an array");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(number(e, "eps_ladder"));
  return out;
}

}  // namespace

std::string fnv_digest(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Problem parse_problem(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("problem file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("problem file must be a JSON object");
  Problem pr;
  try {
    pr.name = doc.value("name", std::string("unnamed"));
    if (doc.contains("seed")) {
      const json& s = doc.at("seed");
      if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
        throw InputError("seed must be a non-negative integer");
      }
      pr.seed = s.get<std::uint64_t>();
    }

    const json& b = require(doc, "backend", "problem");
    const std::string type = require(b, "type", "backend").get<std::string>();
    std::optional<QuadratureRule> rule;
    double lo = 0.0, hi = 0.0;
    if (type == "matrix") {
      pr.family.backend = MatrixBackendSpec{parse_matrix(require(b, "A", "backend"), "A")};
    } else if (type == "friedrichs") {
      FriedrichsBackendSpec fs;
      fs.lo = number(require(b, "lo", "backend"), "lo");
      fs.hi = number(require(b, "hi", "backend"), "hi");
      if (!(fs.lo < fs.hi)) throw InputError("friedrichs: need lo < hi");
      if (b.contains("nodes") && b.contains("weights")) {
        QuadratureRule r;
        const auto& xs = b.at("nodes");
        const auto& ws = b.at("weights");
        if (!xs.is_array() || !ws.is_array() || xs.size() != ws.size() || xs.empty()) {
          throw InputError("friedrichs: nodes and weights must be arrays of equal length");
        }
        r.nodes.resize(static_cast<Eigen::Index>(xs.size()));
        r.weights.resize(static_cast<Eigen::Index>(ws.size()));
        for (std::size_t i = 0; i < xs.size(); ++i) {
          r.nodes(static_cast<Eigen::Index>(i)) = number(xs[i], "node");
          r.weights(static_cast<Eigen::Index>(i)) = number(ws[i], "weight");
        }
        fs.rule = r;
        fs.nodes = static_cast<int>(xs.size());
      } else {
        fs.nodes = b.value("nodes", 512);
        if (fs.nodes < 2) throw InputError("friedrichs: need at least two nodes");
        fs.rule = gauss_legendre(fs.nodes, fs.lo, fs.hi);
      }
      rule = fs.rule;
      lo = fs.lo;
      hi = fs.hi;
      pr.family.backend = fs;
    } else {
      throw InputError("backend: unknown type '" + type + "'");
    }

    const json& a = require(doc, "alpha", "problem");
    if (a.contains("dense")) {
      pr.family.alpha = DenseAlphaSpec{parse_matrix(a.at("dense"), "alpha.dense")};
    } else if (a.contains("V")) {
      pr.family.alpha = PotentialAlphaSpec{parse_matrix(a.at("V"), "alpha.V")};
    } else if (a.contains("profiles")) {
      if (!rule) throw InputError("alpha.profiles needs the friedrichs backend");
      ProfileAlphaSpec ps;
      for (const auto& p : a.at("profiles")) ps.profiles.push_back(profile_values(p, *rule, lo, hi));
      ps.m = parse_matrix(require(a, "m", "alpha"), "alpha.m");
      pr.family.alpha = ps;
    } else if (a.contains("Q")) {
      pr.family.alpha =
          FactoredAlphaSpec{parse_matrix(a.at("Q"), "alpha.Q"), parse_matrix(require(a, "m", "alpha"), "alpha.m")};
    } else {
      throw InputError("alpha: expected one of dense, Q/m, V, profiles/m");
    }
    pr.family.tol_rank = a.value("tol_rank", 1e-10);

    const json& k = require(doc, "kappa", "problem");
    pr.family.kappa.preset = parse_preset(require(k, "preset", "kappa").get<std::string>());
    if (k.contains("J")) pr.family.kappa.j = parse_matrix(k.at("J"), "kappa.J");
    if (k.contains("matrix")) pr.family.kappa.matrix = parse_matrix(k.at("matrix"), "kappa.matrix");

    if (doc.contains("grid")) {
      const json& g = doc.at("grid");
      pr.grid.n = g.value("N", pr.grid.n);
      pr.grid.scale = g.value("scale", pr.grid.scale);
    }
    if (doc.contains("boundary")) {
      const json& bd = doc.at("boundary");
      if (bd.contains("eps_ladder")) pr.boundary.eps_ladder = parse_ladder(bd.at("eps_ladder"));
      pr.boundary.extrapolation_order = bd.value("order", pr.boundary.extrapolation_order);
      const std::string method = bd.value("method", std::string("ladder"));
      if (method == "ladder") {
        pr.boundary.method = BoundaryValueSettings::Method::Ladder;
      } else if (method == "plemelj") {
        pr.boundary.method = BoundaryValueSettings::Method::Plemelj;
      } else {
        throw InputError("boundary: unknown method '" + method + "'");
      }
    }
    if (doc.contains("tolerances")) {
      for (const auto& [key, val] : doc.at("tolerances").items()) {
        const double t = number(val, "tolerance " + key);
        if (!(t > 0.0)) throw InputError("tolerance " + key + " must be positive");
        pr.tolerances[key] = t;
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("problem file: ") + e.what());
  }

  pr.boundary.validate();
  if (pr.grid.n < 256 || (pr.grid.n & (pr.grid.n - 1)) != 0) {
    throw InputError("grid: N must be a power of two >= 256");
  }
  if (!(pr.grid.scale > 0.0)) throw InputError("grid: scale must be positive");
  build_family(pr.family);
  pr.canonical = doc.dump();
  return pr;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

}  // namespace funcmodel
