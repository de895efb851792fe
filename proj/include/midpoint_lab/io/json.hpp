#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>
#include "midpoint_lab/constructions/candidate.hpp"
#include "midpoint_lab/norms/operations.hpp"
#include "midpoint_lab/search/bounds.hpp"
#include "midpoint_lab/search/numeric_search.hpp"
#include "midpoint_lab/verify/certify.hpp"
#include "midpoint_lab/verify/structure.hpp"

namespace mlab {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Malformed or inconsistent input (bad syntax, unknown fields, wrong shapes).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses JSON text; syntax errors report line and column.
inline json parse_json_text(const std::string& text, const std::string& source = "<input>") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON: " + msg);
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

namespace jsonio {

inline void require_object(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw InputError(ctx + ": expected a JSON object");
}

inline void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& ctx) {
  require_object(j, ctx);
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) throw InputError(ctx + ": unknown field \"" + k + "\"");
}

inline void check_schema(const json& j, const std::string& ctx, bool required) {
  if (!j.contains("schema")) {
    if (required) throw InputError(ctx + ": missing \"schema\" field");
    return;
  }
  if (!j["schema"].is_number_integer() || j["schema"].get<int>() != kSchemaVersion)
    throw InputError(ctx + ": unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
}

inline const json& field(const json& j, const char* key, const std::string& ctx) {
  if (!j.contains(key)) throw InputError(ctx + ": missing field \"" + key + "\"");
  return j[key];
}

inline Rational to_rational(const json& v, const std::string& ctx) {
  try {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (!std::isfinite(d)) throw InputError(ctx + ": non-finite number");
      return parse_rational(format_double(d));
    }
    if (v.is_string()) return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(ctx + ": " + e.what());
  }
  throw InputError(ctx + ": expected a number or a rational string");
}

inline double to_double(const json& v, const std::string& ctx) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    return to_rational(v, ctx).get_d();
  }
  throw InputError(ctx + ": expected a number");
}

// Exact when every entry is an integer or a string.
inline bool exact_entries(const json& v) {
  if (v.is_array()) {
    for (const auto& e : v)
      if (!exact_entries(e)) return false;
    return true;
  }
  return v.is_number_integer() || v.is_string();
}

inline VecQ to_vecq(const json& v, const std::string& ctx, std::optional<std::size_t> dim = {}) {
  if (!v.is_array() || v.empty()) throw InputError(ctx + ": expected a non-empty array of coordinates");
  if (dim && v.size() != *dim)
    throw InputError(ctx + ": dimension mismatch (expected " + std::to_string(*dim) + ", got " +
                     std::to_string(v.size()) + ")");
  VecQ out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_rational(v[i], ctx);
  return out;
}

inline VecD to_vecd(const json& v, const std::string& ctx, std::optional<std::size_t> dim = {}) {
  if (!v.is_array() || v.empty()) throw InputError(ctx + ": expected a non-empty array of coordinates");
  if (dim && v.size() != *dim)
    throw InputError(ctx + ": dimension mismatch (expected " + std::to_string(*dim) + ", got " +
                     std::to_string(v.size()) + ")");
  VecD out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i], ctx);
  return out;
}

template <class F>
auto to_list(const json& v, const std::string& ctx, F&& each) {
  if (!v.is_array() || v.empty()) throw InputError(ctx + ": expected a non-empty array");
  std::vector<decltype(each(v[0], std::size_t{0}))> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(each(v[i], i));
  return out;
}

inline MatrixD to_matrix(const json& v, const std::string& ctx) {
  auto rows = to_list(v, ctx, [&](const json& r, std::size_t) { return to_vecd(r, ctx); });
  for (const auto& r : rows)
    if (r.dim() != rows[0].dim()) throw InputError(ctx + ": ragged matrix");
  return MatrixD::from_rows(rows);
}

inline json from_vecq(const VecQ& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(c.get_den() == 1 ? c.get_num().get_str() : format_rational(c));
  return a;
}

inline json from_vecd(const VecD& v) {
  json a = json::array();
  for (double c : v) a.push_back(c);
  return a;
}

inline json from_matrix(const MatrixD& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(from_vecd(m.row(i)));
  return a;
}

}  // namespace jsonio

/// Norm description: {"kind": ..., kind-specific fields}. "schema" is required at top level.
inline NormOracle norm_from_json(const json& j, bool top_level = true) {
  using namespace jsonio;
  const std::string ctx = "norm";
  require_object(j, ctx);
  check_schema(j, ctx, top_level);
  const auto kind = field(j, "kind", ctx);
  if (!kind.is_string()) throw InputError("norm: \"kind\" must be a string");
  const auto k = kind.get<std::string>();
  std::optional<std::size_t> dim;
  if (j.contains("dim")) {
    if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() < 1)
      throw InputError("norm: \"dim\" must be a positive integer");
    dim = j["dim"].get<std::size_t>();
  }
  auto check_dim = [&](const NormOracle& n) {
    if (dim && *dim != n.dim()) throw InputError("norm: dimension mismatch between \"dim\" and the data");
    return n;
  };
  try {
    if (k == "lp") {
      check_keys(j, {"schema", "kind", "dim", "p"}, ctx);
      if (!dim) throw InputError("norm: lp needs \"dim\"");
      return NormOracle::lp(*dim, to_double(field(j, "p", ctx), "norm.p"));
    }
    if (k == "cylinder") {
      check_keys(j, {"schema", "kind", "dim"}, ctx);
      return NormOracle::cylinder(dim.value_or(3));
    }
    if (k == "polytopal_h") {
      check_keys(j, {"schema", "kind", "dim", "normals", "offsets"}, ctx);
      auto normals = to_list(field(j, "normals", ctx), "norm.normals",
                             [&](const json& r, std::size_t) { return to_vecq(r, "norm.normals", dim); });
      auto offsets = to_list(field(j, "offsets", ctx), "norm.offsets",
                             [&](const json& r, std::size_t) { return to_rational(r, "norm.offsets"); });
      for (const auto& n : normals)
        if (n.dim() != normals[0].dim()) throw InputError("norm.normals: dimension mismatch");
      return check_dim(NormOracle::polytopal_h(normals, offsets));
    }
    if (k == "polytopal_v") {
      check_keys(j, {"schema", "kind", "dim", "vertices"}, ctx);
      auto verts = to_list(field(j, "vertices", ctx), "norm.vertices",
                           [&](const json& r, std::size_t) { return to_vecq(r, "norm.vertices", dim); });
      for (const auto& v : verts)
        if (v.dim() != verts[0].dim()) throw InputError("norm.vertices: dimension mismatch");
      return check_dim(NormOracle::polytopal_v(verts));
    }
    if (k == "ellipsoid_intersection") {
      check_keys(j, {"schema", "kind", "dim", "forms"}, ctx);
      auto forms = to_list(field(j, "forms", ctx), "norm.forms",
                           [&](const json& f, std::size_t) { return to_matrix(f, "norm.forms"); });
      return check_dim(NormOracle::ellipsoid_intersection(std::move(forms)));
    }
    if (k == "affine_image") {
      check_keys(j, {"schema", "kind", "dim", "map", "base"}, ctx);
      auto base = norm_from_json(field(j, "base", ctx), false);
      return check_dim(NormOracle::affine_image(to_matrix(field(j, "map", ctx), "norm.map"), base));
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("norm: ") + e.what());
  }
  throw InputError("norm: unknown kind \"" + k + "\"");
}

inline json norm_to_json(const NormOracle& n, bool top_level = true) {
  using namespace jsonio;
  json j;
  if (top_level) j["schema"] = kSchemaVersion;
  j["kind"] = to_string(n.kind());
  j["dim"] = n.dim();
  if (n.is<NormOracle::Lp>()) {
    const double p = n.lp_exponent();
    if (std::isinf(p)) j["p"] = "inf";
    else j["p"] = p;
  } else if (n.is<NormOracle::PolytopalH>()) {
    j["normals"] = json::array();
    for (const auto& g : n.as<NormOracle::PolytopalH>().functionals) j["normals"].push_back(from_vecq(g));
    j["offsets"] = json::array();
    for (std::size_t k = 0; k < n.as<NormOracle::PolytopalH>().functionals.size(); ++k) j["offsets"].push_back(1);
  } else if (n.is<NormOracle::PolytopalV>()) {
    j["vertices"] = json::array();
    for (const auto& v : n.as<NormOracle::PolytopalV>().vertices) j["vertices"].push_back(from_vecq(v));
  } else if (n.is<NormOracle::Ellipsoids>()) {
    j["forms"] = json::array();
    for (const auto& f : n.as<NormOracle::Ellipsoids>().forms) j["forms"].push_back(from_matrix(f));
  } else if (n.is<NormOracle::Affine>()) {
    j["map"] = from_matrix(n.as<NormOracle::Affine>().map);
    j["base"] = norm_to_json(*n.as<NormOracle::Affine>().base, false);
  }
  return j;
}

struct PointsInput {
  std::vector<VecD> points;
  std::optional<std::vector<VecQ>> exact_points;
  std::optional<NormOracle> norm;  // present in construct output
};

/// Point-set file: {"schema": 1, "points": [[...]], ...}; construct output is accepted as is.
inline PointsInput points_from_json(const json& j) {
  using namespace jsonio;
  const std::string ctx = "points";
  check_keys(j, {"schema", "points", "exact_points", "norm", "provenance", "certificate"}, ctx);
  check_schema(j, ctx, true);
  PointsInput in;
  const auto& pts = field(j, "points", ctx);
  in.points = to_list(pts, "points", [&](const json& r, std::size_t) { return to_vecd(r, "points"); });
  for (const auto& p : in.points)
    if (p.dim() != in.points[0].dim()) throw InputError("points: dimension mismatch between points");
  const json* exact = j.contains("exact_points") ? &j["exact_points"] : (exact_entries(pts) ? &pts : nullptr);
  if (exact) {
    in.exact_points = to_list(*exact, "exact_points", [&](const json& r, std::size_t) {
      return to_vecq(r, "exact_points", in.points[0].dim());
    });
    if (in.exact_points->size() != in.points.size())
      throw InputError("exact_points: count differs from points");
  }
  if (j.contains("norm")) in.norm = norm_from_json(j["norm"], false);
  return in;
}

inline json provenance_to_json(const Provenance& p) {
  json j;
  j["method"] = p.method;
  j["params"] = json::object();
  for (const auto& [k, v] : p.params) j["params"][k] = v;
  return j;
}

inline json certificate_to_json(const MSetCertificate& c) {
  json j;
  j["verdict"] = to_string(c.verdict);
  j["mode"] = c.exact ? "exact" : "float";
  j["min_excess"] = c.min_excess;
  if (c.exact_min_excess) j["exact_min_excess"] = *c.exact_min_excess;
  j["max_midpoint_residual"] = c.max_midpoint_residual;
  j["reason"] = c.reason;
  j["point_gauges"] = c.point_gauges;
  j["midpoint_gauges"] = json::array();
  for (const auto& m : c.midpoint_gauges) j["midpoint_gauges"].push_back({{"i", m.i}, {"j", m.j}, {"gauge", m.gauge}});
  if (c.witness_point) j["witness_point"] = *c.witness_point;
  if (c.witness_pair) j["witness_pair"] = {c.witness_pair->first, c.witness_pair->second};
  return j;
}

inline json candidate_to_json(const MSetCandidate& c, const MSetCertificate& cert) {
  using namespace jsonio;
  json j;
  j["schema"] = kSchemaVersion;
  j["points"] = json::array();
  for (const auto& p : c.points) j["points"].push_back(from_vecd(p));
  if (c.exact_points) {
    j["exact_points"] = json::array();
    for (const auto& p : *c.exact_points) j["exact_points"].push_back(from_vecq(p));
  }
  j["norm"] = norm_to_json(c.norm, false);
  j["provenance"] = provenance_to_json(c.provenance);
  j["certificate"] = certificate_to_json(cert);
  return j;
}

/// Polytope file: {"schema": 1, "vertices": [[...]], "facets": [...], "dim": n}.
/// Facets are recomputed from the vertices; given ones must match.
inline Polytope<Rational> polytope_from_json(const json& j) {
  using namespace jsonio;
  const std::string ctx = "polytope";
  check_keys(j, {"schema", "vertices", "facets", "dim"}, ctx);
  check_schema(j, ctx, true);
  auto verts = to_list(field(j, "vertices", ctx), "polytope.vertices",
                       [&](const json& r, std::size_t) { return to_vecq(r, "polytope.vertices"); });
  for (const auto& v : verts)
    if (v.dim() != verts[0].dim()) throw InputError("polytope.vertices: dimension mismatch");
  auto P = convex_hull(verts);
  if (j.contains("dim")) {
    if (!j["dim"].is_number_integer() || j["dim"].get<int>() != P.dim)
      throw InputError("polytope: \"dim\" does not match the vertices (hull dimension " + std::to_string(P.dim) + ")");
  }
  if (j.contains("facets")) {
    const auto& fs = j["facets"];
    if (!fs.is_array()) throw InputError("polytope.facets: expected an array");
    for (const auto& f : fs) {
      check_keys(f, {"normal", "offset"}, "polytope.facets");
      VecQ n = to_vecq(field(f, "normal", "polytope.facets"), "polytope.facets.normal", verts[0].dim());
      Rational off = to_rational(field(f, "offset", "polytope.facets"), "polytope.facets.offset");
      std::size_t tight = 0;
      for (const auto& v : P.vertices) {
        const Rational s = dot(n, v);
        if (s > off) throw InputError("polytope.facets: a vertex violates a listed facet");
        if (s == off) ++tight;
      }
      if (tight < static_cast<std::size_t>(std::max(P.dim, 1)))
        throw InputError("polytope.facets: listed inequality is not a facet");
    }
  }
  return P;
}

template <class T>
json polytope_to_json(const Polytope<T>& P) {
  using namespace jsonio;
  json j;
  j["schema"] = kSchemaVersion;
  j["dim"] = P.dim;
  j["vertices"] = json::array();
  for (const auto& v : P.vertices) {
    if constexpr (is_exact_v<T>) j["vertices"].push_back(from_vecq(v));
    else j["vertices"].push_back(from_vecd(v));
  }
  j["facets"] = json::array();
  for (const auto& f : P.facets) {
    json fj;
    if constexpr (is_exact_v<T>) {
      fj["normal"] = from_vecq(f.normal);
      fj["offset"] = f.offset.get_den() == 1 ? f.offset.get_num().get_str() : format_rational(f.offset);
    } else {
      fj["normal"] = from_vecd(f.normal);
      fj["offset"] = f.offset;
    }
    j["facets"].push_back(fj);
  }
  return j;
}

inline json bounds_to_json(const BoundsReport& r) {
  auto one = [](const Bound& b) {
    json j;
    j["value"] = b.infinite ? json("infinite") : json(b.value);
    j["source"] = b.source;
    j["certified"] = b.certified;
    return j;
  };
  json j;
  j["schema"] = kSchemaVersion;
  j["lower"] = json::array();
  for (const auto& b : r.lower) j["lower"].push_back(one(b));
  j["upper"] = json::array();
  for (const auto& b : r.upper) j["upper"].push_back(one(b));
  j["m_exact"] = r.m_exact ? one(*r.m_exact) : json(nullptr);
  j["consistency"] = r.consistency;
  if (r.witness_face) j["witness_face"] = r.witness_face->vertex_indices;
  j["notes"] = r.notes;
  return j;
}

inline json search_to_json(const SearchConfig& cfg, const SearchResult& r) {
  using namespace jsonio;
  json j;
  j["schema"] = kSchemaVersion;
  j["config"] = {{"m", cfg.m},
                 {"restarts", cfg.restarts},
                 {"seed", cfg.seed},
                 {"eps_target", cfg.eps_target},
                 {"max_iters", cfg.max_iters},
                 {"hinge_weight", cfg.hinge_weight}};
  j["found"] = r.certificate.has_value();
  j["residual"] = r.residual;
  j["best_restart"] = r.best_restart;
  j["evidence_of_impossibility"] = r.evidence_of_impossibility;
  j["best_points"] = json::array();
  for (const auto& p : r.best_points) j["best_points"].push_back(from_vecd(p));
  if (r.certificate) j["certificate"] = certificate_to_json(*r.certificate);
  j["trace"] = json::array();
  for (const auto& t : r.trace)
    j["trace"].push_back({{"restart", t.restart},
                          {"seed", t.seed},
                          {"residual", t.residual},
                          {"iterations", t.iterations},
                          {"certified", t.certified}});
  return j;
}

template <class T>
json structure_to_json(const StructureReport<T>& r) {
  json j;
  j["hull_dim"] = r.hull.dim;
  j["convex_position"] = r.convex_position;
  j["non_vertices"] = r.non_vertices;
  j["pairs"] = json::array();
  for (const auto& p : r.pairs)
    j["pairs"].push_back({{"i", p.i}, {"j", p.j}, {"kind", to_string(p.kind)}, {"face_dim", p.face_dim}});
  j["flat_spots"] = json::array();
  for (const auto& f : r.flat_spots) {
    json fj{{"i", f.i}, {"j", f.j}, {"face_dim", f.face_dim}, {"confirmed", f.check.ok},
            {"samples", f.check.samples}, {"max_deviation", f.check.max_deviation}};
    if (!f.error.empty()) fj["error"] = f.error;
    j["flat_spots"].push_back(fj);
  }
  j["polytope_class"] = to_string(r.polytope_class.cls);
  return j;
}

}  // namespace mlab
