#pragma once

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "midpoint_lab.hpp"

namespace mlab::cli {

/// Exit codes: success/certified, refuted/not found, input error.
enum Exit : int { kOk = 0, kNegative = 1, kInput = 2 };

struct CommandSpec {
  std::string subcommand;
  std::string method;
  std::string norm_path, points_path, polytope_path, out_path, svg_path;
  std::string format = "json";
  bool exact = false;
  bool strictly_convex = false;
  bool literal = false;
  std::optional<double> tol, strict_margin;
  std::uint64_t seed = 7;
  std::size_t restarts = 100, m = 5, d = 3, n = 6, N = 50;
  std::optional<std::size_t> face;
  double theta = 0, lambda = 0.5, eps = 0.1;
};

namespace detail {

inline ToleranceBudget budget(const CommandSpec& s) {
  ToleranceBudget t;
  if (s.tol) t.eq_tol = *s.tol;
  if (s.strict_margin) t.strict_margin = *s.strict_margin;
  if (!(t.eq_tol > 0) || !(t.strict_margin > t.eq_tol))
    throw InputError("tolerances must satisfy 0 < tol < strict-margin");
  return t;
}

inline void write(const CommandSpec& s, const std::string& text, std::ostream& out) {
  if (s.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(s.out_path);
  if (!f) throw InputError("cannot write " + s.out_path);
  f << text;
}

inline std::string points_csv(const std::vector<VecD>& pts) {
  std::ostringstream o;
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < p.dim(); ++i) o << (i ? "," : "") << format_double(p[i]);
    o << "\n";
  }
  return o.str();
}

inline NormOracle load_norm(const CommandSpec& s) {
  if (s.norm_path.empty()) throw InputError("--norm is required");
  return norm_from_json(read_json_file(s.norm_path));
}

inline std::optional<Face> pick_face(const Polytope<Rational>& P, int dim, std::optional<std::size_t> index) {
  if (dim < 0 || static_cast<std::size_t>(dim) >= P.faces.size()) return std::nullopt;
  const auto& level = P.faces[dim];
  if (index) {
    if (*index >= level.size())
      throw InputError("--face index " + std::to_string(*index) + " out of range (" + std::to_string(level.size()) +
                       " faces)");
    return level[*index];
  }
  std::optional<Face> best;
  for (const auto& f : level)
    if (!best || f.vertex_indices.size() > best->vertex_indices.size()) best = f;
  return best;
}

inline int emit_candidate(const CommandSpec& s, const MSetCandidate& c, std::ostream& out,
                          const std::optional<SvgSection>& svg) {
  const auto cert = certify_mset(c, budget(s));
  if (!s.svg_path.empty()) {
    if (!svg) throw InputError("--svg is available for 2-dimensional norms and 2-face constructions");
    try {
      emit_svg(*svg, s.svg_path);
    } catch (const std::runtime_error& e) {
      throw InputError(e.what());
    }
  }
  if (s.format == "csv") write(s, points_csv(c.points), out);
  else write(s, candidate_to_json(c, cert).dump(2) + "\n", out);
  return cert.certified() ? kOk : kNegative;
}

inline int construct(const CommandSpec& s, std::ostream& out) {
  const auto& m = s.method;
  auto tol = budget(s);
  if (m == "l2simplex") return emit_candidate(s, mset_l2_simplex(s.d), out, std::nullopt);
  if (m == "linf") return emit_candidate(s, mset_linf(s.d, s.literal), out, std::nullopt);
  if (m == "moment") return emit_candidate(s, mset_moment_curve(s.n, {}, tol).candidate, out, std::nullopt);
  if (m == "infinite") {
    auto norm = s.norm_path.empty() ? NormOracle::cylinder(3) : load_norm(s);
    if (!norm.is<NormOracle::Cylinder>() || norm.dim() != 3)
      throw InputError("construct infinite needs the 3-dimensional cylinder norm");
    return emit_candidate(s, infinite_family(norm, s.N, cylinder_top_arc(), tol).candidate, out, std::nullopt);
  }
  auto norm = load_norm(s);
  if (m == "hexagon2d") {
    if (norm.dim() != 2) throw InputError("construct hexagon2d needs a 2-dimensional norm");
    auto h = mset_2d(norm, s.theta, tol);
    return emit_candidate(s, h.candidate, out, section_2d(norm, h.candidate.points));
  }
  if (m == "any3d") {
    if (norm.dim() != 3) throw InputError("construct any3d needs a 3-dimensional norm");
    return emit_candidate(s, mset_any_3d(norm, s.lambda).candidate, out, std::nullopt);
  }
  if (!norm.polytopal()) throw InputError("construct " + m + " needs a polytopal norm");
  auto P = unit_ball(norm);
  if (!P.has_lattice()) throw InputError("construct " + m + " needs a unit ball of dimension at most 4");
  if (m == "face") {
    if (norm.dim() != 3) throw InputError("construct face needs a 3-dimensional norm");
    auto f = pick_face(P, 2, s.face);
    auto fc = mset_from_face(norm, *f);
    return emit_candidate(s, fc.candidate, out, section_face(fc));
  }
  if (m == "centroids") {
    auto f = pick_face(P, P.dim - 1, s.face);
    return emit_candidate(s, mset_facet_centroids(norm, *f).candidate, out, std::nullopt);
  }
  if (m == "simplexplus") {
    std::optional<Face> f;
    if (s.face) {
      f = pick_face(P, P.dim - 1, s.face);
    } else {
      for (const auto& g : P.faces[P.dim - 1])
        if (g.vertex_indices.size() == static_cast<std::size_t>(P.dim)) {
          f = g;
          break;
        }
    }
    if (!f || f->vertex_indices.size() != static_cast<std::size_t>(P.dim))
      throw InputError("construct simplexplus needs a simplex facet");
    return emit_candidate(s, mset_simplex_plus(norm, *f).candidate, out, std::nullopt);
  }
  throw InputError("unknown construction " + m);
}

inline int verify(const CommandSpec& s, std::ostream& out) {
  if (s.points_path.empty()) throw InputError("--points is required");
  auto in = points_from_json(read_json_file(s.points_path));
  std::optional<NormOracle> norm;
  if (!s.norm_path.empty()) norm = load_norm(s);
  else norm = in.norm;
  if (!norm) throw InputError("--norm is required (the points file carries no norm)");
  if (in.points[0].dim() != norm->dim())
    throw InputError("dimension mismatch: points have dimension " + std::to_string(in.points[0].dim()) +
                     ", norm has dimension " + std::to_string(norm->dim()));
  if (in.points.size() < 2) throw InputError("verify needs at least two points");
  auto tol = budget(s);
  MSetCertificate cert;
  if (s.exact) {
    if (!in.exact_points || !norm->exact_capable())
      throw InputError("--exact needs rational points and a polytopal norm");
    cert = certify_mset_exact(*norm, *in.exact_points);
  } else if (in.exact_points && norm->exact_capable()) {
    cert = certify_mset_exact(*norm, *in.exact_points);
  } else {
    cert = certify_mset_float(*norm, in.points, tol);
  }
  if (!s.svg_path.empty()) {
    if (norm->dim() != 2) throw InputError("--svg is available for 2-dimensional norms");
    try {
      emit_svg(section_2d(*norm, in.points), s.svg_path);
    } catch (const std::runtime_error& e) {
      throw InputError(e.what());
    }
  }
  json j;
  j["schema"] = kSchemaVersion;
  j["certificate"] = certificate_to_json(cert);
  if (cert.certified()) {
    auto sep = separation_check(cert, *norm, tol);
    j["separation"] = {{"ok", sep.ok}, {"min_distance", sep.min_distance}, {"required", sep.required}};
    auto rep = in.exact_points ? structure_to_json(structure_report(*norm, *in.exact_points, tol))
                               : structure_to_json(structure_report(*norm, in.points, tol));
    j["structure"] = rep;
  }
  write(s, j.dump(2) + "\n", out);
  switch (cert.verdict) {
    case Verdict::certified: return kOk;
    case Verdict::refuted: return kNegative;
    case Verdict::indeterminate: return kInput;
  }
  return kInput;
}

inline int bounds(const CommandSpec& s, std::ostream& out) {
  auto norm = load_norm(s);
  auto r = bounds_report(norm, {s.strictly_convex, true});
  write(s, bounds_to_json(r).dump(2) + "\n", out);
  return r.consistency ? kOk : kNegative;
}

inline int search(const CommandSpec& s, std::ostream& out) {
  auto norm = load_norm(s);
  SearchConfig cfg;
  cfg.m = s.m;
  cfg.restarts = s.restarts;
  cfg.seed = s.seed;
  cfg.eps_target = s.eps;
  if (cfg.m < 2) throw InputError("-m must be at least 2");
  if (cfg.restarts < 1) throw InputError("--restarts must be at least 1");
  if (cfg.eps_target < budget(s).strict_margin) throw InputError("--eps must be at least the strict margin");
  auto r = numeric_search(norm, cfg);
  write(s, search_to_json(cfg, r).dump(2) + "\n", out);
  return r.certificate ? kOk : kNegative;
}

inline int classify(const CommandSpec& s, std::ostream& out) {
  if (s.polytope_path.empty()) throw InputError("--polytope is required");
  auto P = polytope_from_json(read_json_file(s.polytope_path));
  if (P.dim != 3) throw InputError("classify needs a 3-dimensional polytope (got dimension " + std::to_string(P.dim) + ")");
  auto c = classify_2an(P);
  json j;
  j["schema"] = kSchemaVersion;
  j["class"] = to_string(c.cls);
  j["vertices"] = P.vertices.size();
  j["facets"] = P.facets.size();
  if (c.separated_pair) j["separated_pair"] = {c.separated_pair->first, c.separated_pair->second};
  if (c.apex) j["apex"] = *c.apex;
  if (!c.detail.empty()) j["detail"] = c.detail;
  write(s, j.dump(2) + "\n", out);
  return c.cls == PolytopeClass::other ? kNegative : kOk;
}

struct DemoRow {
  std::string name;
  std::size_t expected = 0;
  std::size_t got = 0;
  std::string verdict;
  bool pass = false;
};

// Even-sided regular polygon (rounded to rational points) times [-1, 1].
inline NormOracle prism_norm(std::size_t sides) {
  std::vector<VecQ> v;
  for (std::size_t k = 0; k < sides; ++k) {
    const double a = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(sides);
    const Rational x = parse_rational(format_double(std::round(std::cos(a) * 1e6) / 1e6));
    const Rational y = parse_rational(format_double(std::round(std::sin(a) * 1e6) / 1e6));
    v.push_back(VecQ{x, y, Rational(1)});
    v.push_back(VecQ{x, y, Rational(-1)});
  }
  return NormOracle::polytopal_v(v);
}

inline std::vector<DemoRow> demo_rows() {
  std::vector<DemoRow> rows;
  auto add = [&](std::string name, std::size_t expected, const MSetCandidate& c, std::size_t slack = 0) {
    auto cert = certify_mset(c);
    rows.push_back({std::move(name), expected, c.size(), to_string(cert.verdict) + (cert.exact ? " (exact)" : ""),
                    cert.certified() && c.size() <= expected && c.size() + slack >= expected});
  };
  for (std::size_t d = 1; d <= 8; ++d) add("l2^" + std::to_string(d) + " simplex", d + 1, mset_l2_simplex(d));
  for (std::size_t d = 2; d <= 10; ++d) add("linf^" + std::to_string(d), 2 * d - 1, mset_linf(d));
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::string, NormOracle>> polys{{"cube", NormOracle::lp(3, inf)},
                                                        {"octahedron", NormOracle::lp(3, 1)},
                                                        {"hexagonal prism", prism_norm(6)},
                                                        {"octagonal prism", prism_norm(8)},
                                                        {"decagonal prism", prism_norm(10)}};
  for (const auto& [name, norm] : polys) {
    auto r = m_exact_3d(norm);
    auto fc = mset_from_face(norm, *r.witness_face);
    add(name + " (m = " + to_string(*r.m_exact) + ")", r.m_exact->value, fc.candidate);
  }
  for (std::size_t n = 2; n <= 10; ++n) {
    auto mc = mset_moment_curve(n);
    add("moment n=" + std::to_string(n), n, mc.candidate, 1);  // one point may fall inside the ball
  }
  return rows;
}

inline int demo(const CommandSpec& s, std::ostream& out) {
  auto rows = demo_rows();
  std::ostringstream o;
  bool all = true;
  o << std::left << std::setw(28) << "case" << std::setw(10) << "expected" << std::setw(8) << "size" << std::setw(22)
    << "verdict"
    << "result\n";
  for (const auto& r : rows) {
    all = all && r.pass;
    o << std::left << std::setw(28) << r.name << std::setw(10) << r.expected << std::setw(8) << r.got
      << std::setw(22) << r.verdict << (r.pass ? "PASS" : "FAIL") << "\n";
  }
  o << (all ? "all rows PASS\n" : "some rows FAIL\n");
  write(s, o.str(), out);
  return all ? kOk : kNegative;
}

}  // namespace detail

/// Parses argv and runs one subcommand. Never throws.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Construct, certify and search for M-sets in finite-dimensional normed spaces", "midpoint_lab"};
  app.require_subcommand(1, 1);
  CommandSpec s;

  auto add_common = [&](CLI::App* sc) {
    sc->add_option("--out", s.out_path, "Output file (default: stdout)");
    sc->add_option("--tol", s.tol, "Equality tolerance for float certification");
    sc->add_option("--strict-margin", s.strict_margin, "Required excess for float certification");
  };

  auto* construct = app.add_subcommand("construct", "Build and certify an M-set");
  construct
      ->add_option("method", s.method, "Construction")
      ->required()
      ->check(CLI::IsMember(
          {"hexagon2d", "any3d", "face", "l2simplex", "linf", "moment", "centroids", "simplexplus", "infinite"}));
  construct->add_option("--norm", s.norm_path, "Norm JSON");
  construct->add_option("-d,--dim", s.d, "Dimension (l2simplex, linf)");
  construct->add_option("-n", s.n, "Number of curve points (moment)");
  construct->add_option("-N", s.N, "Prefix length (infinite)");
  construct->add_option("--theta", s.theta, "Start angle (hexagon2d)");
  construct->add_option("--lambda", s.lambda, "Slice height in (1/3, 1) (any3d)");
  construct->add_option("--face", s.face, "Face index (face, centroids, simplexplus)");
  construct->add_flag("--literal", s.literal, "linf: use -2e_1 + e_d for every second-family point");
  construct->add_option("--svg", s.svg_path, "Write an SVG section");
  construct->add_option("--format", s.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  add_common(construct);

  auto* verify = app.add_subcommand("verify", "Certify a point set");
  verify->add_option("--norm", s.norm_path, "Norm JSON (default: the norm stored with the points)");
  verify->add_option("--points", s.points_path, "Point set JSON")->required();
  verify->add_flag("--exact", s.exact, "Require exact rational certification");
  verify->add_option("--svg", s.svg_path, "Write an SVG section (2-dimensional norms)");
  add_common(verify);

  auto* bounds = app.add_subcommand("bounds", "Bounds on the largest M-set size");
  bounds->add_option("--norm", s.norm_path, "Norm JSON")->required();
  bounds->add_flag("--strictly-convex", s.strictly_convex, "Assert that a 3-dimensional ball has no 2-face");
  add_common(bounds);

  auto* search = app.add_subcommand("search", "Numerical search for an M-set");
  search->add_option("--norm", s.norm_path, "Norm JSON")->required();
  search->add_option("-m", s.m, "Target size");
  search->add_option("--restarts", s.restarts, "Random restarts");
  search->add_option("--seed", s.seed, "Seed");
  search->add_option("--eps", s.eps, "Required excess of every point");
  add_common(search);

  auto* classify = app.add_subcommand("classify", "Prism / pyramid classification of a 3-polytope");
  classify->add_option("--polytope,polytope", s.polytope_path, "Polytope JSON")->required();
  add_common(classify);

  auto* demo = app.add_subcommand("demo", "Reproduce the table of known values");
  add_common(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  try {
    if (construct->parsed()) return detail::construct(s, out);
    if (verify->parsed()) return detail::verify(s, out);
    if (bounds->parsed()) return detail::bounds(s, out);
    if (search->parsed()) return detail::search(s, out);
    if (classify->parsed()) return detail::classify(s, out);
    if (demo->parsed()) return detail::demo(s, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNegative;
  }
  return kInput;
}

}  // namespace mlab::cli
