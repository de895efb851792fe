#pragma once

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "midpoint_lab/constructions/face.hpp"
#include "midpoint_lab/norms/norm_oracle.hpp"

namespace mlab {

/// Planar drawing data. Coordinates are in the plane of the section.
struct SvgSection {
  std::string title;
  std::vector<std::vector<VecD>> sphere;    // closed curves: unit-sphere section
  std::vector<std::vector<VecD>> outlines;  // closed polygons: faces, homothets
  std::vector<std::string> outline_labels;
  std::vector<VecD> points;
  std::vector<VecD> midpoints;
};

/// Deterministic SVG: axes, sphere section, outlines, points (filled) and midpoints (open).
inline std::string render_svg(const SvgSection& s, int size = 480) {
  double r = 1;
  auto grow = [&](const VecD& p) { r = std::max({r, std::fabs(p[0]), std::fabs(p[1])}); };
  for (const auto& c : s.sphere) for (const auto& p : c) grow(p);
  for (const auto& c : s.outlines) for (const auto& p : c) grow(p);
  for (const auto& p : s.points) grow(p);
  r *= 1.1;
  const double half = size / 2.0;
  auto X = [&](double x) { return format_double(std::round((half + x / r * half) * 100) / 100); };
  auto Y = [&](double y) { return format_double(std::round((half - y / r * half) * 100) / 100); };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
    << size << " " << size << "\">\n";
  if (!s.title.empty()) o << "  <title>" << s.title << "</title>\n";
  o << "  <g id=\"axes\" stroke=\"#bbbbbb\" stroke-width=\"1\">\n"
    << "    <line x1=\"0\" y1=\"" << half << "\" x2=\"" << size << "\" y2=\"" << half << "\"/>\n"
    << "    <line x1=\"" << half << "\" y1=\"0\" x2=\"" << half << "\" y2=\"" << size << "\"/>\n  </g>\n";
  auto poly = [&](const std::vector<VecD>& c, const std::string& style, const std::string& label) {
    o << "    <polygon" << (label.empty() ? "" : " class=\"" + label + "\"") << " points=\"";
    for (std::size_t i = 0; i < c.size(); ++i) o << (i ? " " : "") << X(c[i][0]) << "," << Y(c[i][1]);
    o << "\" " << style << "/>\n";
  };
  o << "  <g id=\"sphere\">\n";
  for (const auto& c : s.sphere) poly(c, "fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\"", "");
  o << "  </g>\n  <g id=\"outlines\">\n";
  for (std::size_t k = 0; k < s.outlines.size(); ++k)
    poly(s.outlines[k], "fill=\"none\" stroke=\"#7a7a7a\" stroke-dasharray=\"4 3\"",
         k < s.outline_labels.size() ? s.outline_labels[k] : "");
  o << "  </g>\n  <g id=\"points\" fill=\"#c0392b\">\n";
  for (const auto& p : s.points) o << "    <circle cx=\"" << X(p[0]) << "\" cy=\"" << Y(p[1]) << "\" r=\"4\"/>\n";
  o << "  </g>\n  <g id=\"midpoints\" fill=\"white\" stroke=\"#27ae60\" stroke-width=\"1.5\">\n";
  for (const auto& p : s.midpoints) o << "    <circle cx=\"" << X(p[0]) << "\" cy=\"" << Y(p[1]) << "\" r=\"3\"/>\n";
  o << "  </g>\n</svg>\n";
  return o.str();
}

/// Writes the SVG; throws std::runtime_error if the path is not writable.
inline void emit_svg(const SvgSection& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << render_svg(s);
  if (!out) throw std::runtime_error("cannot write " + path);
}

inline std::vector<VecD> midpoints_of(const std::vector<VecD>& pts) {
  std::vector<VecD> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) out.push_back(midpoint(pts[i], pts[j]));
  return out;
}

/// Unit sphere of a 2-dimensional norm with an M-set and its midpoints.
inline SvgSection section_2d(const NormOracle& norm, const std::vector<VecD>& pts, std::size_t samples = 360) {
  if (norm.dim() != 2) throw std::invalid_argument("section_2d needs a 2-dimensional norm");
  SvgSection s;
  s.title = "unit sphere section";
  std::vector<VecD> curve;
  for (std::size_t k = 0; k < samples; ++k) {
    const double a = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
    VecD d{std::cos(a), std::sin(a)};
    curve.push_back(d / norm.gauge(d));
  }
  s.sphere.push_back(std::move(curve));
  s.points = pts;
  s.midpoints = midpoints_of(pts);
  return s;
}

/// Face construction in the plane of its 2-face: P, −P, the homothets P_i, their
/// common region and the shifted points, all projected linearly onto span(u, v).
inline SvgSection section_face(const FaceConstruction& fc) {
  if (!fc.face_polygon) throw std::invalid_argument("section_face needs a 2-face construction");
  const auto& poly = *fc.face_polygon;
  const VecD u = vec_cast<double>(poly.u), v = vec_cast<double>(poly.v);
  const double uu = dot(u, u), uv = dot(u, v), vv = dot(v, v), det = uu * vv - uv * uv;
  auto proj = [&](const VecD& p) {
    const double a = dot(p, u), b = dot(p, v);
    return VecD{(vv * a - uv * b) / det, (uu * b - uv * a) / det};
  };
  auto outline = [&](const PlanePolygon<Rational>& pg) {
    std::vector<VecD> c;
    for (const auto& q : pg.vertices_2d) c.push_back(proj(vec_cast<double>(pg.to_ambient(q))));
    return c;
  };
  SvgSection s;
  s.title = "face construction plane";
  auto P = outline(poly);
  std::vector<VecD> negP;
  for (const auto& p : P) negP.push_back(-p);
  s.sphere = {P, negP};
  for (const auto& h : fc.homothets) {
    s.outlines.push_back(outline(h));
    s.outline_labels.push_back("homothet");
  }
  if (fc.helly_region && !fc.helly_region->polygon.vertices_2d.empty()) {
    s.outlines.push_back(outline(fc.helly_region->polygon));
    s.outline_labels.push_back("common-region");
  }
  for (const auto& p : fc.candidate.points) s.points.push_back(proj(p));
  s.midpoints = midpoints_of(s.points);
  return s;
}

}  // namespace mlab
