// Serialization and rendering: JSON schemas for nets, circle configurations
// and deformation traces, plus SVG emitters for the partition (stereographic
// projection) and for nets (force-relaxed planar layout, one stroke style per
// color).
#pragma once

#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sphquad/geometry.hpp"
#include "sphquad/net.hpp"

namespace sphquad {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Net JSON
// ---------------------------------------------------------------------------

// Schema: {"darts": N, "next": [...], "opp": [...], "color": [...],
//          "vertex_type": [...], "corner_labels": {"a0": dart, ...}}.
// vertex_type (per vertex: "corner" / "lateral" / "interior") is derived data
// written for readability; it is recomputed, not trusted, on load.
inline json net_to_json(const Net& g, NetKind kind = NetKind::Quadrilateral) {
  NetReport rep = validate_net(g, kind);
  json j;
  j["darts"] = g.n_darts();
  j["next"] = g.next;
  j["opp"] = g.opp;
  j["color"] = g.color;
  std::vector<std::string> vt;
  for (VertexType t : rep.vtype)
    vt.push_back(t == VertexType::Corner ? "corner"
                 : t == VertexType::Lateral ? "lateral"
                                            : "interior");
  j["vertex_type"] = vt;
  json corners = json::object();
  for (size_t i = 0; i < g.corner_darts.size(); ++i)
    corners["a" + std::to_string(i)] = g.corner_darts[i];
  j["corner_labels"] = corners;
  return j;
}

inline Net net_from_json(const json& j) {
  Net g;
  if (!j.contains("next") || !j.contains("opp") || !j.contains("color") ||
      !j.contains("corner_labels"))
    throw InvalidNet("net JSON missing a required field");
  g.next = j.at("next").get<std::vector<int>>();
  g.opp = j.at("opp").get<std::vector<int>>();
  g.color = j.at("color").get<std::vector<int>>();
  if (j.contains("darts") && j.at("darts").get<int>() != g.n_darts())
    throw InvalidNet("net JSON dart count disagrees with arrays");
  const json& corners = j.at("corner_labels");
  g.corner_darts.resize(corners.size());
  for (size_t i = 0; i < corners.size(); ++i) {
    std::string key = "a" + std::to_string(i);
    if (!corners.contains(key)) throw InvalidNet("corner_labels must be a0..a" +
                                                 std::to_string(corners.size() - 1));
    g.corner_darts[i] = corners.at(key).get<int>();
  }
  return g;
}

// ---------------------------------------------------------------------------
// Configuration and trace JSON
// ---------------------------------------------------------------------------

// Schema: {"normals": [[x,y,z] x 4]}.
inline json config_to_json(const FourCircleConfig& cfg) {
  json arr = json::array();
  for (const Vec3& n : cfg.normals) arr.push_back({n.x, n.y, n.z});
  return json{{"normals", arr}};
}

inline FourCircleConfig config_from_json(const json& j) {
  const json& arr = j.at("normals");
  if (!arr.is_array() || arr.size() != 4)
    throw Error("config JSON needs exactly 4 normals");
  FourCircleConfig cfg;
  for (int i = 0; i < 4; ++i) {
    cfg.normals[i] = Vec3{arr[i].at(0).get<double>(), arr[i].at(1).get<double>(),
                          arr[i].at(2).get<double>()};
  }
  return cfg;
}

// Schema: [{"t": e, "angles": [a,b,c,d], "areas": {"F": ..., "bottom": ...}}].
inline json trace_to_json(const ContinuationResult& res) {
  json out = json::array();
  for (const ContinuationStep& st : res.trace) {
    json areas = json::object();
    for (const auto& [role, x] : st.areas) areas[role] = x;
    out.push_back({{"t", st.t},
                   {"angles", {st.angles[0], st.angles[1], st.angles[2], st.angles[3]}},
                   {"areas", areas}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

namespace iodetail {

inline const char* stroke_color(int c) {
  static const char* colors[4] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  return colors[c & 3];
}

inline const char* stroke_dash(int c) {
  static const char* dashes[4] = {"", "6,3", "1.5,3", "8,3,1.5,3"};
  return dashes[c & 3];
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << std::fixed << x;
  return os.str();
}

// Stereographic projection from the north pole to the plane z = 0, mapped
// into viewport coordinates. Points too close to the pole are clamped.
struct Stereo {
  double scale, cx, cy;
  std::array<double, 2> operator()(const Vec3& p) const {
    double w = 1.0 - p.z;
    if (w < 1e-3) w = 1e-3;
    double u = p.x / w, v = p.y / w;
    double r = std::hypot(u, v);
    const double rmax = 6.0;  // clip far points so the viewport stays usable
    if (r > rmax) {
      u *= rmax / r;
      v *= rmax / r;
    }
    return {cx + scale * u, cy - scale * v};
  }
};

}  // namespace iodetail

// Render the partition of the sphere by the four circles: faces shaded
// (triangles darker than quadrilaterals), circle arcs stroked per color.
// Arcs are flattened to short polylines on the sphere before projection.
inline std::string partition_svg(const FourCircleConfig& cfg, int size = 480) {
  Arrangement arr = trace_arrangement(cfg);
  iodetail::Stereo proj{size / 14.0, size / 2.0, size / 2.0};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size
      << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Sample a dart's arc: rotate from the source vertex toward the target
  // inside the circle's plane.
  auto sample_dart = [&](const ArrangementDart& d, int steps) {
    const Vec3& n = cfg.normals[d.circle];
    Vec3 p = arr.vertices[d.from].pos, q = arr.vertices[d.to].pos;
    double ang = std::atan2(dot(cross(p, q), n), dot(p, q));
    if (ang < 0) ang += 2 * 3.14159265358979323846;
    std::vector<Vec3> pts;
    Vec3 e2 = normalized(cross(n, p));
    for (int i = 0; i <= steps; ++i) {
      double t = ang * i / steps;
      pts.push_back(p * std::cos(t) + e2 * std::sin(t));
    }
    return pts;
  };

  // Faces first (fills), skipping any face containing the projection pole.
  for (const auto& f : arr.faces) {
    std::vector<std::array<double, 2>> poly;
    bool near_pole = false;
    for (int di : f.darts)
      for (const Vec3& p : sample_dart(arr.darts[di], 12)) {
        if (1.0 - p.z < 5e-3) near_pole = true;
        poly.push_back(proj(p));
      }
    if (near_pole || poly.empty()) continue;
    svg << "<path d=\"M";
    for (size_t i = 0; i < poly.size(); ++i)
      svg << (i ? " L" : " ") << iodetail::fmt(poly[i][0]) << " "
          << iodetail::fmt(poly[i][1]);
    svg << " Z\" fill=\"" << (f.triangle ? "#d9d9d9" : "#f5f5f5") << "\" stroke=\"none\"/>\n";
  }

  // Circle arcs on top.
  for (const auto& d : arr.darts) {
    auto pts = sample_dart(d, 16);
    svg << "<polyline fill=\"none\" stroke=\"" << iodetail::stroke_color(d.circle)
        << "\" stroke-width=\"1.4\"";
    if (*iodetail::stroke_dash(d.circle))
      svg << " stroke-dasharray=\"" << iodetail::stroke_dash(d.circle) << "\"";
    svg << " points=\"";
    for (const Vec3& p : pts) {
      auto q = proj(p);
      svg << iodetail::fmt(q[0]) << "," << iodetail::fmt(q[1]) << " ";
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

// Render a net: boundary vertices pinned to a circle in boundary order,
// interior vertices relaxed to the barycenter of their neighbors, edges
// stroked in the four color styles.
inline std::string net_svg(const Net& g, NetKind kind = NetKind::Quadrilateral,
                           int size = 480) {
  NetReport rep = validate_net(g, kind);
  const NetVertices& nv = rep.verts;
  int n = nv.n_vertices;

  // Boundary cycle as vertices (rep.boundary is the dart cycle from a0).
  std::vector<int> bverts;
  for (int d : rep.boundary) bverts.push_back(nv.vertex_of[d]);

  std::vector<double> x(n, 0), y(n, 0);
  std::vector<bool> pinned(n, false);
  double R = size * 0.42, cx = size / 2.0, cy = size / 2.0;
  for (size_t i = 0; i < bverts.size(); ++i) {
    double t = 2 * 3.14159265358979323846 * i / bverts.size();
    x[bverts[i]] = cx + R * std::cos(t - 3.14159265358979323846 / 2);
    y[bverts[i]] = cy + R * std::sin(t - 3.14159265358979323846 / 2);
    pinned[bverts[i]] = true;
  }
  for (int it = 0; it < 300; ++it)
    for (int v = 0; v < n; ++v) {
      if (pinned[v] || nv.out[v].empty()) continue;
      double sx = 0, sy = 0;
      for (int d : nv.out[v]) {
        int w = nv.vertex_of[g.next[d]];
        sx += x[w];
        sy += y[w];
      }
      x[v] = sx / nv.out[v].size();
      y[v] = sy / nv.out[v].size();
    }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size
      << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int d = 0; d < g.n_darts(); ++d) {
    if (g.opp[d] >= 0 && g.opp[d] < d) continue;  // draw each edge once
    int u = nv.vertex_of[d], v = nv.vertex_of[g.next[d]];
    svg << "<line x1=\"" << iodetail::fmt(x[u]) << "\" y1=\"" << iodetail::fmt(y[u])
        << "\" x2=\"" << iodetail::fmt(x[v]) << "\" y2=\"" << iodetail::fmt(y[v])
        << "\" stroke=\"" << iodetail::stroke_color(g.color[d]) << "\" stroke-width=\"1.6\"";
    if (*iodetail::stroke_dash(g.color[d]))
      svg << " stroke-dasharray=\"" << iodetail::stroke_dash(g.color[d]) << "\"";
    svg << "/>\n";
  }
  // Mark corners.
  for (size_t i = 0; i < g.corner_darts.size(); ++i) {
    int v = nv.vertex_of[g.corner_darts[i]];
    svg << "<circle cx=\"" << iodetail::fmt(x[v]) << "\" cy=\"" << iodetail::fmt(y[v])
        << "\" r=\"4\" fill=\"black\"/>\n";
    svg << "<text x=\"" << iodetail::fmt(x[v] + 7) << "\" y=\"" << iodetail::fmt(y[v] - 7)
        << "\" font-size=\"13\" font-family=\"sans-serif\">a" << i << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace sphquad
