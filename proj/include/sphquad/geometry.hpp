// Four great circles in general position on the unit sphere: configuration
// representation, arrangement tracing (14 faces), face areas by spherical
// excess, realization of a configuration from four prescribed face angles
// plus one free parameter, and continuation of a configuration to a triple
// intersection.
//
// Conventions:
//  - Angles and areas are measured in units of pi. The sphere has area 4.
//  - The distinguished quadrilateral face F has its sides on circles
//    C1,C2,C3,C4 in counterclockwise order; its interior angle between the
//    C_j-side and C_{j+1}-side is a,b,c,d for j=1..4.
//  - The triangle adjacent to F across its C2-side is "bottom" (area
//    1-a-b+e), across C4 "top" (1-c-d+e), across C1 "left" (1-a-d+z),
//    across C3 "right" (1-b-c+z), where e and z are the fifth and sixth
//    angles of the configuration.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "sphquad/base.hpp"

namespace sphquad {

struct GreatCircle {
  Vec3 normal;  // unit normal; the circle is {x : normal . x = 0}
};

struct FourCircleConfig {
  std::array<Vec3, 4> normals;
};

// Angle in (0,1) (units of pi) under which two great circles cross.
// This is the acute-or-obtuse angle between the planes measured so that it
// matches the convention normal_i . normal_j = -cos(pi * angle) used by the
// realization gauge; callers that only care about the crossing angle of the
// curves should fold it to (0, 1/2] themselves.
inline double angle_between(const GreatCircle& ci, const GreatCircle& cj) {
  double c = dot(normalized(ci.normal), normalized(cj.normal));
  c = std::clamp(c, -1.0, 1.0);
  if (std::abs(c) >= 1 - 1e-12) throw ParallelCircles("normals (anti)parallel");
  return std::acos(-c) / kPi;
}

// Minimum absolute determinant over the four triples of normals. A triple
// intersection of three circles happens exactly when the corresponding
// determinant vanishes.
inline double triple_intersection_gap(const FourCircleConfig& cfg) {
  double best = 1e300;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        best = std::min(best, std::abs(triple(cfg.normals[i], cfg.normals[j], cfg.normals[k])));
  return best;
}

inline bool detect_triple(const FourCircleConfig& cfg, double tol = 1e-9) {
  return triple_intersection_gap(cfg) < tol;
}

// ---------------------------------------------------------------------------
// Arrangement tracing
// ---------------------------------------------------------------------------

struct ArrangementVertex {
  Vec3 pos;
  int ci = 0, cj = 0;  // the two circles crossing here (ci < cj)
};

struct ArrangementDart {
  int from = -1, to = -1;  // vertex ids
  int circle = -1;         // 0..3
  int twin = -1;           // opposite dart
  int next = -1;           // next dart around the face on the left
  int face = -1;
};

struct ArrangementFace {
  std::vector<int> darts;     // boundary darts in order
  std::vector<int> vertices;  // boundary vertices in order (tail of each dart)
  double area = 0;            // units of pi
  bool triangle = false;
};

// The traced arrangement of four circles in general position: 12 vertices,
// 48 darts (24 edges), 14 faces (8 triangles + 6 quadrilaterals).
struct Arrangement {
  std::vector<ArrangementVertex> vertices;
  std::vector<ArrangementDart> darts;
  std::vector<ArrangementFace> faces;

  // Distinguished faces (indices into `faces`), when identified:
  int face_F = -1;
  int face_bottom = -1, face_top = -1, face_left = -1, face_right = -1;
  std::array<double, 4> F_angles{};  // (a,b,c,d) at F, units of pi

  // Index of the vertex shared by circles i and j on the side where
  // normalize(cross(n_i, n_j)) points (the "+" vertex).
  int vertex_of(int i, int j, bool plus) const {
    if (i > j) std::swap(i, j);
    for (size_t v = 0; v < vertices.size(); ++v)
      if (vertices[v].ci == i && vertices[v].cj == j) {
        // vertices stored in pairs: +v first, -v second
        bool is_plus = (v % 2 == 0);
        if (is_plus == plus) return static_cast<int>(v);
      }
    return -1;
  }
};

namespace detail {

// Tangent of a dart at a point p on circle `c` with orientation sign s:
// direction of travel when moving counterclockwise (s=+1) around the normal.
inline Vec3 circle_tangent(const Vec3& n, const Vec3& p, int s) {
  return cross(n, p) * static_cast<double>(s);
}

// Angle of tangent vector t at unit point p, measured in the tangent plane
// against an arbitrary but fixed frame.
inline double tangent_angle(const Vec3& p, const Vec3& t) {
  // Build a frame (u, w) spanning the tangent plane at p.
  Vec3 ref = std::abs(p.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
  Vec3 u = normalized(cross(ref, p));
  Vec3 w = cross(p, u);
  return std::atan2(dot(t, w), dot(t, u));
}

}  // namespace detail

// Trace the arrangement of the four circles. Throws Error when the
// configuration is degenerate (triple intersection or coincident circles).
inline Arrangement trace_arrangement(const FourCircleConfig& cfg, double tol = 1e-9) {
  if (detect_triple(cfg, tol))
    throw Error("configuration has a (near-)triple intersection; arrangement not generic");
  Arrangement arr;
  std::array<Vec3, 4> n;
  for (int i = 0; i < 4; ++i) n[i] = normalized(cfg.normals[i]);

  // Vertices: both intersection points of each pair, "+" first.
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      Vec3 v = normalized(cross(n[i], n[j]));
      arr.vertices.push_back({v, i, j});
      arr.vertices.push_back({-v, i, j});
    }

  // For each circle, order the six vertices on it counterclockwise (around
  // its normal) and create the darts of its six edges.
  std::vector<std::array<int, 2>> edge_dart_of;  // per edge: the two dart ids
  for (int c = 0; c < 4; ++c) {
    std::vector<int> on;  // vertex ids on circle c
    for (size_t v = 0; v < arr.vertices.size(); ++v)
      if (arr.vertices[v].ci == c || arr.vertices[v].cj == c) on.push_back(static_cast<int>(v));
    if (on.size() != 6) throw Error("arrangement tracing: circle does not carry 6 vertices");
    Vec3 u = normalized(cross(std::abs(n[c].z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0}, n[c]));
    Vec3 w = cross(n[c], u);
    std::sort(on.begin(), on.end(), [&](int a, int b) {
      const Vec3 &pa = arr.vertices[a].pos, &pb = arr.vertices[b].pos;
      return std::atan2(dot(pa, w), dot(pa, u)) < std::atan2(dot(pb, w), dot(pb, u));
    });
    for (int k = 0; k < 6; ++k) {
      int a = on[k], b = on[(k + 1) % 6];
      int d0 = static_cast<int>(arr.darts.size());
      arr.darts.push_back({a, b, c, d0 + 1, -1, -1});
      arr.darts.push_back({b, a, c, d0, -1, -1});
    }
  }

  // next: after arriving at a vertex along dart d, the face on the left of d
  // continues along the outgoing dart that is the first one clockwise from
  // the reversal of d.
  std::vector<std::vector<int>> out(arr.vertices.size());
  for (size_t d = 0; d < arr.darts.size(); ++d) out[arr.darts[d].from].push_back(static_cast<int>(d));
  for (auto& lst : out) {
    if (lst.size() != 4) throw Error("arrangement tracing: vertex degree != 4");
  }
  auto out_angle = [&](int d) {
    const auto& dart = arr.darts[d];
    const auto& v = arr.vertices[dart.from];
    // Direction of travel at the tail. The dart runs ccw around its circle
    // iff it was created as the first of its pair; recover orientation by
    // checking which endpoint order matches the ccw sort. Simpler: tangent
    // toward `to` is cross(n, p) if that points from `from` to `to` along the
    // short way; we created darts along ccw order, and the pair's second is
    // the reversal, so orientation = +1 for even ids within the pair layout.
    int s = (d % 2 == 0) ? +1 : -1;
    return detail::tangent_angle(v.pos, detail::circle_tangent(n[dart.circle], v.pos, s));
  };
  for (size_t d = 0; d < arr.darts.size(); ++d) {
    const auto& dart = arr.darts[d];
    int rev = dart.twin;
    double ra = out_angle(rev);
    int best = -1;
    double bestdiff = 1e300;
    for (int cand : out[dart.to]) {
      if (cand == rev) continue;
      double diff = ra - out_angle(cand);  // clockwise distance from rev
      while (diff <= 1e-12) diff += 2 * kPi;
      if (diff < bestdiff) {
        bestdiff = diff;
        best = cand;
      }
    }
    arr.darts[d].next = best;
  }

  // Faces: orbits of next. Interior angles by excess.
  for (size_t d0 = 0; d0 < arr.darts.size(); ++d0) {
    if (arr.darts[d0].face != -1) continue;
    ArrangementFace f;
    int d = static_cast<int>(d0);
    double anglesum = 0;
    do {
      arr.darts[d].face = static_cast<int>(arr.faces.size());
      f.darts.push_back(d);
      f.vertices.push_back(arr.darts[d].from);
      int nd = arr.darts[d].next;
      // Interior angle at the shared vertex: ccw angle from the outgoing
      // tangent to the reversed incoming tangent.
      const auto& vin = arr.darts[d];
      const Vec3& p = arr.vertices[vin.to].pos;
      int s_in = (d % 2 == 0) ? +1 : -1;
      Vec3 t_in = detail::circle_tangent(n[vin.circle], p, s_in);
      int s_out = (nd % 2 == 0) ? +1 : -1;
      Vec3 t_out = detail::circle_tangent(n[arr.darts[nd].circle], p, s_out);
      double ang = detail::tangent_angle(p, -t_in) - detail::tangent_angle(p, t_out);
      while (ang <= 1e-12) ang += 2 * kPi;
      while (ang > 2 * kPi) ang -= 2 * kPi;
      anglesum += ang;
      d = nd;
    } while (d != static_cast<int>(d0));
    size_t k = f.darts.size();
    if (k != 3 && k != 4) throw Error("arrangement tracing: face is not a triangle/quadrilateral");
    f.triangle = (k == 3);
    f.area = anglesum / kPi - (static_cast<double>(k) - 2.0);
    arr.faces.push_back(std::move(f));
  }
  if (arr.faces.size() != 14) throw Error("arrangement tracing: expected 14 faces");

  // Identify F: a quadrilateral whose ccw side-circle sequence is a rotation
  // of (0,1,2,3). Exactly two faces qualify (an antipodal pair with opposite
  // cyclic orders); take the one reading (0,1,2,3) counterclockwise.
  for (size_t fi = 0; fi < arr.faces.size(); ++fi) {
    auto& f = arr.faces[fi];
    if (f.triangle) continue;
    std::array<int, 4> seq{};
    for (int k = 0; k < 4; ++k) seq[k] = arr.darts[f.darts[k]].circle;
    for (int r = 0; r < 4; ++r) {
      if (seq[r] == 0 && seq[(r + 1) % 4] == 1 && seq[(r + 2) % 4] == 2 && seq[(r + 3) % 4] == 3) {
        arr.face_F = static_cast<int>(fi);
        // Interior angle a sits between the C1-side and the C2-side, i.e. at
        // the head of the C1-dart. Recompute the four corner angles here.
        for (int k = 0; k < 4; ++k) {
          int d = f.darts[(r + k) % 4];
          int nd = arr.darts[d].next;
          const Vec3& p = arr.vertices[arr.darts[d].to].pos;
          int s_in = (d % 2 == 0) ? +1 : -1;
          Vec3 t_in = detail::circle_tangent(n[arr.darts[d].circle], p, s_in);
          int s_out = (nd % 2 == 0) ? +1 : -1;
          Vec3 t_out = detail::circle_tangent(n[arr.darts[nd].circle], p, s_out);
          double ang = detail::tangent_angle(p, -t_in) - detail::tangent_angle(p, t_out);
          while (ang <= 1e-12) ang += 2 * kPi;
          arr.F_angles[k] = ang / kPi;
        }
        // Neighbors across the four sides (in circle order C1..C4 starting
        // at the dart with circle 0): left, bottom, right, top.
        auto across = [&](int k) {
          int d = f.darts[(r + k) % 4];
          return arr.darts[arr.darts[d].twin].face;
        };
        arr.face_left = across(0);
        arr.face_bottom = across(1);
        arr.face_right = across(2);
        arr.face_top = across(3);
        break;
      }
    }
    if (arr.face_F != -1) break;
  }
  if (arr.face_F == -1) throw Error("arrangement tracing: no face with side order C1,C2,C3,C4");
  return arr;
}

// Face areas of the arrangement plus the roles of the distinguished faces.
struct FaceAreas {
  std::vector<double> areas;          // one per face, units of pi
  std::vector<bool> triangle;         // face type
  std::map<std::string, int> roles;   // "F","bottom","top","left","right" -> face index
  double a = 0, b = 0, c = 0, d = 0;  // F's interior angles
  double e = 0, z = 0;                // fifth/sixth angles from the area identities

  double total() const {
    double s = 0;
    for (double x : areas) s += x;
    return s;
  }
  double role_area(const std::string& r) const { return areas[roles.at(r)]; }
};

// degen_tol: faces smaller than this throw DegenerateConfig; internal callers
// that intentionally approach a degeneration pass 0 to disable the check.
inline FaceAreas face_areas(const FourCircleConfig& cfg, double tol = 1e-9,
                            double degen_tol = 1e-8) {
  Arrangement arr = trace_arrangement(cfg, tol);
  FaceAreas fa;
  for (const auto& f : arr.faces) {
    fa.areas.push_back(f.area);
    fa.triangle.push_back(f.triangle);
  }
  fa.roles["F"] = arr.face_F;
  fa.roles["bottom"] = arr.face_bottom;
  fa.roles["top"] = arr.face_top;
  fa.roles["left"] = arr.face_left;
  fa.roles["right"] = arr.face_right;
  fa.a = arr.F_angles[0];
  fa.b = arr.F_angles[1];
  fa.c = arr.F_angles[2];
  fa.d = arr.F_angles[3];
  // Area identities: bottom = 1-a-b+e, left = 1-a-d+z.
  fa.e = fa.areas[arr.face_bottom] - 1 + fa.a + fa.b;
  fa.z = fa.areas[arr.face_left] - 1 + fa.a + fa.d;
  for (double x : fa.areas)
    if (x < degen_tol) throw DegenerateConfig("face contracted (triple intersection nearby)");
  return fa;
}

// ---------------------------------------------------------------------------
// Realization
// ---------------------------------------------------------------------------

// Realize a configuration with prescribed face angles (a,b,c,d) of F, gauge
// fixed: n1 = (0,0,1) and n2 in the xz-plane. The one-parameter family is
// parameterized internally by s = n1 . n3; the public knob is the fifth
// angle e (bottom area = 1-a-b+e). Throws InfeasibleParameter when (a,b,c,d)
// or the requested e cannot be realized.
class Realizer {
 public:
  Realizer(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
    for (double x : {a, b, c, d})
      if (!(x > 0 && x < 1)) throw InfeasibleAngles("face angles must lie in (0,1)");
    double sum = a + b + c + d;
    double mn = std::min(std::min(a, b), std::min(c, d));
    if (!(sum > 2) || !(sum - 2 < 2 * mn))
      throw InfeasibleAngles("angles outside the feasibility pyramid");
    scan_window();
  }

  // Configuration at internal parameter s (throws when not realizable).
  FourCircleConfig at_param(double s) const {
    auto cfg = try_param(s);
    if (!cfg) throw InfeasibleParameter("no configuration at this parameter value");
    return *cfg;
  }

  double e_of_param(double s) const {
    return face_areas(at_param(s), 1e-9, 0.0).e;
  }

  // Realize with fifth angle e = t.
  FourCircleConfig with_e(double t) const {
    // e is monotone in s on the feasible window; bracket and bisect.
    double lo = s_lo_, hi = s_hi_;
    double elo = e_of_param(lo), ehi = e_of_param(hi);
    if ((t - elo) * (t - ehi) > 0)
      throw InfeasibleParameter("fifth angle t=" + std::to_string(t) + " outside feasible range [" +
                                std::to_string(std::min(elo, ehi)) + ", " +
                                std::to_string(std::max(elo, ehi)) + "]");
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      double em = e_of_param(mid);
      if ((t - elo) * (t - em) <= 0) {
        hi = mid;
      } else {
        lo = mid;
        elo = em;
      }
      if (std::abs(hi - lo) < 1e-15) break;
    }
    FourCircleConfig cfg = at_param(0.5 * (lo + hi));
    // Residual check: the realized face angles must reproduce the input.
    FaceAreas fa = face_areas(cfg, 1e-9, 0.0);
    double res = std::abs(fa.a - a_) + std::abs(fa.b - b_) + std::abs(fa.c - c_) +
                 std::abs(fa.d - d_);
    if (res > 1e-9) throw InfeasibleParameter("realization residual too large");
    return cfg;
  }

  double e_min() const { return std::min(e_of_param(s_lo_), e_of_param(s_hi_)); }
  double e_max() const { return std::max(e_of_param(s_lo_), e_of_param(s_hi_)); }
  double s_lo() const { return s_lo_; }
  double s_hi() const { return s_hi_; }

  // Attempt to build the configuration at parameter s; returns nullopt when
  // infeasible. The two sign branches for n3/n4 are resolved by validating
  // that the traced F reproduces (a,b,c,d).
  std::optional<FourCircleConfig> try_param(double s) const {
    double sa = std::sin(kPi * a_), ca = std::cos(kPi * a_);
    Vec3 n1{0, 0, 1};
    Vec3 n2{sa, 0, -ca};
    double z3 = s;
    double x3 = (z3 * ca - std::cos(kPi * b_)) / sa;
    double disc3 = 1 - x3 * x3 - z3 * z3;
    if (disc3 <= 1e-12) return std::nullopt;
    for (double y3sign : {+1.0, -1.0}) {
      Vec3 n3{x3, y3sign * std::sqrt(disc3), z3};
      double z4 = -std::cos(kPi * d_);
      double r = -std::cos(kPi * c_) - n3.z * z4;
      // Solve x3*x4 + y3*y4 = r with x4^2 + y4^2 = 1 - z4^2.
      double rho2 = n3.x * n3.x + n3.y * n3.y;
      if (rho2 < 1e-12) continue;
      double R2 = 1 - z4 * z4;
      double disc4 = rho2 * R2 - r * r;
      if (disc4 <= 1e-12) continue;
      double root = std::sqrt(disc4);
      for (double sign4 : {+1.0, -1.0}) {
        double x4 = (n3.x * r - n3.y * sign4 * root) / rho2;
        double y4 = (n3.y * r + n3.x * sign4 * root) / rho2;
        FourCircleConfig cfg{{n1, n2, n3, Vec3{x4, y4, z4}}};
        if (detect_triple(cfg, 1e-10)) continue;
        try {
          FaceAreas fa = face_areas(cfg, 1e-9, 0.0);
          double res = std::abs(fa.a - a_) + std::abs(fa.b - b_) + std::abs(fa.c - c_) +
                       std::abs(fa.d - d_);
          if (res < 1e-8) return cfg;
        } catch (const Error&) {
          continue;
        }
      }
    }
    return std::nullopt;
  }

 private:
  // Find a maximal feasible window of the internal parameter by scanning.
  void scan_window() {
    const int N = 400;
    int best_len = 0, best_start = -1;
    int cur_start = -1, cur_len = 0;
    for (int i = 0; i <= N; ++i) {
      double s = -1.0 + 2.0 * i / N;
      bool ok = static_cast<bool>(try_param(s));
      if (ok) {
        if (cur_start < 0) cur_start = i;
        ++cur_len;
        if (cur_len > best_len) {
          best_len = cur_len;
          best_start = cur_start;
        }
      } else {
        cur_start = -1;
        cur_len = 0;
      }
    }
    if (best_len < 2) throw InfeasibleParameter("no feasible configuration window found");
    double step = 2.0 / N;
    double lo = -1.0 + best_start * step;
    double hi = lo + (best_len - 1) * step;
    // Tighten the endpoints: walk a little inward to stay clear of the
    // degenerate boundary, then refine by bisection toward it.
    auto refine = [&](double good, double bad) {
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (good + bad);
        if (try_param(mid))
          good = mid;
        else
          bad = mid;
      }
      return good;
    };
    s_lo_ = refine(lo, lo - step);
    s_hi_ = refine(hi, hi + step);
    // Stay strictly inside to keep tracing robust at the window ends.
    double margin = 1e-7 * (s_hi_ - s_lo_);
    s_lo_ += margin;
    s_hi_ -= margin;
  }

  double a_, b_, c_, d_;
  double s_lo_ = 0, s_hi_ = 0;
};

inline FourCircleConfig realize_config(double a, double b, double c, double d, double t) {
  return Realizer(a, b, c, d).with_e(t);
}

// ---------------------------------------------------------------------------
// Continuation to a triple intersection
// ---------------------------------------------------------------------------

struct ContinuationStep {
  double t = 0;  // fifth angle e at this step
  std::array<double, 4> angles{};
  std::map<std::string, double> areas;  // role -> area
};

struct ContinuationResult {
  std::vector<ContinuationStep> trace;
  FourCircleConfig final_config;
  std::string direction;
};

// Drive the configuration toward the triple intersection that contracts the
// requested triangle ("bottom", "top", "left", "right"). Throws
// DirectionBlocked when that face is not the one of its pair that can be
// contracted, QuadrupleBoundary when the pair is tied (within tie_tol).
inline ContinuationResult continue_to_triple(double a, double b, double c, double d,
                                             const std::string& direction, int steps = 24,
                                             double face_tol = 1e-8, double tie_tol = 1e-9) {
  Realizer rz(a, b, c, d);
  bool vertical = (direction == "bottom" || direction == "top");
  if (!vertical && direction != "left" && direction != "right")
    throw Error("unknown direction '" + direction + "'");
  // Of each opposite pair only the triangle with the smaller constant term
  // can contract: bottom vs top compare a+b vs c+d, left vs right a+d vs b+c.
  double diff = vertical ? (a + b) - (c + d) : (a + d) - (b + c);
  if (std::abs(diff) < tie_tol)
    throw QuadrupleBoundary("opposite triangle areas tie; limit is a quadruple intersection");
  bool contractible = (direction == "bottom" || direction == "left") ? diff > 0 : diff < 0;
  if (!contractible)
    throw DirectionBlocked("triangle '" + direction + "' cannot be contracted for these angles");

  auto area_of = [&](double s) { return face_areas(rz.at_param(s), 1e-9, 0.0).role_area(direction); };
  double slo = rz.s_lo(), shi = rz.s_hi();
  double alo = area_of(slo), ahi = area_of(shi);
  // The target area reaches (near) zero at one end of the window.
  double sfar, snear;
  if (alo < ahi) {
    sfar = slo;
    snear = shi;
  } else {
    sfar = shi;
    snear = slo;
  }
  // The contracting face reaches zero exactly at the feasibility boundary of
  // the window; the window scan stops just short of it, so a small residual
  // area at sfar is expected. A large one means the face never contracts.
  if (area_of(sfar) > 1e-3)
    throw DirectionBlocked("triangle '" + direction + "' does not contract inside the window");

  ContinuationResult res;
  res.direction = direction;
  for (int i = 0; i <= steps; ++i) {
    double u = static_cast<double>(i) / steps;
    // Geometric approach toward the contracting end for a well-sampled tail.
    double s = snear + (sfar - snear) * (1 - std::pow(1 - u, 2.0));
    FourCircleConfig cfg = rz.at_param(s);
    FaceAreas fa = face_areas(cfg, 1e-9, 0.0);
    ContinuationStep st;
    st.t = fa.e;
    st.angles = {fa.a, fa.b, fa.c, fa.d};
    for (const auto& [role, idx] : fa.roles) st.areas[role] = fa.areas[idx];
    res.trace.push_back(st);
    if (i == steps) res.final_config = cfg;
  }
  if (res.trace.back().areas.at(direction) > face_tol) {
    // One more refinement pass: bisect between the last two samples.
    double s0 = snear, s1 = sfar;
    for (int it = 0; it < 100; ++it) {
      double mid = 0.5 * (s0 + s1);
      auto cfg = rz.try_param(mid);
      if (cfg && face_areas(*cfg, 1e-9, 0.0).role_area(direction) > face_tol)
        s0 = mid;
      else
        s1 = mid;
    }
    FourCircleConfig cfg = rz.at_param(s0);
    FaceAreas fa = face_areas(cfg, 1e-9, 0.0);
    ContinuationStep st;
    st.t = fa.e;
    st.angles = {fa.a, fa.b, fa.c, fa.d};
    for (const auto& [role, idx] : fa.roles) st.areas[role] = fa.areas[idx];
    res.trace.push_back(st);
    res.final_config = cfg;
    if (st.areas.at(direction) > 10 * face_tol)
      throw DirectionBlocked("triangle '" + direction + "' failed to contract below tolerance");
  }
  return res;
}

}  // namespace sphquad
