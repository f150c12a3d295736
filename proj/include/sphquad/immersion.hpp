// Immersed nets over a fixed reference partition.
//
// Every net of a generic spherical quadrilateral is the preimage of the
// partition of the sphere by the four side circles. We build nets as cell
// complexes immersed in one concrete reference partition (four pairwise
// generic great circles), so that every construction step is a geometric
// gluing of sphere regions and all combinatorial conventions (which lune a
// triangle attachment selects, which half-sphere a digon adds, how corner
// angles decompose into sectors) are forced by the geometry instead of being
// hand-encoded.
//
// The reference partition uses the four cube-diagonal normals; its
// arrangement has 12 vertices, 24 edges and 14 faces (8 triangles and 6
// quadrilaterals). Each dart of an immersed net carries the arrangement dart
// it maps to. Sector symbols (the angle of a face at a vertex, recorded as
// "the angle of this circle pair" or "its complement") let us read off the
// fractional corner angles of a built net symbolically and compare them with
// the angles of the quadrilateral face matching the net's side circles; the
// result is the complement mask that drives the fixed-angle tables.
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sphquad/geometry.hpp"
#include "sphquad/net.hpp"

namespace sphquad {

// ---------------------------------------------------------------------------
// Reference partition
// ---------------------------------------------------------------------------

// Index of the unordered circle pair {i,j}, i != j, in 0..5.
inline int circle_pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  static constexpr int tab[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return tab[i][j];
}

// A sector angle expressed symbolically: the angle between the two circles of
// `pair` (as returned by angle_between), or its complement.
struct SectorSymbol {
  int pair = -1;
  bool comp = false;
  bool operator==(const SectorSymbol& o) const { return pair == o.pair && comp == o.comp; }
};

struct PartitionTemplate {
  FourCircleConfig cfg;
  Arrangement arr;
  std::vector<int> prev;                   // per dart: previous dart in its face
  std::vector<Vec3> face_point;            // interior point of each face
  std::array<double, 6> pair_angle{};      // angle_between per circle pair
  std::vector<SectorSymbol> sector;        // per dart: face(d) angle at origin(d)
  std::vector<double> sector_value;        // the same, numerically (units of pi)
  std::vector<int> reflect_vertex;         // vertex map of the mirror (x,y,z)->(y,x,z)
  std::vector<int> reflect_dart;           // dart map of the mirror
  std::array<int, 4> reflect_circle{};     // circle map of the mirror

  int n_darts() const { return static_cast<int>(arr.darts.size()); }
  int twin(int d) const { return arr.darts[d].twin; }
  int circle_of(int d) const { return arr.darts[d].circle; }
  int face_of(int d) const { return arr.darts[d].face; }
  double side_sign(int face, int circle) const {
    return dot(face_point[face], normalized(cfg.normals[circle])) > 0 ? 1.0 : -1.0;
  }
};

namespace imdetail {

inline double ccw_angle(const Vec3& p, const Vec3& t_from, const Vec3& t_to) {
  double a = detail::tangent_angle(p, t_to) - detail::tangent_angle(p, t_from);
  while (a <= 0) a += 2 * kPi;
  while (a > 2 * kPi) a -= 2 * kPi;
  return a;
}

inline PartitionTemplate build_template() {
  PartitionTemplate T;
  T.cfg.normals = {normalized(Vec3{1, 1, 1}), normalized(Vec3{1, 1, -1}),
                   normalized(Vec3{1, -1, 1}), normalized(Vec3{-1, 1, 1})};
  T.arr = trace_arrangement(T.cfg);
  const Arrangement& A = T.arr;

  T.prev.assign(A.darts.size(), -1);
  for (size_t d = 0; d < A.darts.size(); ++d) T.prev[A.darts[d].next] = static_cast<int>(d);

  for (const auto& f : A.faces) {
    Vec3 p{0, 0, 0};
    for (int v : f.vertices) p = p + A.vertices[v].pos;
    T.face_point.push_back(normalized(p));
  }

  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      T.pair_angle[circle_pair_index(i, j)] =
          angle_between(GreatCircle{T.cfg.normals[i]}, GreatCircle{T.cfg.normals[j]});

  // Sector symbols: the interior angle of face(d) at origin(d), i.e. the ccw
  // sector from the ray of d to the reversed ray of the previous face dart.
  T.sector.resize(A.darts.size());
  T.sector_value.resize(A.darts.size());
  for (size_t d = 0; d < A.darts.size(); ++d) {
    const auto& dd = A.darts[d];
    const auto& pd = A.darts[T.prev[d]];
    const Vec3& p = A.vertices[dd.from].pos;
    Vec3 t_out = detail::circle_tangent(normalized(T.cfg.normals[dd.circle]), p,
                                        (static_cast<int>(d) % 2 == 0) ? +1 : -1);
    Vec3 t_in = detail::circle_tangent(normalized(T.cfg.normals[pd.circle]), p,
                                       (T.prev[d] % 2 == 0) ? +1 : -1);
    double theta = ccw_angle(p, t_out, Vec3{-t_in.x, -t_in.y, -t_in.z}) / kPi;
    const auto& v = A.vertices[dd.from];
    int pair = circle_pair_index(v.ci, v.cj);
    double base = T.pair_angle[pair];
    SectorSymbol s{pair, std::abs(theta - base) > std::abs(theta - (1 - base))};
    double want = s.comp ? 1 - base : base;
    if (std::abs(theta - want) > 1e-6) throw Error("sector angle does not match a symbol");
    T.sector[d] = s;
    T.sector_value[d] = theta;
  }

  // Mirror symmetry (x,y,z) -> (y,x,z): preserves the circle set, swapping
  // circles 2 and 3, and reverses orientation.
  T.reflect_circle = {0, 1, 3, 2};
  auto mirror = [](const Vec3& p) { return Vec3{p.y, p.x, p.z}; };
  T.reflect_vertex.assign(A.vertices.size(), -1);
  for (size_t v = 0; v < A.vertices.size(); ++v) {
    Vec3 m = mirror(A.vertices[v].pos);
    for (size_t w = 0; w < A.vertices.size(); ++w)
      if (norm(A.vertices[w].pos - m) < 1e-9) {
        T.reflect_vertex[v] = static_cast<int>(w);
        break;
      }
    if (T.reflect_vertex[v] < 0) throw Error("mirror does not permute the template vertices");
  }
  std::map<std::pair<int, int>, int> by_ends;
  for (size_t d = 0; d < A.darts.size(); ++d)
    by_ends[{A.darts[d].from, A.darts[d].to}] = static_cast<int>(d);
  T.reflect_dart.assign(A.darts.size(), -1);
  for (size_t d = 0; d < A.darts.size(); ++d) {
    auto it = by_ends.find({T.reflect_vertex[A.darts[d].from], T.reflect_vertex[A.darts[d].to]});
    if (it == by_ends.end()) throw Error("mirror does not permute the template edges");
    T.reflect_dart[d] = it->second;
    if (A.darts[it->second].circle != T.reflect_circle[A.darts[d].circle])
      throw Error("mirror circle permutation mismatch");
  }
  return T;
}

}  // namespace imdetail

inline const PartitionTemplate& partition_template() {
  static const PartitionTemplate T = imdetail::build_template();
  return T;
}

// ---------------------------------------------------------------------------
// Immersed nets
// ---------------------------------------------------------------------------

struct INet {
  Net net;
  std::vector<int> pimage;  // per dart: arrangement dart id
};

// Structural consistency of the immersion: colors are circles, faces map to
// arrangement faces, interior edges to twin pairs.
inline void validate_inet(const INet& Q, NetKind kind = NetKind::Fragment) {
  const auto& T = partition_template();
  validate_net(Q.net, kind);
  if (Q.pimage.size() != Q.net.next.size()) throw InvalidNet("pimage size mismatch");
  for (int d = 0; d < Q.net.n_darts(); ++d) {
    int t = Q.pimage[d];
    if (t < 0 || t >= T.n_darts()) throw InvalidNet("pimage out of range");
    if (Q.net.color[d] != T.circle_of(t)) throw InvalidNet("color disagrees with image circle");
    if (Q.pimage[Q.net.next[d]] != T.arr.darts[t].next)
      throw InvalidNet("immersion does not respect face cycles");
    if (!Q.net.is_boundary(d) && Q.pimage[Q.net.opp[d]] != T.twin(t))
      throw InvalidNet("immersion does not respect interior edges");
  }
}

// One face of the reference partition as an immersed net (all edges boundary).
inline INet face_inet(int face_id) {
  const auto& T = partition_template();
  const auto& fd = T.arr.faces[face_id].darts;
  INet Q;
  int n = static_cast<int>(fd.size());
  for (int i = 0; i < n; ++i) {
    Q.net.next.push_back((i + 1) % n);
    Q.net.opp.push_back(-1);
    Q.net.color.push_back(T.circle_of(fd[i]));
    Q.pimage.push_back(fd[i]);
  }
  return Q;
}

// An embedded region: the union of the given faces, glued along all shared
// edges except those whose edge key (min of the twin dart ids) is excluded.
inline INet region_inet(const std::vector<int>& faces, const std::set<int>& excluded_edges = {}) {
  const auto& T = partition_template();
  std::set<int> fset(faces.begin(), faces.end());
  INet Q;
  std::map<int, int> local;  // template dart -> local dart
  for (int f : faces)
    for (int td : T.arr.faces[f].darts) {
      local[td] = static_cast<int>(Q.pimage.size());
      Q.pimage.push_back(td);
    }
  int n = static_cast<int>(Q.pimage.size());
  Q.net.next.assign(n, -1);
  Q.net.opp.assign(n, -1);
  Q.net.color.assign(n, -1);
  for (const auto& [td, d] : local) {
    Q.net.next[d] = local.at(T.arr.darts[td].next);
    Q.net.color[d] = T.circle_of(td);
    int tw = T.twin(td);
    int key = std::min(td, tw);
    if (local.count(tw) && fset.count(T.face_of(tw)) && !excluded_edges.count(key))
      Q.net.opp[d] = local.at(tw);
  }
  return Q;
}

// Disjoint union of A and B with the listed (A-dart, B-dart) pairs sewn into
// interior edges. The images must be twins.
inline INet sew(const INet& A, const INet& B, const std::vector<std::pair<int, int>>& pairs) {
  const auto& T = partition_template();
  INet R = A;
  int off = A.net.n_darts();
  for (int d = 0; d < B.net.n_darts(); ++d) {
    R.net.next.push_back(B.net.next[d] + off);
    R.net.opp.push_back(B.net.opp[d] < 0 ? -1 : B.net.opp[d] + off);
    R.net.color.push_back(B.net.color[d]);
    R.pimage.push_back(B.pimage[d]);
  }
  for (auto [a, b] : pairs) {
    if (!A.net.is_boundary(a) || !B.net.is_boundary(b)) throw Error("sew: dart already interior");
    if (T.twin(A.pimage[a]) != B.pimage[b]) throw Error("sew: images are not twins");
    R.net.opp[a] = b + off;
    R.net.opp[b + off] = a;
  }
  R.net.corner_darts.clear();
  return R;
}

// Mirror image of an immersed net. The underlying mirror of the sphere is the
// template symmetry (x,y,z)->(y,x,z); colors are refreshed from the new
// images (the mirror swaps circles 2 and 3).
inline INet reflect_inet(const INet& Q) {
  const auto& T = partition_template();
  INet R;
  R.net = reflect(Q.net);
  R.pimage.resize(Q.pimage.size());
  for (int d = 0; d < R.net.n_darts(); ++d) {
    R.pimage[d] = T.reflect_dart[T.twin(Q.pimage[d])];
    R.net.color[d] = T.circle_of(R.pimage[d]);
  }
  return R;
}

// Labeled rotation (a_j of the result = a_{j+r} of the input).
inline INet rotate_inet(const INet& Q, int r) {
  INet R = Q;
  R.net = rotate_labels(Q.net, r);
  return R;
}

// Forget the immersion; rename colors so that the side leaving corner a_j has
// color j (for quadrilaterals this puts the circle of paper-side s_{j+1} at
// color j). Fragments rename side colors by first appearance and fill the
// remaining colors in increasing circle order.
inline Net to_net(const INet& Q, NetKind kind = NetKind::Quadrilateral) {
  NetReport rep = validate_net(Q.net, kind);
  std::array<int, 4> cmap{-1, -1, -1, -1};
  int used = 0;
  for (const auto& sd : rep.side_darts) {
    int c = Q.net.color[sd[0]];
    if (cmap[c] == -1) cmap[c] = used++;
  }
  for (int c = 0; c < 4; ++c)
    if (cmap[c] == -1) cmap[c] = used++;
  Net g = Q.net;
  for (int d = 0; d < g.n_darts(); ++d) g.color[d] = cmap[g.color[d]];
  return g;
}

// ---------------------------------------------------------------------------
// Complement mask
// ---------------------------------------------------------------------------

// The quadrilateral face of the reference partition whose ccw side circles
// match the net's side circles, together with the rotation aligning them.
struct MatchedFace {
  int face = -1;
  int rotation = -1;  // face dart index (within the face cycle) on the circle of side a0->a1
};

inline MatchedFace match_face(const INet& Q, const NetReport& rep) {
  const auto& T = partition_template();
  std::array<int, 4> c{};
  for (int j = 0; j < 4; ++j) c[j] = T.circle_of(Q.pimage[rep.side_darts[j][0]]);
  MatchedFace out;
  for (size_t f = 0; f < T.arr.faces.size(); ++f) {
    const auto& fd = T.arr.faces[f].darts;
    if (fd.size() != 4) continue;
    for (int r = 0; r < 4; ++r) {
      bool ok = true;
      for (int j = 0; j < 4 && ok; ++j) ok = T.circle_of(fd[(r + j) % 4]) == c[j];
      if (ok) {
        if (out.face != -1) throw Error("side circle sequence matches two faces");
        out.face = static_cast<int>(f);
        out.rotation = r;
      }
    }
  }
  if (out.face == -1) throw Error("no face matches the side circle sequence");
  return out;
}

// The complement mask of a quadrilateral net: mask[j] = 1 iff the fractional
// part of the angle at corner a_j is the complement of the matched face's
// angle at the corresponding corner. The fractional part of a corner of order
// m is the value of any odd-position sector at that corner; sectors at a
// vertex alternate between a symbol and its complement, so the first sector
// (adjacent to the outgoing boundary dart, inside the net) represents it.
inline std::array<int, 4> complement_mask(const INet& Q) {
  const auto& T = partition_template();
  NetReport rep = validate_net(Q.net, NetKind::Quadrilateral);
  MatchedFace mf = match_face(Q, rep);
  const auto& fd = T.arr.faces[mf.face].darts;
  std::array<int, 4> mask{};
  for (int j = 0; j < 4; ++j) {
    SectorSymbol corner = T.sector[Q.pimage[Q.net.corner_darts[j]]];
    SectorSymbol face = T.sector[fd[(mf.rotation + j) % 4]];
    if (corner.pair != face.pair) throw Error("corner sector on an unexpected circle pair");
    mask[j] = corner.comp == face.comp ? 0 : 1;
  }
  return mask;
}

// ---------------------------------------------------------------------------
// Gluing operations
// ---------------------------------------------------------------------------

namespace imdetail {

inline std::map<int, int> boundary_by_image(const INet& Q) {
  std::map<int, int> m;
  for (int d = 0; d < Q.net.n_darts(); ++d)
    if (Q.net.is_boundary(d)) m[Q.pimage[d]] = d;
  return m;
}

inline int index_in(const std::vector<int>& cyc, int d) {
  auto it = std::find(cyc.begin(), cyc.end(), d);
  if (it == cyc.end()) throw Error("dart not on the boundary cycle");
  return static_cast<int>(it - cyc.begin());
}

}  // namespace imdetail

// Attach a lune (the triangle T_1 of an extension step) at corner a_j of Q.
// The extended side L is the side leaving a_j when extend_leaving is set and
// the side arriving at a_j otherwise; the other side M at a_j (of order at
// most 2) is glued into the lune between the circles of L and M selected by
// the geometry, the corner at the far end of M gains integer order 1, a_j is
// absorbed into the extended side, and the far corner of the lune becomes the
// new corner at position j.
inline INet attach_lune(const INet& Q, int j, bool extend_leaving) {
  const auto& T = partition_template();
  NetReport rep = validate_net(Q.net, NetKind::Fragment);
  int nc = static_cast<int>(Q.net.corner_darts.size());
  int Ls = extend_leaving ? j : (j + nc - 1) % nc;
  int Ms = extend_leaving ? (j + nc - 1) % nc : j;
  int q_pos = extend_leaving ? (j + nc - 1) % nc : (j + 1) % nc;
  if (rep.corner_order[j] != 0) throw Error("extension corner must have order 0");
  const auto& M = rep.side_darts[Ms];
  int r = static_cast<int>(M.size());
  if (r > 2) throw Error("extension requires the glued side to have order at most 2");

  int d_at_p = extend_leaving ? M.back() : M.front();
  int corner_face = T.face_of(T.twin(Q.pimage[d_at_p]));
  int cL = Q.net.color[rep.side_darts[Ls][0]];
  int cM = Q.net.color[M[0]];
  double sL = T.side_sign(corner_face, cL);
  double sM = T.side_sign(corner_face, cM);
  std::vector<int> lune_faces;
  for (size_t f = 0; f < T.arr.faces.size(); ++f)
    if (T.side_sign(static_cast<int>(f), cL) == sL && T.side_sign(static_cast<int>(f), cM) == sM)
      lune_faces.push_back(static_cast<int>(f));

  INet lune = region_inet(lune_faces);
  auto by_image = imdetail::boundary_by_image(lune);
  std::vector<std::pair<int, int>> pairs;
  for (int hd : M) pairs.push_back({hd, by_image.at(T.twin(Q.pimage[hd]))});

  // The lune boundary is a 3-edge chain on the circle of M and a 3-edge chain
  // on the circle of L, meeting at the two intersection points. It traverses
  // the circle of M opposite to the host boundary, so the sewn run appears in
  // its cycle in reverse host order and ends at the dart matched with
  // M.front() for either orientation of M.
  std::vector<int> cyc = boundary_cycle(lune.net, pairs[0].second);
  int i1 = imdetail::index_in(cyc, by_image.at(T.twin(Q.pimage[M.front()])));
  int m = static_cast<int>(cyc.size());

  INet R = sew(Q, lune, pairs);
  int off = Q.net.n_darts();
  R.net.corner_darts.assign(nc, -1);
  for (int pos = 0; pos < nc; ++pos) R.net.corner_darts[pos] = Q.net.corner_darts[pos];
  if (extend_leaving) {
    // Boundary after gluing: ... q, [lune leftover on cM], v', [lune cL chain],
    // p (absorbed), L ...
    int q_dart = cyc[(i1 + 1) % m];
    int vprime_dart = cyc[(i1 + 1 + (3 - r)) % m];
    if (lune.net.color[q_dart] != cM || lune.net.color[vprime_dart] != cL)
      throw Error("lune boundary does not decompose as expected");
    R.net.corner_darts[q_pos] = q_dart + off;
    R.net.corner_darts[j] = vprime_dart + off;
  } else {
    // Boundary after gluing: ... L, p (absorbed), [lune cL chain], v',
    // [lune leftover on cM], q ...
    int vprime_dart = cyc[(i1 + 1 + 3) % m];
    if (lune.net.color[vprime_dart] != cM) throw Error("lune boundary does not decompose as expected");
    R.net.corner_darts[j] = vprime_dart + off;
  }
  validate_net(R.net, NetKind::Fragment);
  return R;
}

// Extension of the side L of Q beyond its order-0 corner a_j by a triangle
// T_n (n successive lune attachments). The corner at the far end of the side
// M at a_j gains integer order n.
inline INet extend_side(const INet& Q, int j, bool extend_leaving, int n) {
  INet R = Q;
  for (int i = 0; i < n; ++i) R = attach_lune(R, j, extend_leaving);
  return R;
}

// Result of one digon attachment step.
struct DigonAttachment {
  INet net;
  int order_split_min = 0;  // digon type D_{min,6-min}
};

// Attach a half-sphere (one digon layer) along side k of Q. Both corners of
// side k gain integer order 1 and the exposed side order becomes 6 - r.
inline DigonAttachment attach_half_sphere(const INet& Q, int k) {
  const auto& T = partition_template();
  NetReport rep = validate_net(Q.net, NetKind::Fragment);
  int nc = static_cast<int>(Q.net.corner_darts.size());
  const auto& S = rep.side_darts[k];
  int r = static_cast<int>(S.size());
  if (r >= 6) throw ForbiddenSide("digons attach only to short sides (order < 6)");
  int c = Q.net.color[S[0]];
  double s_host = T.side_sign(T.face_of(Q.pimage[S[0]]), c);
  std::vector<int> half;
  for (size_t f = 0; f < T.arr.faces.size(); ++f)
    if (T.side_sign(static_cast<int>(f), c) == -s_host) half.push_back(static_cast<int>(f));

  INet H = region_inet(half);
  auto by_image = imdetail::boundary_by_image(H);
  std::vector<std::pair<int, int>> pairs;
  for (int hd : S) pairs.push_back({hd, by_image.at(T.twin(Q.pimage[hd]))});

  std::vector<int> cyc = boundary_cycle(H.net, pairs[0].second);
  int i1 = imdetail::index_in(cyc, by_image.at(T.twin(Q.pimage[S.front()])));
  int m = static_cast<int>(cyc.size());
  if (m != 6) throw Error("half-sphere boundary is not a 6-edge circle");

  DigonAttachment out;
  out.net = sew(Q, H, pairs);
  int off = Q.net.n_darts();
  out.net.net.corner_darts = Q.net.corner_darts;
  out.net.net.corner_darts[k] = cyc[(i1 + 1) % m] + off;
  (void)nc;
  out.order_split_min = std::min(r, 6 - r);
  validate_net(out.net.net, NetKind::Fragment);
  return out;
}

// Attach a digon stack to side k: `count` successive half-spheres, each glued
// to the currently exposed side (whose order alternates between r and 6-r).
// Both corners of the side gain integer order `count`.
inline INet attach_digon(const INet& Q, int k, int count) {
  INet R = Q;
  for (int i = 0; i < count; ++i) R = attach_half_sphere(R, k).net;
  return R;
}

}  // namespace sphquad
