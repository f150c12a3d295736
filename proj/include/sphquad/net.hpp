// Nets: colored half-edge cell complexes on a disk.
//
// A net is the preimage, in a disk quadrilateral (or digon / triangle
// building block), of the partition of the sphere by four great circles.
// Combinatorially it is a planar cell complex whose edges carry one of four
// colors (the circle the edge maps to), with:
//   - interior vertices of degree 4, opposite edges sharing a color
//     (monochromatic paths run straight through),
//   - lateral vertices (interior points of sides) of degree 3, the two
//     boundary edges sharing a color,
//   - corners of even degree with edge colors alternating between the two
//     side colors (degree 2(order+1), order = integer part of the angle),
//   - every face a triangle or a quadrilateral, never two faces of equal
//     size sharing an edge.
//
// Representation: darts (directed edges). next[d] = next dart ccw around the
// face left of d; opp[d] = the reversed dart, or -1 when the edge lies on
// the disk boundary. Faces are next-orbits; the outer region is not a face.
// corner_darts lists, in ccw boundary order, the boundary dart leaving each
// designated corner.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sphquad/base.hpp"

namespace sphquad {

enum class VertexType { Corner, Lateral, Interior };

struct Net {
  std::vector<int> next;
  std::vector<int> opp;
  std::vector<int> color;        // 0..3
  std::vector<int> corner_darts;  // ccw boundary order; size 4 for quadrilaterals

  int n_darts() const { return static_cast<int>(next.size()); }
  bool is_boundary(int d) const { return opp[d] < 0; }
};

// ---------------------------------------------------------------------------
// Derived structure
// ---------------------------------------------------------------------------

namespace netdetail {

inline std::vector<int> prev_permutation(const Net& g) {
  std::vector<int> prev(g.next.size(), -1);
  for (int d = 0; d < g.n_darts(); ++d) {
    if (g.next[d] < 0 || g.next[d] >= g.n_darts()) throw InvalidNet("next out of range");
    prev[g.next[d]] = d;
  }
  for (int d = 0; d < g.n_darts(); ++d)
    if (prev[d] < 0) throw InvalidNet("next is not a permutation");
  return prev;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) {
    for (int i = 0; i < n; ++i) p[i] = i;
  }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace netdetail

// Vertex structure computed from a net. vertex_of[d] identifies the origin
// vertex of dart d.
struct NetVertices {
  std::vector<int> vertex_of;             // per dart: origin vertex id
  int n_vertices = 0;
  std::vector<int> degree;                // per vertex: number of edges
  std::vector<bool> on_boundary;          // per vertex
  std::vector<std::vector<int>> out;      // per vertex: outgoing darts (unordered)
};

inline NetVertices compute_vertices(const Net& g) {
  auto prev = netdetail::prev_permutation(g);
  netdetail::UnionFind uf(g.n_darts());
  // Two darts share an origin iff related by rotation around the vertex:
  // sigma(d) = opp(prev(d)) when prev(d) is interior; also origin(next(d)) is
  // the head of d, tied to origin(opp(d)).
  for (int d = 0; d < g.n_darts(); ++d) {
    int pd = prev[d];
    if (!g.is_boundary(pd)) uf.unite(d, g.opp[pd]);
  }
  NetVertices nv;
  nv.vertex_of.assign(g.n_darts(), -1);
  std::map<int, int> id;
  for (int d = 0; d < g.n_darts(); ++d) {
    int r = uf.find(d);
    auto [it, inserted] = id.try_emplace(r, static_cast<int>(id.size()));
    nv.vertex_of[d] = it->second;
  }
  nv.n_vertices = static_cast<int>(id.size());
  nv.degree.assign(nv.n_vertices, 0);
  nv.on_boundary.assign(nv.n_vertices, false);
  nv.out.resize(nv.n_vertices);
  for (int d = 0; d < g.n_darts(); ++d) {
    int v = nv.vertex_of[d];
    nv.out[v].push_back(d);
    if (g.is_boundary(d)) {
      nv.on_boundary[v] = true;
    }
  }
  // Degree: outgoing darts count each edge at the vertex once, except the
  // boundary edge arriving at the vertex, which has no outgoing dart here.
  // Count edges as outgoing darts plus one if the vertex is a boundary
  // vertex (for the incoming boundary edge).
  for (int v = 0; v < nv.n_vertices; ++v)
    nv.degree[v] = static_cast<int>(nv.out[v].size()) + (nv.on_boundary[v] ? 1 : 0);
  // Boundary flag must also catch the head-side vertex of a boundary dart.
  // origin(next(d)) is the head of d; if d is a boundary dart its head is a
  // boundary vertex even if no boundary dart originates there -- impossible
  // on a disk (the boundary is a cycle), but guard in validation instead.
  return nv;
}

// The boundary cycle of darts, starting from `start` (a boundary dart).
// Follows the boundary in face orientation (disk interior on the left).
inline int next_on_boundary(const Net& g, int d) {
  int x = g.next[d];
  int guard = 0;
  while (!g.is_boundary(x)) {
    x = g.next[g.opp[x]];
    if (++guard > g.n_darts()) throw InvalidNet("boundary rotation does not close");
  }
  return x;
}

inline std::vector<int> boundary_cycle(const Net& g, int start) {
  if (!g.is_boundary(start)) throw InvalidNet("boundary_cycle: start dart is interior");
  std::vector<int> cyc;
  int d = start;
  do {
    cyc.push_back(d);
    d = next_on_boundary(g, d);
    if (cyc.size() > g.next.size()) throw InvalidNet("boundary cycle longer than dart count");
  } while (d != start);
  return cyc;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

// What to validate: quadrilateral nets of generic quadrilaterals have four
// non-integer corners; building blocks (digons, triangles with an integer
// corner) relax the corner conditions.
enum class NetKind { Quadrilateral, Fragment };

struct NetReport {
  NetVertices verts;
  std::vector<int> face_of;         // per dart
  std::vector<int> face_size;      // per face
  int n_faces = 0;
  std::vector<int> boundary;        // boundary cycle from corner a0
  std::vector<VertexType> vtype;    // per vertex
  std::vector<int> corner_order;    // per designated corner
  std::vector<int> side_order;      // side j = corners[j] .. corners[j+1]
  std::vector<std::vector<int>> side_darts;  // boundary darts per side
};

inline NetReport validate_net(const Net& g, NetKind kind = NetKind::Quadrilateral) {
  if (g.n_darts() == 0) throw InvalidNet("empty net");
  if (g.opp.size() != g.next.size() || g.color.size() != g.next.size())
    throw InvalidNet("array sizes disagree");
  NetReport rep;
  auto prev = netdetail::prev_permutation(g);

  // opp: involution with matching colors.
  int boundary_darts = 0;
  for (int d = 0; d < g.n_darts(); ++d) {
    if (g.color[d] < 0 || g.color[d] > 3) throw InvalidNet("color out of range");
    if (g.is_boundary(d)) {
      ++boundary_darts;
      continue;
    }
    if (g.opp[d] >= g.n_darts() || g.opp[g.opp[d]] != d || g.opp[d] == d)
      throw InvalidNet("opp is not an involution");
    if (g.color[g.opp[d]] != g.color[d]) throw InvalidNet("edge colors disagree across opp");
  }
  if (boundary_darts == 0) throw InvalidNet("no boundary (net must be a disk)");

  // Faces: next-orbits of size 3 or 4, distinct edge colors within a face.
  rep.face_of.assign(g.n_darts(), -1);
  for (int d0 = 0; d0 < g.n_darts(); ++d0) {
    if (rep.face_of[d0] != -1) continue;
    int fid = rep.n_faces++;
    std::vector<int> cyc;
    int d = d0;
    do {
      rep.face_of[d] = fid;
      cyc.push_back(d);
      d = g.next[d];
      if (cyc.size() > 4) throw InvalidNet("face with more than 4 edges");
    } while (d != d0);
    if (cyc.size() < 3) throw InvalidNet("face with fewer than 3 edges");
    std::set<int> cols;
    for (int x : cyc) cols.insert(g.color[x]);
    if (cols.size() != cyc.size()) throw InvalidNet("face has repeated edge colors");
    rep.face_size.push_back(static_cast<int>(cyc.size()));
  }

  // Triangle/quadrilateral alternation across interior edges.
  for (int d = 0; d < g.n_darts(); ++d) {
    if (g.is_boundary(d)) continue;
    if (rep.face_size[rep.face_of[d]] == rep.face_size[rep.face_of[g.opp[d]]])
      throw InvalidNet("two faces of equal size share an edge");
  }

  // Vertices.
  rep.verts = compute_vertices(g);
  const auto& nv = rep.verts;

  // Connectivity + disk topology via Euler characteristic.
  {
    std::vector<int> seen(g.n_darts(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
      int d = stack.back();
      stack.pop_back();
      for (int nb : {g.next[d], g.opp[d]}) {
        if (nb >= 0 && !seen[nb]) {
          seen[nb] = 1;
          ++cnt;
          stack.push_back(nb);
        }
      }
    }
    if (cnt != g.n_darts()) throw InvalidNet("net is not connected");
    int E = (g.n_darts() - boundary_darts) / 2 + boundary_darts;
    int chi = nv.n_vertices - E + rep.n_faces;
    if (chi != 1) throw InvalidNet("net is not a disk (Euler characteristic != 1)");
  }

  // Designated corners: boundary darts, distinct vertices, in ccw order.
  if (g.corner_darts.empty()) throw InvalidNet("no designated corners");
  for (int cd : g.corner_darts)
    if (cd < 0 || cd >= g.n_darts() || !g.is_boundary(cd))
      throw InvalidNet("corner dart is not a boundary dart");
  rep.boundary = boundary_cycle(g, g.corner_darts[0]);
  if (static_cast<int>(rep.boundary.size()) != boundary_darts)
    throw InvalidNet("boundary is not a single cycle");
  std::set<int> corner_vertices;
  for (int cd : g.corner_darts) corner_vertices.insert(nv.vertex_of[cd]);
  if (corner_vertices.size() != g.corner_darts.size())
    throw InvalidNet("designated corners are not distinct vertices");
  {
    // Corners must appear along the boundary in list order.
    std::vector<int> order;
    for (int d : rep.boundary) {
      auto it = std::find(g.corner_darts.begin(), g.corner_darts.end(), d);
      if (it != g.corner_darts.end())
        order.push_back(static_cast<int>(it - g.corner_darts.begin()));
    }
    if (order.size() != g.corner_darts.size())
      throw InvalidNet("corner darts missing from boundary cycle");
    for (size_t j = 0; j < order.size(); ++j)
      if (order[j] != static_cast<int>(j)) throw InvalidNet("corners out of ccw order");
  }
  if (kind == NetKind::Quadrilateral && g.corner_darts.size() != 4)
    throw InvalidNet("quadrilateral net must have exactly 4 corners");

  // Vertex types.
  rep.vtype.assign(nv.n_vertices, VertexType::Interior);
  for (int v = 0; v < nv.n_vertices; ++v) {
    if (!nv.on_boundary[v]) {
      if (nv.degree[v] != 4) throw InvalidNet("interior vertex degree != 4");
      // Straightness: the two edges of each color must be "opposite": rotate
      // around the vertex; colors must alternate c1,c2,c1,c2.
      // Rotation around an interior vertex: sigma(d) = opp(prev(d)).
      int d0 = nv.out[v][0];
      int d1 = g.opp[prev[d0]];
      int d2 = g.opp[prev[d1]];
      int d3 = g.opp[prev[d2]];
      if (g.opp[prev[d3]] != d0) throw InvalidNet("interior vertex rotation does not close");
      if (g.color[d0] != g.color[d2] || g.color[d1] != g.color[d3] ||
          g.color[d0] == g.color[d1])
        throw InvalidNet("interior vertex without straight monochromatic continuation");
      continue;
    }
    rep.vtype[v] = VertexType::Lateral;  // refined below
  }

  // Walk the boundary, recording for each boundary vertex its incoming and
  // outgoing boundary darts, and classify.
  std::map<int, std::pair<int, int>> in_out;  // vertex -> (incoming, outgoing)
  for (int d : rep.boundary) {
    int tail = nv.vertex_of[d];
    int head = nv.vertex_of[g.next[d]];
    in_out[tail].second = d;
    in_out[head].first = d;
    (void)head;
  }
  for (auto& [v, io] : in_out) {
    bool designated = corner_vertices.count(v) > 0;
    int deg = nv.degree[v];
    int cin = g.color[io.first], cout = g.color[io.second];
    if (designated) {
      rep.vtype[v] = VertexType::Corner;
      if (kind == NetKind::Quadrilateral) {
        if (deg % 2 != 0) throw InvalidNet("corner with odd degree");
        if (cin == cout) throw InvalidNet("corner whose two sides share a color");
        // Colors around the corner alternate between the two side colors.
        int d = io.second;
        int expect = cout;
        for (int k = 0; k < deg - 1; ++k) {
          if (g.color[d] != expect) throw InvalidNet("corner edge colors do not alternate");
          expect = (expect == cout) ? cin : cout;
          if (g.is_boundary(prev[d]) ) break;
          d = g.opp[prev[d]];
        }
      }
    } else {
      if (deg != 3) throw InvalidNet("non-corner boundary vertex with degree != 3");
      if (cin != cout) throw InvalidNet("lateral vertex whose boundary edges differ in color");
      rep.vtype[v] = VertexType::Lateral;
    }
  }

  // Corner orders and side orders.
  size_t nc = g.corner_darts.size();
  rep.corner_order.resize(nc);
  for (size_t j = 0; j < nc; ++j) {
    int v = nv.vertex_of[g.corner_darts[j]];
    // Even degree d: non-integer corner, angle in (d/2-1, d/2), order d/2-1.
    // Odd degree d (fragments only): integer corner, angle exactly (d-1)/2.
    rep.corner_order[j] = nv.degree[v] % 2 == 0 ? nv.degree[v] / 2 - 1 : (nv.degree[v] - 1) / 2;
  }
  rep.side_order.assign(nc, 0);
  rep.side_darts.assign(nc, {});
  {
    size_t side = 0;
    for (int d : rep.boundary) {
      if (d == g.corner_darts[(side + 1) % nc] && !rep.side_darts[side].empty()) ++side;
      // (corner_darts[0] == boundary front; advance when hitting next corner)
      if (side >= nc) throw InvalidNet("side walk overflow");
      rep.side_darts[side].push_back(d);
      ++rep.side_order[side];
    }
    if (side != nc - 1) throw InvalidNet("boundary does not pass all corners in order");
  }
  for (size_t j = 0; j < nc; ++j) {
    const auto& sd = rep.side_darts[j];
    for (int d : sd)
      if (g.color[d] != g.color[sd[0]]) throw InvalidNet("side is not monochromatic");
    if (kind == NetKind::Quadrilateral && rep.side_order[j] % 3 == 0)
      throw InvalidNet("side order divisible by 3");
  }
  if (kind == NetKind::Quadrilateral) {
    // Adjacent sides lie on different circles (corner colors differ was
    // checked); opposite sides may share a circle only if... they cannot:
    // the four sides are mapped to the four distinct circles.
    std::set<int> side_colors;
    for (size_t j = 0; j < nc; ++j) side_colors.insert(g.color[rep.side_darts[j][0]]);
    if (side_colors.size() != 4) throw InvalidNet("sides do not use four distinct colors");
  }
  return rep;
}

inline std::vector<int> corner_orders(const Net& g, NetKind kind = NetKind::Quadrilateral) {
  return validate_net(g, kind).corner_order;
}
inline std::vector<int> side_orders(const Net& g, NetKind kind = NetKind::Quadrilateral) {
  return validate_net(g, kind).side_order;
}

// ---------------------------------------------------------------------------
// Arcs
// ---------------------------------------------------------------------------

enum class ArcKind {
  Lateral,    // a whole side
  Loop,       // closed, attached to one corner
  Diagonal,   // interior, corner to (distinct) corner
  Separator,  // interior, corner to lateral vertex
  OneSided,   // interior, lateral to lateral on the same side
  TwoSided,   // interior, lateral to lateral on different sides
};

struct Arc {
  ArcKind kind;
  int color = -1;
  std::vector<int> darts;  // one dart per edge, in path order
  int end_corner_a = -1, end_corner_b = -1;  // designated-corner indices (or -1)
  int end_side_a = -1, end_side_b = -1;      // side indices of lateral endpoints (or -1)
};

// Decompose the edges of the net into maximal monochromatic arcs. Every edge
// belongs to exactly one arc; arcs stop at corners and at vertices where the
// color does not continue (lateral vertices seen from their middle edge).
inline std::vector<Arc> decompose_arcs(const Net& g, NetKind kind = NetKind::Quadrilateral) {
  NetReport rep = validate_net(g, kind);
  const auto& nv = rep.verts;
  auto prev = netdetail::prev_permutation(g);
  size_t nc = g.corner_darts.size();

  std::map<int, int> corner_index_of_vertex;
  for (size_t j = 0; j < nc; ++j)
    corner_index_of_vertex[nv.vertex_of[g.corner_darts[j]]] = static_cast<int>(j);
  // Side index of each lateral vertex.
  std::map<int, int> side_of_vertex;
  for (size_t j = 0; j < nc; ++j)
    for (size_t k = 1; k < rep.side_darts[j].size(); ++k)
      side_of_vertex[nv.vertex_of[rep.side_darts[j][k]]] = static_cast<int>(j);

  // Continuation of the monochromatic path through the head of dart d:
  // the dart leaving head(d) with color(d), excluding the reversal of d.
  // Returns -1 when the path stops (corner, or no same-color continuation).
  auto continue_through = [&](int d) -> int {
    int head = nv.vertex_of[g.next[d]];
    if (corner_index_of_vertex.count(head)) return -1;
    for (int out : nv.out[head]) {
      if (!g.is_boundary(out) && g.opp[out] == d) continue;  // reversal
      if (g.color[out] == g.color[d]) {
        // Exclude the reversal also in the boundary case: out reverses d iff
        // they form the same edge; boundary edges have a single dart, so
        // only the opp check above applies.
        return out;
      }
    }
    // The incoming boundary edge at head has no outgoing dart; if d is that
    // edge's continuation across a lateral vertex the outgoing boundary dart
    // was found above, so reaching here means the path stops.
    return -1;
  };

  std::vector<char> used(g.n_darts(), 0);
  auto mark = [&](int d) {
    used[d] = 1;
    if (!g.is_boundary(d)) used[g.opp[d]] = 1;
  };

  std::vector<Arc> arcs;
  auto emit = [&](std::vector<int> path, bool closed) {
    Arc a;
    a.color = g.color[path[0]];
    a.darts = std::move(path);
    int tail_v = nv.vertex_of[a.darts.front()];
    int head_v = nv.vertex_of[g.next[a.darts.back()]];
    bool boundary_arc = g.is_boundary(a.darts.front());
    if (closed) {
      a.kind = ArcKind::Loop;
      a.end_corner_a = a.end_corner_b =
          corner_index_of_vertex.count(tail_v) ? corner_index_of_vertex[tail_v] : -1;
    } else if (boundary_arc) {
      a.kind = ArcKind::Lateral;
      a.end_corner_a = corner_index_of_vertex.at(tail_v);
      a.end_corner_b = corner_index_of_vertex.at(head_v);
    } else {
      bool ca = corner_index_of_vertex.count(tail_v) > 0;
      bool cb = corner_index_of_vertex.count(head_v) > 0;
      if (ca) a.end_corner_a = corner_index_of_vertex[tail_v];
      if (cb) a.end_corner_b = corner_index_of_vertex[head_v];
      if (!ca) a.end_side_a = side_of_vertex.count(tail_v) ? side_of_vertex[tail_v] : -1;
      if (!cb) a.end_side_b = side_of_vertex.count(head_v) ? side_of_vertex[head_v] : -1;
      if (ca && cb)
        a.kind = (a.end_corner_a == a.end_corner_b) ? ArcKind::Loop : ArcKind::Diagonal;
      else if (ca || cb)
        a.kind = ArcKind::Separator;
      else
        a.kind = (a.end_side_a == a.end_side_b) ? ArcKind::OneSided : ArcKind::TwoSided;
    }
    arcs.push_back(std::move(a));
  };

  // Reverse of a dart for path-walking: opp when interior; boundary darts
  // reverse to themselves conceptually (walk only forward from an endpoint).
  auto backward_from = [&](int d) -> int {
    // A dart continuing backwards through the tail of d: find dart x with
    // continue_through(x) == d. Equivalently continue through opp direction.
    int tail = nv.vertex_of[d];
    if (corner_index_of_vertex.count(tail)) return -1;
    for (int out : nv.out[tail]) {
      if (out == d) continue;
      if (g.color[out] != g.color[d]) continue;
      // out leaves the same vertex with the same color: the path enters the
      // tail along reverse(out).
      if (!g.is_boundary(out)) return g.opp[out];
      // `out` is a boundary dart leaving tail: its reversal is not
      // represented; walk the path in the other direction instead.
      return -2 - out;  // encoded: boundary continuation dart
    }
    // Check the incoming boundary edge at tail (no outgoing dart for it).
    for (int dd : rep.boundary)
      if (nv.vertex_of[g.next[dd]] == tail && g.color[dd] == g.color[d] && dd != d) return dd;
    return -1;
  };

  for (int d0 = 0; d0 < g.n_darts(); ++d0) {
    if (used[d0]) continue;
    // Walk backward to an endpoint (or detect a closed loop).
    int start = d0;
    {
      std::set<int> seen{start};
      while (true) {
        int b = backward_from(start);
        if (b == -1) break;
        if (b <= -2) {
          start = -2 - b;
          if (seen.count(start)) break;
          seen.insert(start);
          continue;
        }
        if (seen.count(b)) break;  // closed
        seen.insert(b);
        start = b;
      }
    }
    // Walk forward from start.
    std::vector<int> path{start};
    mark(start);
    bool closed = false;
    while (true) {
      int nd = continue_through(path.back());
      if (nd == -1) break;
      if (nd == start || nd == path.front()) {
        closed = true;
        break;
      }
      if (used[nd]) break;
      path.push_back(nd);
      mark(nd);
    }
    if (!closed) {
      // A loop not through a corner would have been caught as closed; loops
      // attached to a corner stop there on both ends and are handled: their
      // start is the dart leaving the corner.
      int tail_v = nv.vertex_of[path.front()];
      int head_v = nv.vertex_of[g.next[path.back()]];
      if (tail_v == head_v && corner_index_of_vertex.count(tail_v)) closed = true;
    }
    emit(std::move(path), closed);
  }
  return arcs;
}

inline bool has_diagonal_arc(const Net& g) {
  for (const auto& a : decompose_arcs(g))
    if (a.kind == ArcKind::Diagonal) return true;
  return false;
}
inline bool has_loop_arc(const Net& g) {
  for (const auto& a : decompose_arcs(g))
    if (a.kind == ArcKind::Loop) return true;
  return false;
}
// Irreducible: no diagonal arc. Primitive: irreducible and no loop.
inline bool is_irreducible(const Net& g) { return !has_diagonal_arc(g); }
inline bool is_primitive(const Net& g) { return !has_diagonal_arc(g) && !has_loop_arc(g); }

// ---------------------------------------------------------------------------
// Canonical forms and isomorphism
// ---------------------------------------------------------------------------

// Canonical signature by BFS renumbering from a fixed start dart. Colors are
// renamed in order of first appearance, which quotients by exactly the color
// permutations compatible with the dart bijection (for quadrilateral nets
// every color is pinned by a side, so no spurious identifications arise).
inline std::vector<int> bfs_signature(const Net& g, int start) {
  std::vector<int> id(g.n_darts(), -1);
  std::vector<int> order;
  order.reserve(g.n_darts());
  id[start] = 0;
  order.push_back(start);
  for (size_t q = 0; q < order.size(); ++q) {
    int d = order[q];
    for (int nb : {g.next[d], g.opp[d]}) {
      if (nb >= 0 && id[nb] == -1) {
        id[nb] = static_cast<int>(order.size());
        order.push_back(nb);
      }
    }
  }
  if (order.size() != g.next.size())
    throw InvalidNet("net not connected under next/opp");
  std::array<int, 4> cmap{-1, -1, -1, -1};
  int next_color = 0;
  std::vector<int> sig;
  sig.reserve(3 * g.n_darts() + 8);
  for (int d : order) {
    sig.push_back(id[g.next[d]]);
    sig.push_back(g.is_boundary(d) ? -1 : id[g.opp[d]]);
    int c = g.color[d];
    if (cmap[c] == -1) cmap[c] = next_color++;
    sig.push_back(cmap[c]);
  }
  for (int cd : g.corner_darts) sig.push_back(id[cd]);
  return sig;
}

// Rotate corner labels by r (a_j -> a_{j+r}).
inline Net rotate_labels(const Net& g, int r) {
  Net h = g;
  size_t nc = g.corner_darts.size();
  for (size_t j = 0; j < nc; ++j) h.corner_darts[j] = g.corner_darts[(j + r) % nc];
  return h;
}

// Mirror image: reverse the orientation. Dart d comes to represent the old
// dart traversed backwards, so new next = old prev. Corner a0 is kept and
// the remaining corners reverse their cyclic order.
inline Net reflect(const Net& g) {
  Net h;
  h.opp = g.opp;
  h.color = g.color;
  h.next.assign(g.n_darts(), -1);
  for (int d = 0; d < g.n_darts(); ++d) h.next[g.next[d]] = d;
  // Old boundary dart d ran tail->head; reversed it runs head->tail. The new
  // boundary dart leaving old corner vertex a_j is the reversal of the old
  // dart that arrived at a_j, i.e. (old) prev-on-boundary of corner dart.
  auto old_cycle = boundary_cycle(g, g.corner_darts[0]);
  std::map<int, int> arriving;  // corner dart -> boundary dart arriving at it
  for (size_t i = 0; i < old_cycle.size(); ++i) {
    int d = old_cycle[i];
    int nd = old_cycle[(i + 1) % old_cycle.size()];
    arriving[nd] = d;
  }
  size_t nc = g.corner_darts.size();
  h.corner_darts.resize(nc);
  for (size_t j = 0; j < nc; ++j) {
    // New corner a_j = old corner a_{-j}; its outgoing dart (in the new
    // orientation) is the old incoming dart at that corner (same dart id,
    // now traversed backwards).
    int old_corner = g.corner_darts[(nc - j) % nc];
    h.corner_darts[j] = arriving.at(old_corner);
  }
  return h;
}

inline std::vector<int> canonical_form_labeled(const Net& g) {
  return bfs_signature(g, g.corner_darts[0]);
}

// Canonical form under relabeling: all rotations, optionally reflections.
inline std::vector<int> canonical_form_unlabeled(const Net& g, bool allow_reflection = true) {
  std::vector<int> best;
  size_t nc = g.corner_darts.size();
  auto consider = [&](const Net& h) {
    for (size_t r = 0; r < nc; ++r) {
      auto sig = bfs_signature(rotate_labels(h, static_cast<int>(r)), h.corner_darts[r]);
      if (best.empty() || sig < best) best = sig;
    }
  };
  consider(g);
  if (allow_reflection) consider(reflect(g));
  return best;
}

inline bool is_isomorphic_labeled(const Net& a, const Net& b) {
  return canonical_form_labeled(a) == canonical_form_labeled(b);
}
inline bool is_isomorphic_unlabeled(const Net& a, const Net& b, bool allow_reflection = true) {
  return canonical_form_unlabeled(a, allow_reflection) ==
         canonical_form_unlabeled(b, allow_reflection);
}

}  // namespace sphquad
