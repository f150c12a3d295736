// Chains of quadrilaterals sharing fixed angles: configuration-level
// transitions through triple intersections, the catalogued net-transition
// diagrams, maximal chain assembly, end degeneration kinds, and lower-bound
// counting of quadrilaterals with given angles and modulus.
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sphquad/angles.hpp"
#include "sphquad/catalogue.hpp"

namespace sphquad {

// ---------------------------------------------------------------------------
// Configuration-level transitions
// ---------------------------------------------------------------------------

// Passing a triple intersection replaces the two fixed angles at the vertices
// that stay clear of the intersection by their complements. The same
// direction leads back: the reverse move complements the same pair, and its
// direction test holds automatically for any face inside the pyramid.
template <class T>
std::array<T, 4> transition(const std::array<T, 4>& q, Direction dir) {
  auto dirs = degeneration_directions(q);  // throws BoundaryTie on equality
  if (std::find(dirs.begin(), dirs.end(), dir) == dirs.end())
    throw DirectionBlocked(direction_name(dir) + " is not a permitted degeneration");
  std::array<T, 4> out = q;
  auto keep = untouched_indices(dir);
  for (int i = 0; i < 4; ++i)
    if (i != keep[0] && i != keep[1]) out[i] = T(1) - q[i];
  if (!pyramid_membership(out).interior())
    throw TargetInfeasible("face angles after the " + direction_name(dir) +
                           " move leave the pyramid");
  return out;
}

// The direction of a catalogued net transition, read off the two complement
// patterns: they differ in exactly one adjacent pair of positions.
inline Direction direction_between(const std::array<int, 4>& a, const std::array<int, 4>& b) {
  std::vector<int> diff;
  for (int i = 0; i < 4; ++i)
    if (a[i] != b[i]) diff.push_back(i);
  if (diff.size() == 2) {
    if (diff[0] == 0 && diff[1] == 1) return Direction::Top;
    if (diff[0] == 2 && diff[1] == 3) return Direction::Bottom;
    if (diff[0] == 1 && diff[1] == 2) return Direction::Left;
    if (diff[0] == 0 && diff[1] == 3) return Direction::Right;
  }
  throw Error("complement patterns do not differ in an adjacent pair");
}

// ---------------------------------------------------------------------------
// Catalogued transition diagrams
// ---------------------------------------------------------------------------

struct ChainDiagram {
  std::string name;
  std::array<int, 4> orders{};               // corner integer parts of all nodes
  std::vector<NetLabel> nodes;
  std::vector<std::pair<int, int>> edges;    // indices into nodes
};

namespace chaindetail {

inline NetLabel L(const std::string& s) { return parse_label(s); }

inline ChainDiagram make_diagram(std::string name, std::array<int, 4> orders,
                                 std::vector<std::string> nodes,
                                 std::vector<std::pair<int, int>> edges) {
  ChainDiagram d;
  d.name = std::move(name);
  d.orders = orders;
  for (const auto& s : nodes) d.nodes.push_back(L(s));
  d.edges = std::move(edges);
  return d;
}

}  // namespace chaindetail

// The alternating path X_{0,n}, X'_{0,n-1}, X_{1,n-1}, ..., X_{n,0} for
// quadrilaterals with corner integer parts (0,0,0,n).
inline const ChainDiagram& x_ladder(int n) {
  if (n < 1) throw UncataloguedLabel("x ladder needs n >= 1");
  static std::map<int, ChainDiagram> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  ChainDiagram d;
  d.name = "x-ladder";
  d.orders = {0, 0, 0, n};
  for (int m = 0; m < n; ++m) {
    NetLabel x;
    x.family = Family::X;
    x.k = m;
    x.l = n - m;
    d.nodes.push_back(x);
    NetLabel xp;
    xp.family = Family::Xp;
    xp.k = m;
    xp.l = n - m - 1;
    d.nodes.push_back(xp);
  }
  NetLabel last;
  last.family = Family::X;
  last.k = n;
  last.l = 0;
  d.nodes.push_back(last);
  for (int i = 0; i + 1 < static_cast<int>(d.nodes.size()); ++i) d.edges.push_back({i, i + 1});
  return cache.emplace(n, std::move(d)).first->second;
}

// The star of quadrilaterals around Z'_00, corner integer parts (0,1,0,1).
inline const ChainDiagram& zp00_star() {
  static const ChainDiagram d = chaindetail::make_diagram(
      "zprime00-star", {0, 1, 0, 1},
      {"Z'[0,0]", "Z[1,0]", "Zbar[0,1]", "Z[0,1]", "Zbar[1,0]", "U[1,1]", "Ubar[1,1]"},
      {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {2, 5}, {3, 6}, {4, 6}});
  return d;
}

// The diagram around Z_11, corner integer parts (0,1,0,2).
inline const ChainDiagram& z11_diagram() {
  static const ChainDiagram d = chaindetail::make_diagram(
      "z11", {0, 1, 0, 2},
      {"Z[1,1]", "Z'[1,0]", "Z'[0,1]", "V[2,1]", "V'[2,1]", "Vbar[2,1]", "V'bar[2,1]",
       "U[2,1]", "Ubar[2,1]"},
      {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}, {3, 7}, {4, 7}, {5, 8}, {6, 8}});
  return d;
}

// The diagram around Z'_11, corner integer parts (0,1,0,3).
inline const ChainDiagram& zp11_diagram() {
  static const ChainDiagram d = chaindetail::make_diagram(
      "zprime11", {0, 1, 0, 3},
      {"Z'[1,1]", "Z[2,1]", "Z[1,2]", "Z'[2,0]", "Z'[0,2]", "V[3,1]", "V'[3,1]",
       "Vbar[3,1]", "V'bar[3,1]", "U[3,1]", "Ubar[3,1]"},
      {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {3, 6}, {4, 7}, {4, 8}, {5, 9}, {6, 9},
       {7, 10}, {8, 10}});
  return d;
}

// The diagram around W_22, corner integer parts (0,2,0,2).
inline const ChainDiagram& w22_diagram() {
  static const ChainDiagram d = chaindetail::make_diagram(
      "w22", {0, 2, 0, 2}, {"W[2,2]", "V[2,2]", "V'[2,2]", "U[2,2]"},
      {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  return d;
}

// The single edge R_11 -- S_11, corner integer parts (0,0,1,1).
inline const ChainDiagram& rs_diagram() {
  static const ChainDiagram d =
      chaindetail::make_diagram("rs", {0, 0, 1, 1}, {"R[1,1]", "S[1,1]"}, {{0, 1}});
  return d;
}

// Diagram carrying quadrilaterals with the given corner integer parts.
inline const ChainDiagram& diagram_for_orders(const std::array<int, 4>& orders) {
  if (orders[0] == 0 && orders[1] == 0 && orders[2] == 0 && orders[3] >= 1)
    return x_ladder(orders[3]);
  if (orders == std::array<int, 4>{0, 1, 0, 1}) return zp00_star();
  if (orders == std::array<int, 4>{0, 1, 0, 2}) return z11_diagram();
  if (orders == std::array<int, 4>{0, 1, 0, 3}) return zp11_diagram();
  if (orders == std::array<int, 4>{0, 2, 0, 2}) return w22_diagram();
  if (orders == std::array<int, 4>{0, 0, 1, 1}) return rs_diagram();
  std::string s;
  for (int o : orders) s += std::to_string(o) + ",";
  throw UncataloguedLabel("no transition diagram for corner integer parts (" + s + ")");
}

// ---------------------------------------------------------------------------
// End degeneration
// ---------------------------------------------------------------------------

enum class EndKind { Modulus0, ModulusInf, QuadrupleBoundary, NonSphericalLimit };

inline std::string end_kind_name(EndKind k) {
  switch (k) {
    case EndKind::Modulus0: return "modulus->0";
    case EndKind::ModulusInf: return "modulus->inf";
    case EndKind::QuadrupleBoundary: return "quadruple-boundary";
    case EndKind::NonSphericalLimit: return "non-spherical-limit";
  }
  return "?";
}

namespace chaindetail {

// Deforming the configuration in a given direction contracts to a point the
// pair of antipodal triangles bounded by the three circles of the triple
// intersection. The quadrilateral conformally degenerates exactly when the
// net has a single-edge arc on one of those triangles whose two ends lie on
// opposite sides of the quadrilateral and off the fourth circle: the arc
// contracts, pulling the two sides together. Sides 0 and 2 meeting drives the
// modulus to 0; sides 1 and 3 meeting drives it to infinity. Without such an
// arc the limit is a non-degenerate quadrilateral over the non-generic
// configuration.
inline std::optional<EndKind> degeneration_at(const NetLabel& lbl, Direction dir) {
  static std::map<std::pair<std::string, int>, std::optional<EndKind>> cache;
  auto key = std::make_pair(print_label(lbl), static_cast<int>(dir));
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  INet Q = build_inet_from_label(lbl);
  NetReport rep = validate_net(Q.net, NetKind::Quadrilateral);
  const PartitionTemplate& T = partition_template();

  // The side whose circle stays out of the triple intersection: the two
  // corners kept by the move lie on the other three circles.
  int excl_side = 0;
  switch (dir) {
    case Direction::Top: excl_side = 0; break;
    case Direction::Bottom: excl_side = 2; break;
    case Direction::Left: excl_side = 1; break;
    case Direction::Right: excl_side = 3; break;
  }
  int excl_circle = T.circle_of(Q.pimage[rep.side_darts[excl_side][0]]);

  std::set<int> shrinking;
  for (size_t f = 0; f < T.arr.faces.size(); ++f) {
    const auto& fd = T.arr.faces[f].darts;
    if (fd.size() != 3) continue;
    bool on_excl = false;
    for (int d : fd) on_excl = on_excl || T.circle_of(d) == excl_circle;
    if (on_excl) continue;
    for (int d : fd) {
      shrinking.insert(d);
      shrinking.insert(T.twin(d));
    }
  }

  const NetVertices& nv = rep.verts;
  std::vector<std::set<int>> sides(nv.n_vertices);
  for (int j = 0; j < 4; ++j)
    for (int d : rep.side_darts[j]) {
      sides[nv.vertex_of[d]].insert(j);
      sides[nv.vertex_of[Q.net.next[d]]].insert(j);
    }

  std::optional<EndKind> out;
  for (int d = 0; d < Q.net.n_darts(); ++d) {
    if (!shrinking.count(Q.pimage[d])) continue;
    int u = nv.vertex_of[d], v = nv.vertex_of[Q.net.next[d]];
    auto end_on_excl = [&](int dart) {
      const auto& av = T.arr.vertices[T.arr.darts[Q.pimage[dart]].from];
      return av.ci == excl_circle || av.cj == excl_circle;
    };
    if (end_on_excl(d) || end_on_excl(Q.net.next[d])) continue;
    for (int m = 0; m < 2; ++m) {
      if ((sides[u].count(m) && sides[v].count(m + 2)) ||
          (sides[u].count(m + 2) && sides[v].count(m))) {
        EndKind k = m == 0 ? EndKind::Modulus0 : EndKind::ModulusInf;
        if (out && *out != k)
          throw Error("contracting arcs join both pairs of opposite sides");
        out = k;
      }
    }
  }
  return cache.emplace(key, out).first->second;
}

inline bool same_node(const NetLabel& a, const NetLabel& b) {
  return a.family == b.family && a.barred == b.barred && a.k == b.k && a.l == b.l;
}

// Diagram containing the label as a node, with the node index.
inline std::pair<const ChainDiagram*, int> locate(const NetLabel& lbl) {
  std::vector<const ChainDiagram*> candidates;
  if (lbl.family == Family::X && !lbl.barred)
    candidates.push_back(&x_ladder(lbl.k + lbl.l));
  else if (lbl.family == Family::Xp && !lbl.barred)
    candidates.push_back(&x_ladder(lbl.k + lbl.l + 1));
  else
    candidates = {&zp00_star(), &z11_diagram(), &zp11_diagram(), &w22_diagram(),
                  &rs_diagram()};
  for (const ChainDiagram* d : candidates)
    for (size_t i = 0; i < d->nodes.size(); ++i)
      if (same_node(d->nodes[i], lbl)) return {d, static_cast<int>(i)};
  throw UncataloguedLabel(print_label(lbl));
}

}  // namespace chaindetail

// ---------------------------------------------------------------------------
// Net-level neighbors
// ---------------------------------------------------------------------------

struct NetNeighbor {
  NetLabel label;
  Direction dir;
};

// Catalogued transitions available from a feasible net at the given angles:
// an edge of the diagram is permitted exactly when both of its endpoints are
// feasible and the move does not conformally degenerate the source.
// Pseudo-diagonals and digons ride along unchanged, but a digon can carry a
// contracting arc that degenerates its host at a triple intersection an
// undecorated net would pass through.
template <class T>
std::vector<NetNeighbor> net_neighbors(const NetLabel& lbl, const AngleVec<T>& angles) {
  auto [diagram, index] = chaindetail::locate(lbl);
  std::vector<NetNeighbor> out;
  if (!net_feasible(lbl, angles).feasible) return out;
  for (auto [u, v] : diagram->edges) {
    if (u != index && v != index) continue;
    const NetLabel& other = diagram->nodes[u == index ? v : u];
    if (!net_feasible(other, angles).feasible) continue;
    Direction dir = direction_between(complement_pattern(lbl), complement_pattern(other));
    if (chaindetail::degeneration_at(lbl, dir)) continue;
    out.push_back({other, dir});
  }
  return out;
}

struct ChainEnd {
  EndKind kind = EndKind::NonSphericalLimit;
  std::optional<Direction> dir;  // degeneration direction; absent on a tie
};

namespace chaindetail {

// Permitted vertical / horizontal degeneration directions of a face, with a
// tie reported as absent (quadruple-intersection boundary).
template <class T>
std::optional<Direction> vertical_direction(const std::array<T, 4>& q) {
  T ab = q[0] + q[1], cd = q[2] + q[3];
  if (ab == cd) return std::nullopt;
  return ab > cd ? Direction::Bottom : Direction::Top;
}
template <class T>
std::optional<Direction> horizontal_direction(const std::array<T, 4>& q) {
  T ad = q[0] + q[3], bc = q[1] + q[2];
  if (ad == bc) return std::nullopt;
  return ad > bc ? Direction::Left : Direction::Right;
}

inline bool is_vertical(Direction d) {
  return d == Direction::Top || d == Direction::Bottom;
}

template <class T>
ChainEnd make_end(const NetLabel& lbl, const std::array<T, 4>& q,
                  std::optional<Direction> edge_dir) {
  // The free slot is the orientation class not taken by the chain edge.
  std::optional<Direction> free;
  if (edge_dir && is_vertical(*edge_dir))
    free = horizontal_direction(q);
  else if (edge_dir)
    free = vertical_direction(q);
  else
    throw std::logic_error("make_end needs the incident edge direction");
  ChainEnd end;
  end.dir = free;
  end.kind = free ? degeneration_at(lbl, *free).value_or(EndKind::NonSphericalLimit)
                  : EndKind::QuadrupleBoundary;
  return end;
}

}  // namespace chaindetail

// ---------------------------------------------------------------------------
// Chains
// ---------------------------------------------------------------------------

struct Chain {
  std::vector<NetLabel> nets;            // ordered low end -> high end
  std::vector<Direction> transitions;    // one per consecutive pair
  ChainEnd low, high;
  int length() const { return static_cast<int>(nets.size()) - 1; }
};

// All maximal chains of quadrilaterals with the given angles: the feasible
// nodes of the matching diagram, split into maximal runs joined by permitted
// transitions. Chains are oriented so the low end carries the
// lexicographically smallest degeneration direction.
template <class T>
std::vector<Chain> build_chains(const AngleVec<T>& angles) {
  const ChainDiagram& diagram = diagram_for_orders(angles.order);
  int n = static_cast<int>(diagram.nodes.size());

  std::vector<char> feasible(n, 0);
  std::vector<std::array<T, 4>> fixed(n);
  for (int i = 0; i < n; ++i) {
    auto f = net_feasible(diagram.nodes[i], angles);
    feasible[i] = f.feasible;
    fixed[i] = f.fixed.value;
  }

  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : diagram.edges) {
    if (!feasible[u] || !feasible[v]) continue;
    Direction dir = direction_between(complement_pattern(diagram.nodes[u]),
                                      complement_pattern(diagram.nodes[v]));
    if (chaindetail::degeneration_at(diagram.nodes[u], dir) ||
        chaindetail::degeneration_at(diagram.nodes[v], dir))
      continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (int i = 0; i < n; ++i)
    if (adj[i].size() > 2)
      throw Error("feasible transitions branch at " + print_label(diagram.nodes[i]));

  std::vector<char> used(n, 0);
  std::vector<Chain> out;
  for (int s = 0; s < n; ++s) {
    if (!feasible[s] || used[s] || adj[s].size() == 2) continue;  // start at a path end
    std::vector<int> path{s};
    used[s] = 1;
    int cur = s, prev = -1;
    while (true) {
      int next = -1;
      for (int w : adj[cur])
        if (w != prev) next = w;
      if (next < 0) break;
      if (used[next]) throw Error("feasible transitions form a cycle");
      path.push_back(next);
      used[next] = 1;
      prev = cur;
      cur = next;
    }

    Chain c;
    std::vector<Direction> dirs;
    for (size_t i = 0; i + 1 < path.size(); ++i)
      dirs.push_back(direction_between(complement_pattern(diagram.nodes[path[i]]),
                                       complement_pattern(diagram.nodes[path[i + 1]])));

    if (path.size() == 1) {
      // Both degeneration slots are free; order the ends by direction name.
      const NetLabel& lbl = diagram.nodes[path[0]];
      const auto& q = fixed[path[0]];
      auto mk = [&](std::optional<Direction> d) {
        ChainEnd e;
        e.dir = d;
        e.kind = d ? chaindetail::degeneration_at(lbl, *d).value_or(EndKind::NonSphericalLimit)
                   : EndKind::QuadrupleBoundary;
        return e;
      };
      ChainEnd ev = mk(chaindetail::vertical_direction(q));
      ChainEnd eh = mk(chaindetail::horizontal_direction(q));
      auto key = [](const ChainEnd& e) {
        return e.dir ? direction_name(*e.dir) : std::string("~tie");
      };
      c.low = key(ev) <= key(eh) ? ev : eh;
      c.high = key(ev) <= key(eh) ? eh : ev;
      c.nets = {lbl};
    } else {
      bool reverse = false;
      std::string first = direction_name(dirs.front()), last = direction_name(dirs.back());
      if (last < first)
        reverse = true;
      else if (last == first &&
               print_label(diagram.nodes[path.back()]) < print_label(diagram.nodes[path.front()]))
        reverse = true;
      if (reverse) {
        std::reverse(path.begin(), path.end());
        std::reverse(dirs.begin(), dirs.end());
      }
      for (int i : path) c.nets.push_back(diagram.nodes[i]);
      c.transitions = dirs;
      c.low = chaindetail::make_end(diagram.nodes[path.front()], fixed[path.front()],
                                    std::optional<Direction>(dirs.front()));
      c.high = chaindetail::make_end(diagram.nodes[path.back()], fixed[path.back()],
                                     std::optional<Direction>(dirs.back()));
    }
    out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lower bounds
// ---------------------------------------------------------------------------

// Counts derived from the chain ends. Values are exact except in the one
// regime the source analysis leaves open (see rs_open_interval below), where
// [lo, hi] is a genuine interval.
struct CountBounds {
  int per_modulus_lo = 0, per_modulus_hi = 0;  // quadrilaterals per modulus value
  int small_k_lo = 0, small_k_hi = 0;          // quadrilaterals at small modulus
  int large_k_lo = 0, large_k_hi = 0;          // quadrilaterals at large modulus
  bool open_interval = false;
};

template <class T>
CountBounds count_bounds(const AngleVec<T>& angles) {
  const ChainDiagram& diagram = diagram_for_orders(angles.order);
  CountBounds out;
  for (const Chain& c : build_chains(angles)) {
    bool low_deg = c.low.kind == EndKind::Modulus0 || c.low.kind == EndKind::ModulusInf;
    bool high_deg = c.high.kind == EndKind::Modulus0 || c.high.kind == EndKind::ModulusInf;
    if (low_deg && high_deg) {
      if (c.length() % 2 == 0) {
        if (c.low.kind == c.high.kind)
          throw Error("even-length chain with equal end moduli violates the parity law");
        out.per_modulus_lo += 1;
        out.small_k_lo += 1;
        out.large_k_lo += 1;
      } else {
        if (c.low.kind != c.high.kind)
          throw Error("odd-length chain with opposite end moduli violates the parity law");
        (c.low.kind == EndKind::Modulus0 ? out.small_k_lo : out.large_k_lo) += 2;
      }
    } else if (low_deg || high_deg) {
      EndKind k = low_deg ? c.low.kind : c.high.kind;
      (k == EndKind::Modulus0 ? out.small_k_lo : out.large_k_lo) += 1;
    }
  }
  out.per_modulus_hi = out.per_modulus_lo;
  out.small_k_hi = out.small_k_lo;
  out.large_k_hi = out.large_k_lo;
  // With corner parts (0,0,1,1) and fractional sum above 2 the catalogue
  // leaves open whether a second length-0 chain (a decorated order-0 net)
  // exists alongside the irreducible one; report the interval.
  if (diagram.name == "rs" &&
      angles.frac[0] + angles.frac[1] + angles.frac[2] + angles.frac[3] > T(2)) {
    out.open_interval = true;
    out.per_modulus_hi += 1;
    out.small_k_hi += 1;
    out.large_k_hi += 1;
  }
  return out;
}

}  // namespace sphquad
