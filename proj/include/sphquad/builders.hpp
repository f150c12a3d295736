// Constructive net builders: the four basic quadrilaterals, the ten
// extension families and their mirror images, triangle building blocks,
// pseudo-diagonal insertion and digon attachment.
//
// Everything is built over the reference partition (immersion.hpp), so the
// corner-angle bookkeeping (complement masks) is read off geometrically
// rather than hand-coded. The two basic quadrilaterals that are not a single
// face (X'00 and Z'00) are discovered by exhaustive search over embedded
// regions of the reference partition, pinned down by their corner orders,
// masks and (for Z'00) exclusion of the other nets in their stratum.
#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sphquad/immersion.hpp"

namespace sphquad {

namespace bdetail {

// First quadrilateral face of the reference partition.
inline int first_quad_face() {
  const auto& T = partition_template();
  for (size_t f = 0; f < T.arr.faces.size(); ++f)
    if (T.arr.faces[f].darts.size() == 4) return static_cast<int>(f);
  throw Error("reference partition has no quadrilateral face");
}

// Designate as corners all boundary vertices of even degree, in ccw boundary
// order (non-integer corners in an embedded region have even degree; lateral
// vertices have degree 3). Returns false when the boundary has no such
// vertex. Integer corners (odd degree) must be designated by the caller.
inline bool derive_corners(INet& Q) {
  int b0 = -1;
  for (int d = 0; d < Q.net.n_darts(); ++d)
    if (Q.net.is_boundary(d)) {
      b0 = d;
      break;
    }
  if (b0 < 0) return false;
  auto cyc = boundary_cycle(Q.net, b0);
  auto nv = compute_vertices(Q.net);
  Q.net.corner_darts.clear();
  for (int d : cyc)
    if (nv.degree[nv.vertex_of[d]] % 2 == 0) Q.net.corner_darts.push_back(d);
  return !Q.net.corner_darts.empty();
}

// Rotate the corner labels so that the corner orders read exactly `want`.
// Returns false when no rotation matches.
inline bool rotate_orders_to(INet& Q, const std::vector<int>& want, NetKind kind) {
  auto orders = validate_net(Q.net, kind).corner_order;
  size_t n = orders.size();
  if (n != want.size()) return false;
  for (size_t r = 0; r < n; ++r) {
    bool ok = true;
    for (size_t j = 0; j < n && ok; ++j) ok = orders[(j + r) % n] == want[j];
    if (ok) {
      Q.net = rotate_labels(Q.net, static_cast<int>(r));
      return true;
    }
  }
  return false;
}

// All embedded quadrilateral nets (regions of the reference partition that
// validate as quadrilateral nets with derived corners), as immersed nets.
// Used to discover the basic nets and to cross-check small enumerations.
inline std::vector<INet> embedded_quadrilaterals() {
  const auto& T = partition_template();
  int nf = static_cast<int>(T.arr.faces.size());
  // Face adjacency for the cheap connectivity pre-filter.
  std::vector<std::vector<int>> adj(nf);
  for (int d = 0; d < T.n_darts(); d += 2) {
    int f1 = T.face_of(d), f2 = T.face_of(T.twin(d));
    adj[f1].push_back(f2);
    adj[f2].push_back(f1);
  }
  std::vector<INet> out;
  for (int bits = 1; bits < (1 << nf) - 1; ++bits) {
    std::vector<int> faces;
    for (int f = 0; f < nf; ++f)
      if (bits & (1 << f)) faces.push_back(f);
    // Connectivity over shared edges.
    std::set<int> fset(faces.begin(), faces.end());
    std::vector<int> stack{faces[0]};
    std::set<int> seen{faces[0]};
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      for (int g : adj[f])
        if (fset.count(g) && !seen.count(g)) {
          seen.insert(g);
          stack.push_back(g);
        }
    }
    if (seen.size() != faces.size()) continue;
    try {
      INet Q = region_inet(faces);
      if (!derive_corners(Q)) continue;
      if (Q.net.corner_darts.size() != 4) continue;
      validate_inet(Q, NetKind::Quadrilateral);
      out.push_back(std::move(Q));
    } catch (const Error&) {
      continue;
    }
  }
  return out;
}

struct BasicNets {
  INet p0, xp00, xbarp00, zp00;
};

inline INet build_xprime_seed() {
  const auto& T = partition_template();
  // A quadrilateral face g plus the two triangles across its edges at one
  // vertex p; p becomes the order-1 corner, labeled a3.
  for (size_t f = 0; f < T.arr.faces.size(); ++f) {
    if (T.arr.faces[f].darts.size() != 4) continue;
    for (int i = 0; i < 4; ++i) {
      int d_out = T.arr.faces[f].darts[i];
      int d_in = T.arr.faces[f].darts[(i + 3) % 4];
      int tA = T.face_of(T.twin(d_out));
      int tB = T.face_of(T.twin(d_in));
      INet Q = region_inet({static_cast<int>(f), tA, tB});
      if (!derive_corners(Q)) continue;
      if (Q.net.corner_darts.size() != 4) continue;
      try {
        validate_inet(Q, NetKind::Quadrilateral);
      } catch (const Error&) {
        continue;
      }
      if (!rotate_orders_to(Q, {0, 0, 0, 1}, NetKind::Quadrilateral)) continue;
      if (complement_mask(Q) == std::array<int, 4>{1, 0, 1, 1}) return Q;
    }
  }
  throw Error("X'00 seed not found in the reference partition");
}

// The mirror seed keeps corner a0 fixed and reverses orientation, which
// moves the order-1 corner to a1; no relabeling is applied afterwards.
inline INet build_xbarprime_seed(const INet& xp00) {
  INet Q = reflect_inet(xp00);
  if (corner_orders(Q.net, NetKind::Quadrilateral) != std::vector<int>{0, 1, 0, 0})
    throw Error("Xbar'00 has unexpected corner orders");
  if (complement_mask(Q) != std::array<int, 4>{1, 1, 1, 0})
    throw Error("Xbar'00 has an unexpected complement mask");
  return Q;
}

inline INet build_p0() {
  INet Q = face_inet(first_quad_face());
  Q.net.corner_darts = {0, 1, 2, 3};
  return Q;
}

// Family constructors over immersed nets. Parameters follow the catalogue;
// each is two side extensions of a basic quadrilateral.
inline INet x_inet(int k, int l, const INet& base) {
  INet Q = base;
  if (k > 0) Q = extend_side(Q, 0, true, k);
  if (l > 0) Q = extend_side(Q, 2, false, l);
  return Q;
}

inline INet build_zprime_seed(const INet& p0, const INet& xbarp00) {
  // Z'00 is the unique primitive embedded quadrilateral with opposite
  // corners of order 1 that is not one of the nets constructible from the
  // other seeds (Z10, Z01, their mirrors, U11, Ubar11).
  std::vector<Net> known;
  {
    INet z10 = x_inet(1, 0, xbarp00);
    INet z01 = x_inet(0, 1, xbarp00);
    INet u11 = extend_side(extend_side(p0, 0, true, 1), 2, true, 1);
    for (const INet* q : {&z10, &z01, &u11}) {
      known.push_back(q->net);
      known.push_back(reflect_inet(*q).net);
    }
  }
  std::vector<std::vector<int>> known_canon;
  for (const auto& g : known) known_canon.push_back(canonical_form_unlabeled(g));

  std::optional<INet> found;
  std::set<std::vector<int>> dedup;
  for (INet& Q : embedded_quadrilaterals()) {
    if (!rotate_orders_to(Q, {0, 1, 0, 1}, NetKind::Quadrilateral)) continue;
    if (!is_primitive(Q.net)) continue;
    auto canon = canonical_form_unlabeled(Q.net);
    if (dedup.count(canon)) continue;
    dedup.insert(canon);
    bool is_known = false;
    for (const auto& kc : known_canon) is_known |= (canon == kc);
    if (is_known) continue;
    if (found) throw Error("Z'00 discovery: stratum candidate is not unique");
    found = Q;
  }
  if (!found) throw Error("Z'00 not found in the reference partition");
  if (complement_mask(*found) != std::array<int, 4>{0, 1, 0, 1})
    throw Error("Z'00 candidate has an unexpected complement mask");
  return *found;
}

inline const BasicNets& basic_nets() {
  static const BasicNets B = [] {
    BasicNets b;
    b.p0 = build_p0();
    b.xp00 = build_xprime_seed();
    b.xbarp00 = build_xbarprime_seed(b.xp00);
    b.zp00 = build_zprime_seed(b.p0, b.xbarp00);
    return b;
  }();
  return B;
}

}  // namespace bdetail

// ---------------------------------------------------------------------------
// Basic quadrilaterals
// ---------------------------------------------------------------------------

enum class BasicQuad { P0, Xp00, XBarp00, Zp00 };

inline const INet& base_inet(BasicQuad which) {
  const auto& B = bdetail::basic_nets();
  switch (which) {
    case BasicQuad::P0: return B.p0;
    case BasicQuad::Xp00: return B.xp00;
    case BasicQuad::XBarp00: return B.xbarp00;
    case BasicQuad::Zp00: return B.zp00;
  }
  throw UnknownLabel("basic quadrilateral");
}

inline Net base_net(BasicQuad which) { return to_net(base_inet(which)); }

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

enum class Family { P, X, Xp, Z, Zp, R, S, U, V, Vp, W };

// Immersed net of a family member (unbarred). Parameter ranges:
//   X: k,l >= 0, k+l >= 1;  X': k,l >= 0;  Z: k,l >= 0, k+l >= 1;
//   Z': k,l >= 0;  R,S: k >= l >= 1;  U: k,l >= 1;  V: k,l >= 1 (the
//   catalogue text asks l >= 2 but the chain examples use V_{k1});
//   V' mirrors V's ranges;  W: k,l >= 2.
inline INet family_inet(Family fam, int k, int l, bool barred = false) {
  const auto& B = bdetail::basic_nets();
  auto ext = [](INet q, int pos, bool leaving, int n) {
    return n > 0 ? extend_side(q, pos, leaving, n) : q;
  };
  INet Q;
  switch (fam) {
    case Family::P:
      if (k != 0 || l != 0) throw UnknownLabel("P takes no k,l parameters");
      Q = B.p0;
      break;
    case Family::X:
      if (k < 0 || l < 0 || k + l < 1) throw UnknownLabel("X requires k,l >= 0, k+l >= 1");
      Q = bdetail::x_inet(k, l, B.p0);
      break;
    case Family::Xp:
      if (k < 0 || l < 0) throw UnknownLabel("X' requires k,l >= 0");
      Q = bdetail::x_inet(k, l, B.xp00);
      break;
    case Family::Z:
      if (k < 0 || l < 0 || k + l < 1) throw UnknownLabel("Z requires k,l >= 0, k+l >= 1");
      Q = bdetail::x_inet(k, l, B.xbarp00);
      break;
    case Family::Zp:
      if (k < 0 || l < 0) throw UnknownLabel("Z' requires k,l >= 0");
      Q = bdetail::x_inet(k, l, B.zp00);
      break;
    case Family::R:
      if (!(k >= l && l >= 1)) throw UnknownLabel("R requires k >= l >= 1");
      Q = ext(ext(B.p0, 0, true, k), 1, false, l);
      break;
    case Family::S:
      if (!(k >= l && l >= 1)) throw UnknownLabel("S requires k >= l >= 1");
      Q = ext(ext(B.xp00, 0, true, k - 1), 1, false, l);
      break;
    case Family::U:
      if (k < 1 || l < 1) throw UnknownLabel("U requires k,l >= 1");
      Q = ext(ext(B.p0, 0, true, k), 2, true, l);
      break;
    case Family::V:
      if (k < 1 || l < 1) throw UnknownLabel("V requires k >= 1, l >= 1");
      Q = ext(ext(B.xbarp00, 0, true, k), 2, true, l - 1);
      break;
    case Family::Vp:
      if (k < 1 || l < 1) throw UnknownLabel("V' requires k >= 1, l >= 1");
      Q = rotate_inet(family_inet(Family::V, l, k), 2);
      break;
    case Family::W:
      if (k < 2 || l < 2) throw UnknownLabel("W requires k,l >= 2");
      Q = ext(ext(B.zp00, 0, true, k - 1), 2, true, l - 1);
      break;
  }
  if (!barred) return Q;
  // The mirror of a family member keeps the labeled corners aligned with the
  // unbarred net. Families whose nonzero-order corners sit at odd positions
  // (a1/a3) reflect through the a1--a3 axis; the others fix corner a0.
  switch (fam) {
    case Family::U:
    case Family::V:
    case Family::Vp:
    case Family::W:
    case Family::Zp:
      return rotate_inet(reflect_inet(Q), 2);
    default:
      return reflect_inet(Q);
  }
}

inline Net family_net(Family fam, int k, int l, bool barred = false) {
  return to_net(family_inet(fam, k, l, barred));
}

// ---------------------------------------------------------------------------
// Side extension on plain nets (spec-facing wrapper)
// ---------------------------------------------------------------------------

// Extend side L of `Q` beyond its corner a_p by a triangle T_n. `leaving`
// selects L as the side leaving a_p (side p) or arriving (side p-1).
inline INet extend_side_checked(const INet& Q, int p, bool leaving, int n) {
  NetReport rep = validate_net(Q.net, NetKind::Fragment);
  int nc = static_cast<int>(Q.net.corner_darts.size());
  if (rep.corner_order[p] != 0) throw NotOrderZero("extension corner must have order 0");
  int Ms = leaving ? (p + nc - 1) % nc : p;
  if (rep.side_order[Ms] > 2)
    throw SideTooLong("the side glued into the triangle must have order <= 2");
  if (n < 1) throw UnknownLabel("extension requires n >= 1");
  return extend_side(Q, p, leaving, n);
}

// ---------------------------------------------------------------------------
// Triangles T_n and E_n
// ---------------------------------------------------------------------------

enum class TriangleKind { T, E };

namespace bdetail {

// All embedded T_1 nets: a lune between two circles (a digon with both side
// orders 3) with one lateral vertex designated as the integer corner.
// Corner 0 is the integer corner.
inline std::vector<INet> t1_variants() {
  const auto& T = partition_template();
  std::vector<INet> out;
  std::set<std::vector<int>> dedup;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (double si : {1.0, -1.0})
        for (double sj : {1.0, -1.0}) {
          std::vector<int> faces;
          for (size_t f = 0; f < T.arr.faces.size(); ++f)
            if (T.side_sign(static_cast<int>(f), i) == si &&
                T.side_sign(static_cast<int>(f), j) == sj)
              faces.push_back(static_cast<int>(f));
          INet L = region_inet(faces);
          int b0 = -1;
          for (int d = 0; d < L.net.n_darts(); ++d)
            if (L.net.is_boundary(d)) {
              b0 = d;
              break;
            }
          auto cyc = boundary_cycle(L.net, b0);
          auto nv = compute_vertices(L.net);
          if (cyc.size() != 6) throw Error("lune boundary is not a hexagon");
          // Tips: the two degree-even boundary vertices (the circle pair's
          // intersection points); all others are lateral (degree 3).
          for (size_t qi = 0; qi < cyc.size(); ++qi) {
            int v = nv.vertex_of[cyc[qi]];
            if (nv.degree[v] % 2 == 0) continue;  // tip, not a lateral vertex
            INet C = L;
            // ccw corners: integer corner q first, then the two tips in
            // boundary order after q.
            C.net.corner_darts = {cyc[qi]};
            for (size_t s = 1; s < cyc.size(); ++s) {
              int d = cyc[(qi + s) % cyc.size()];
              if (nv.degree[nv.vertex_of[d]] % 2 == 0) C.net.corner_darts.push_back(d);
            }
            if (C.net.corner_darts.size() != 3) continue;
            try {
              validate_inet(C, NetKind::Fragment);
            } catch (const Error&) {
              continue;
            }
            auto canon = canonical_form_labeled(C.net);
            if (dedup.insert(canon).second) out.push_back(std::move(C));
          }
        }
  return out;
}

// All embedded E_1 nets: three-corner regions with corner orders (1,0,0),
// all corners non-integer (even degree). Corner 0 is the order-1 corner.
inline std::vector<INet> e1_variants() {
  const auto& T = partition_template();
  int nf = static_cast<int>(T.arr.faces.size());
  std::vector<std::vector<int>> adj(nf);
  for (int d = 0; d < T.n_darts(); d += 2) {
    adj[T.face_of(d)].push_back(T.face_of(T.twin(d)));
    adj[T.face_of(T.twin(d))].push_back(T.face_of(d));
  }
  std::vector<INet> out;
  std::set<std::vector<int>> dedup;
  for (int bits = 1; bits < (1 << nf) - 1; ++bits) {
    std::vector<int> faces;
    for (int f = 0; f < nf; ++f)
      if (bits & (1 << f)) faces.push_back(f);
    std::set<int> fset(faces.begin(), faces.end());
    std::vector<int> stack{faces[0]};
    std::set<int> seen{faces[0]};
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      for (int g : adj[f])
        if (fset.count(g) && !seen.count(g)) {
          seen.insert(g);
          stack.push_back(g);
        }
    }
    if (seen.size() != faces.size()) continue;
    try {
      INet Q = region_inet(faces);
      if (!derive_corners(Q)) continue;
      if (Q.net.corner_darts.size() != 3) continue;
      validate_inet(Q, NetKind::Fragment);
      if (!rotate_orders_to(Q, {1, 0, 0}, NetKind::Fragment)) continue;
      auto canon = canonical_form_unlabeled(Q.net, /*allow_reflection=*/false);
      if (dedup.insert(canon).second) out.push_back(std::move(Q));
    } catch (const Error&) {
      continue;
    }
  }
  return out;
}

}  // namespace bdetail

// Triangle building blocks. Corner 0 is the distinguished corner (integer of
// order n for T_n; non-integer of order n for E_n). `variant` selects among
// the inequivalent fourth-circle completions of the n = 1 net.
inline INet triangle_inet(TriangleKind kind, int n, int variant = 0) {
  if (n < 1) throw UnknownLabel("triangle index must be >= 1");
  static const std::vector<INet> t1 = bdetail::t1_variants();
  static const std::vector<INet> e1 = bdetail::e1_variants();
  const auto& seeds = (kind == TriangleKind::T) ? t1 : e1;
  if (variant < 0 || variant >= static_cast<int>(seeds.size()))
    throw UnknownVariant("triangle variant out of range");
  INet Q = seeds[variant];
  // Grow the distinguished corner: extend the base beyond the order-0 corner
  // whose other side M (of order <= 2) ends at corner 0.
  for (int step = 1; step < n; ++step) {
    NetReport rep = validate_net(Q.net, NetKind::Fragment);
    bool done = false;
    for (int p = 1; p < 3 && !done; ++p) {
      if (rep.corner_order[p] != 0) continue;
      for (bool leaving : {true, false}) {
        int Ms = leaving ? (p + 2) % 3 : p;
        int far = leaving ? (p + 2) % 3 : (p + 1) % 3;
        if (far != 0 || rep.side_order[Ms] > 2) continue;
        Q = extend_side(Q, p, leaving, 1);
        done = true;
        break;
      }
    }
    if (!done) throw Error("triangle extension step failed");
  }
  return Q;
}

inline Net triangle_net(TriangleKind kind, int n, int variant = 0) {
  return to_net(triangle_inet(kind, n, variant), NetKind::Fragment);
}

// ---------------------------------------------------------------------------
// Pseudo-diagonal insertion (P_mu)
// ---------------------------------------------------------------------------

namespace bdetail {

// Seeds for the quadrilateral P1, keyed by the template dart at which the
// boundary starts (the image of the boundary dart leaving corner p). The
// boundary images of a P1 seed are the four darts of one quadrilateral face
// in ccw order, so a seed can replace any net face immersed onto that face.
inline const std::map<int, INet>& p1_seeds() {
  static const std::map<int, INet> seeds = [] {
    const auto& T = partition_template();
    std::map<int, INet> out;
    for (size_t vp = 0; vp < T.arr.vertices.size(); ++vp) {
      for (int c : {T.arr.vertices[vp].ci, T.arr.vertices[vp].cj}) {
        for (double s : {1.0, -1.0}) {
          try {
            // G: the disk bounded by circle c on side s (7 faces) plus the
            // ring of 6 faces adjacent to c on the other side, cut along the
            // one ring-internal edge at vp.
            std::vector<int> faces;
            std::set<int> ring;
            for (size_t f = 0; f < T.arr.faces.size(); ++f) {
              if (T.side_sign(static_cast<int>(f), c) == s)
                faces.push_back(static_cast<int>(f));
              else {
                for (int fd : T.arr.faces[f].darts)
                  if (T.circle_of(fd) == c) ring.insert(static_cast<int>(f));
              }
            }
            for (int f : ring) faces.push_back(f);
            // The cut edge: the edge at vp not on circle c whose two sides
            // both lie in ring faces.
            int cut = -1;
            for (int d = 0; d < T.n_darts(); ++d) {
              if (T.arr.darts[d].from != static_cast<int>(vp)) continue;
              if (T.circle_of(d) == c) continue;
              if (ring.count(T.face_of(d)) && ring.count(T.face_of(T.twin(d))))
                cut = std::min(d, T.twin(d));
            }
            if (cut < 0) continue;
            // G is an intermediate region, not a valid fragment (its rim has
            // mixed-color lateral vertices); only the closed-up result is
            // validated.
            INet G = region_inet(faces, {cut});

            // Close the notch at b (the far end of the cut edge) with the
            // triangle face spanning the two boundary edges there, then close
            // the notch at v with the quadrilateral face spanning the two
            // boundary edges there. Each closure sews one outside face along
            // two consecutive boundary darts sharing a reflex vertex.
            auto close_notch = [&](INet Q, int expect_size) -> std::optional<INet> {
              int b0 = -1;
              for (int d = 0; d < Q.net.n_darts(); ++d)
                if (Q.net.is_boundary(d)) {
                  b0 = d;
                  break;
                }
              auto cyc = boundary_cycle(Q.net, b0);
              int m = static_cast<int>(cyc.size());
              for (int i = 0; i < m; ++i) {
                int d1 = cyc[i], d2 = cyc[(i + 1) % m];
                int f1 = T.face_of(T.twin(Q.pimage[d1]));
                int f2 = T.face_of(T.twin(Q.pimage[d2]));
                if (f1 != f2) continue;
                if (static_cast<int>(T.arr.faces[f1].darts.size()) != expect_size) continue;
                // The face must fit the notch: its darts at the shared vertex
                // must be exactly the twins in sequence.
                if (T.arr.darts[T.twin(Q.pimage[d2])].next != T.twin(Q.pimage[d1])) continue;
                INet F = face_inet(f1);
                auto by_image = imdetail::boundary_by_image(F);
                INet R = sew(Q, F, {{d1, by_image.at(T.twin(Q.pimage[d1]))},
                                    {d2, by_image.at(T.twin(Q.pimage[d2]))}});
                return R;
              }
              return std::nullopt;
            };
            auto R1 = close_notch(G, 3);
            if (!R1) continue;
            auto R2 = close_notch(*R1, 4);
            if (!R2) continue;
            INet P = *R2;
            if (!derive_corners(P)) continue;
            if (P.net.corner_darts.size() != 4) continue;
            validate_inet(P, NetKind::Quadrilateral);
            auto rep = validate_net(P.net, NetKind::Quadrilateral);
            // P1: opposite corners of order 2, all sides of order 1.
            if (rep.side_order != std::vector<int>{1, 1, 1, 1}) continue;
            bool orders_ok = rep.corner_order == std::vector<int>{2, 0, 2, 0} ||
                             rep.corner_order == std::vector<int>{0, 2, 0, 2};
            if (!orders_ok) continue;
            if (rep.corner_order[0] != 2) P.net = rotate_labels(P.net, 1);
            // Key by the image of the boundary dart leaving p; require the
            // boundary images to be one face cycle.
            rep = validate_net(P.net, NetKind::Quadrilateral);
            std::array<int, 4> img{};
            for (int j = 0; j < 4; ++j) img[j] = P.pimage[P.net.corner_darts[j]];
            bool one_face = true;
            for (int j = 0; j < 4; ++j)
              one_face &= T.arr.darts[img[j]].next == img[(j + 1) % 4];
            if (!one_face) continue;
            out.try_emplace(img[0], P);
            // The opposite corner q works as the start as well.
            INet P2 = P;
            P2.net = rotate_labels(P2.net, 2);
            out.try_emplace(img[2], P2);
          } catch (const Error&) {
            continue;
          }
        }
      }
    }
    return out;
  }();
  return seeds;
}

}  // namespace bdetail

// Replace the quadrilateral face of Q adjacent to two opposite designated
// corners by P1, mu times. Throws NoEligibleFace when no face of the net has
// two opposite vertices at opposite corners of Q (families R, S and mirrors).
inline INet insert_pmu(const INet& Q0, int mu) {
  if (mu < 1) throw UnknownLabel("pseudo-diagonal insertion requires mu >= 1");
  const auto& T = partition_template();
  INet Q = Q0;
  for (int step = 0; step < mu; ++step) {
    NetReport rep = validate_net(Q.net, NetKind::Quadrilateral);
    const auto& nv = rep.verts;
    std::array<int, 4> cv{};
    for (int j = 0; j < 4; ++j) cv[j] = nv.vertex_of[Q.net.corner_darts[j]];
    // Find a quadrilateral face with two opposite vertices at opposite
    // corners, and the dart of that face whose origin is a designated corner.
    int fd0 = -1;  // face dart at the corner playing p
    int p_pos = -1;
    for (int d = 0; d < Q.net.n_darts() && fd0 < 0; ++d) {
      if (rep.face_size[rep.face_of[d]] != 4) continue;
      int v0 = nv.vertex_of[d];
      int v2 = nv.vertex_of[Q.net.next[Q.net.next[d]]];
      for (int j = 0; j < 4; ++j)
        if (v0 == cv[j] && v2 == cv[(j + 2) % 4]) {
          fd0 = d;
          p_pos = j;
          break;
        }
    }
    if (fd0 < 0)
      throw NoEligibleFace("no quadrilateral face joins two opposite corners of the net");
    std::array<int, 4> fd{};
    fd[0] = fd0;
    for (int j = 1; j < 4; ++j) fd[j] = Q.net.next[fd[j - 1]];

    auto it = bdetail::p1_seeds().find(Q.pimage[fd[0]]);
    if (it == bdetail::p1_seeds().end())
      throw Error("no P1 seed starts at the required template dart");
    const INet& P = it->second;
    NetReport prep = validate_net(P.net, NetKind::Quadrilateral);

    // Remove the four face darts from Q, then append P and sew / merge the
    // boundary. P's side j (a single boundary dart) replaces the edge fd[j].
    std::vector<int> remap(Q.net.n_darts(), -1);
    INet R;
    for (int d = 0; d < Q.net.n_darts(); ++d) {
      if (d == fd[0] || d == fd[1] || d == fd[2] || d == fd[3]) continue;
      remap[d] = R.net.n_darts();
      R.net.next.push_back(-1);
      R.net.opp.push_back(-1);
      R.net.color.push_back(Q.net.color[d]);
      R.pimage.push_back(Q.pimage[d]);
    }
    int off = R.net.n_darts();
    for (int d = 0; d < P.net.n_darts(); ++d) {
      R.net.next.push_back(P.net.next[d] + off);
      R.net.opp.push_back(P.net.opp[d] < 0 ? -1 : P.net.opp[d] + off);
      R.net.color.push_back(P.net.color[d]);
      R.pimage.push_back(P.pimage[d]);
    }
    auto is_fd = [&](int d) { return d == fd[0] || d == fd[1] || d == fd[2] || d == fd[3]; };
    for (int d = 0; d < Q.net.n_darts(); ++d) {
      if (is_fd(d)) continue;
      // next: unchanged unless it pointed into the removed face, which can
      // only happen via boundary-of-face adjacency; face cycles of other
      // faces never enter f, so plain remap is safe.
      R.net.next[remap[d]] = remap[Q.net.next[d]];
      if (!Q.net.is_boundary(d) && !is_fd(Q.net.opp[d])) R.net.opp[remap[d]] = remap[Q.net.opp[d]];
    }
    // P's boundary dart for side j.
    std::array<int, 4> ps{};
    for (int j = 0; j < 4; ++j) {
      if (prep.side_darts[j].size() != 1) throw Error("P1 side is not a single edge");
      ps[j] = prep.side_darts[j][0];
    }
    for (int j = 0; j < 4; ++j) {
      int neighbor = Q.net.opp[fd[j]];
      if (neighbor >= 0) {
        if (T.twin(R.pimage[remap[neighbor]]) != R.pimage[ps[j] + off])
          throw Error("P1 splice image mismatch");
        R.net.opp[remap[neighbor]] = ps[j] + off;
        R.net.opp[ps[j] + off] = remap[neighbor];
      }
    }
    // Corner darts: a corner dart that was a face dart (a boundary edge of
    // the removed face) is replaced by P's corresponding side dart.
    R.net.corner_darts.resize(4);
    for (int j = 0; j < 4; ++j) {
      int cd = Q.net.corner_darts[j];
      if (is_fd(cd)) {
        int which = (j - p_pos + 4) % 4;
        R.net.corner_darts[j] = ps[which] + off;
      } else {
        R.net.corner_darts[j] = remap[cd];
      }
    }
    validate_inet(R, NetKind::Quadrilateral);
    Q = std::move(R);
  }
  return Q;
}

// ---------------------------------------------------------------------------
// Digon attachment (spec-facing wrapper)
// ---------------------------------------------------------------------------

// Attach a stack of `count` digon layers to side `k`. The digon type is
// forced by the side order parity (D15 for odd, D24 for even). LongSide for
// sides of order >= 6; side orders divisible by 3 cannot occur on valid
// quadrilateral nets.
inline INet attach_digon_checked(const INet& Q, int k, int count) {
  NetReport rep = validate_net(Q.net, NetKind::Quadrilateral);
  if (rep.side_order[k] >= 6) throw LongSide("digons attach only to sides of order < 6");
  if (count < 1) throw UnknownLabel("digon count must be >= 1");
  return attach_digon(Q, k, count);
}

// The forced digon type for a side order.
inline std::string digon_type_for_order(int order) {
  if (order >= 6 || order % 3 == 0 || order < 1) throw LongSide("no digon type for this order");
  return order % 2 == 1 ? "D15" : "D24";
}

}  // namespace sphquad
