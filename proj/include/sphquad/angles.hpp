// Angle engine: feasibility pyramid, net -> fixed-angle complement tables,
// degeneration directions, ladder/box patterns, and the lattice-distance
// closure check. Everything is templated on the scalar type so the same
// code runs in double (numeric) and Rat (exact) mode.
#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "sphquad/base.hpp"
#include "sphquad/label.hpp"

namespace sphquad {

// ---------------------------------------------------------------------------
// Angle vectors
// ---------------------------------------------------------------------------

// Four corner angles split into integer parts (corner orders) and fractional
// parts, each fractional part strictly inside (0,1): an integer angle is not
// generic and is rejected at construction.
template <class T>
struct AngleVec {
  std::array<int, 4> order{};
  std::array<T, 4> frac{};

  int sigma() const { return order[0] + order[1] + order[2] + order[3]; }

  static AngleVec from_parts(const std::array<int, 4>& order, const std::array<T, 4>& frac) {
    AngleVec a;
    a.order = order;
    a.frac = frac;
    for (int i = 0; i < 4; ++i) {
      if (a.order[i] < 0) throw InfeasibleAngles("negative integer part");
      if (!(a.frac[i] > T(0)) || !(a.frac[i] < T(1)))
        throw InfeasibleAngles("fractional part " + scalar_str(a.frac[i]) +
                               " outside the open interval (0,1)");
    }
    return a;
  }

  static AngleVec from_values(const std::array<T, 4>& values) {
    std::array<int, 4> order;
    std::array<T, 4> frac;
    for (int i = 0; i < 4; ++i) {
      std::int64_t fl = floor_int(values[i]);
      order[i] = static_cast<int>(fl);
      frac[i] = values[i] - T(fl);
    }
    return from_parts(order, frac);
  }
};

using AngleVector = AngleVec<double>;
using AngleVectorExact = AngleVec<Rat>;

// ---------------------------------------------------------------------------
// Pyramid membership
// ---------------------------------------------------------------------------

enum class PyramidRegion { Interior, Boundary, Outside };

// Region plus the facet inequalities that are tight (for Boundary) or violated
// (for Outside); empty for Interior.
struct PyramidResult {
  PyramidRegion region = PyramidRegion::Outside;
  std::vector<std::string> facets;

  bool interior() const { return region == PyramidRegion::Interior; }
};

// Membership of (a,b,c,d) in the open pyramid 0 < a+b+c+d-2 < 2*min(a,b,c,d)
// inside the open unit cube. All inequalities are strict; a point that is
// tight on some facet and strictly violates none is reported as Boundary
// with the tight facets named.
template <class T>
PyramidResult pyramid_membership(const std::array<T, 4>& q) {
  static const char* names = "abcd";
  std::vector<std::string> tight, violated;
  auto require_less = [&](const T& lhs, const T& rhs, const std::string& facet) {
    if (lhs < rhs) return;
    if (lhs == rhs)
      tight.push_back(facet);
    else
      violated.push_back(facet);
  };

  T area = q[0] + q[1] + q[2] + q[3] - T(2);
  for (int i = 0; i < 4; ++i) {
    require_less(T(0), q[i], std::string(1, names[i]) + " > 0");
    require_less(q[i], T(1), std::string(1, names[i]) + " < 1");
    require_less(area, T(2) * q[i], "a+b+c+d-2 < 2" + std::string(1, names[i]));
  }
  require_less(T(0), area, "a+b+c+d > 2");

  PyramidResult r;
  if (!violated.empty()) {
    r.region = PyramidRegion::Outside;
    r.facets = violated;
  } else if (!tight.empty()) {
    r.region = PyramidRegion::Boundary;
    r.facets = tight;
  } else {
    r.region = PyramidRegion::Interior;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Net -> fixed angles (complement tables)
// ---------------------------------------------------------------------------

// Complement pattern of a family at given parities of (k,l): entry i is 1 when
// the i-th fixed angle of the quadrilateral face is the complement 1-x of the
// i-th fractional part. Encoded as data, one row per (family, barred, k mod 2,
// l mod 2); the barred rows equal the unbarred ones transformed by the
// corresponding mirror map (m0,m3,m2,m1) or (m2,m1,m0,m3).
struct ComplementRow {
  Family family;
  bool barred;
  int k_parity;
  int l_parity;
  std::array<int, 4> mask;
};

inline const std::vector<ComplementRow>& complement_table() {
  static const std::vector<ComplementRow> rows = {
      // X and barred X share all four rows.
      {Family::X, false, 0, 0, {0, 0, 0, 0}},  {Family::X, false, 0, 1, {0, 0, 1, 0}},
      {Family::X, false, 1, 0, {1, 0, 0, 0}},  {Family::X, false, 1, 1, {1, 0, 1, 0}},
      {Family::X, true, 0, 0, {0, 0, 0, 0}},   {Family::X, true, 0, 1, {0, 0, 1, 0}},
      {Family::X, true, 1, 0, {1, 0, 0, 0}},   {Family::X, true, 1, 1, {1, 0, 1, 0}},

      {Family::Xp, false, 0, 0, {1, 0, 1, 1}}, {Family::Xp, false, 0, 1, {1, 0, 0, 1}},
      {Family::Xp, false, 1, 0, {0, 0, 1, 1}}, {Family::Xp, false, 1, 1, {0, 0, 0, 1}},
      {Family::Xp, true, 0, 0, {1, 1, 1, 0}},  {Family::Xp, true, 0, 1, {1, 1, 0, 0}},
      {Family::Xp, true, 1, 0, {0, 1, 1, 0}},  {Family::Xp, true, 1, 1, {0, 1, 0, 0}},

      {Family::Z, false, 0, 0, {1, 1, 1, 0}},  {Family::Z, false, 0, 1, {1, 1, 0, 0}},
      {Family::Z, false, 1, 0, {0, 1, 1, 0}},  {Family::Z, false, 1, 1, {0, 1, 0, 0}},
      {Family::Z, true, 0, 0, {1, 0, 1, 1}},   {Family::Z, true, 0, 1, {1, 0, 0, 1}},
      {Family::Z, true, 1, 0, {0, 0, 1, 1}},   {Family::Z, true, 1, 1, {0, 0, 0, 1}},

      {Family::Zp, false, 0, 0, {0, 1, 0, 1}}, {Family::Zp, false, 0, 1, {0, 1, 1, 1}},
      {Family::Zp, false, 1, 0, {1, 1, 0, 1}}, {Family::Zp, false, 1, 1, {1, 1, 1, 1}},
      {Family::Zp, true, 0, 0, {0, 1, 0, 1}},  {Family::Zp, true, 0, 1, {1, 1, 0, 1}},
      {Family::Zp, true, 1, 0, {0, 1, 1, 1}},  {Family::Zp, true, 1, 1, {1, 1, 1, 1}},

      {Family::R, false, 0, 0, {0, 0, 0, 0}},  {Family::R, false, 0, 1, {0, 1, 0, 0}},
      {Family::R, false, 1, 0, {1, 0, 0, 0}},  {Family::R, false, 1, 1, {1, 1, 0, 0}},
      {Family::R, true, 0, 0, {0, 0, 0, 0}},   {Family::R, true, 0, 1, {0, 0, 0, 1}},
      {Family::R, true, 1, 0, {1, 0, 0, 0}},   {Family::R, true, 1, 1, {1, 0, 0, 1}},

      {Family::S, false, 0, 0, {0, 0, 1, 1}},  {Family::S, false, 0, 1, {0, 1, 1, 1}},
      {Family::S, false, 1, 0, {1, 0, 1, 1}},  {Family::S, false, 1, 1, {1, 1, 1, 1}},
      {Family::S, true, 0, 0, {0, 1, 1, 0}},   {Family::S, true, 0, 1, {0, 1, 1, 1}},
      {Family::S, true, 1, 0, {1, 1, 1, 0}},   {Family::S, true, 1, 1, {1, 1, 1, 1}},

      {Family::U, false, 0, 0, {0, 0, 0, 0}},  {Family::U, false, 0, 1, {0, 0, 1, 0}},
      {Family::U, false, 1, 0, {1, 0, 0, 0}},  {Family::U, false, 1, 1, {1, 0, 1, 0}},
      {Family::U, true, 0, 0, {0, 0, 0, 0}},   {Family::U, true, 0, 1, {1, 0, 0, 0}},
      {Family::U, true, 1, 0, {0, 0, 1, 0}},   {Family::U, true, 1, 1, {1, 0, 1, 0}},

      {Family::V, false, 0, 0, {1, 1, 0, 0}},  {Family::V, false, 0, 1, {1, 1, 1, 0}},
      {Family::V, false, 1, 0, {0, 1, 0, 0}},  {Family::V, false, 1, 1, {0, 1, 1, 0}},
      {Family::V, true, 0, 0, {0, 1, 1, 0}},   {Family::V, true, 0, 1, {1, 1, 1, 0}},
      {Family::V, true, 1, 0, {0, 1, 0, 0}},   {Family::V, true, 1, 1, {1, 1, 0, 0}},

      {Family::Vp, false, 0, 0, {0, 0, 1, 1}}, {Family::Vp, false, 0, 1, {0, 0, 0, 1}},
      {Family::Vp, false, 1, 0, {1, 0, 1, 1}}, {Family::Vp, false, 1, 1, {1, 0, 0, 1}},
      {Family::Vp, true, 0, 0, {1, 0, 0, 1}},  {Family::Vp, true, 0, 1, {0, 0, 0, 1}},
      {Family::Vp, true, 1, 0, {1, 0, 1, 1}},  {Family::Vp, true, 1, 1, {0, 0, 1, 1}},

      {Family::W, false, 0, 0, {1, 1, 1, 1}},  {Family::W, false, 0, 1, {1, 1, 0, 1}},
      {Family::W, false, 1, 0, {0, 1, 1, 1}},  {Family::W, false, 1, 1, {0, 1, 0, 1}},
      {Family::W, true, 0, 0, {1, 1, 1, 1}},   {Family::W, true, 0, 1, {0, 1, 1, 1}},
      {Family::W, true, 1, 0, {1, 1, 0, 1}},   {Family::W, true, 1, 1, {0, 1, 0, 1}},
  };
  return rows;
}

// Parity of the total corner order of a family member: the seed contribution
// (1 for X' and Z) plus the two extension parameters. Pseudo-diagonal
// insertions add a multiple of 4 and digons an even amount, so neither
// affects parity.
inline int sigma_parity(const NetLabel& lbl) {
  int seed = (lbl.family == Family::Xp || lbl.family == Family::Z) ? 1 : 0;
  return (seed + lbl.k + lbl.l) % 2;
}

inline std::array<int, 4> complement_pattern(const NetLabel& lbl) {
  if (lbl.family == Family::P) return {0, 0, 0, 0};
  for (const auto& row : complement_table()) {
    if (row.family == lbl.family && row.barred == lbl.barred &&
        row.k_parity == ((lbl.k % 2 + 2) % 2) && row.l_parity == ((lbl.l % 2 + 2) % 2))
      return row.mask;
  }
  throw UnknownLabel("no complement row for " + print_label(lbl));
}

// Fixed angles (a,b,c,d) of the quadrilateral face of the circle configuration
// underlying a net, expressed through the fractional parts of the corner
// angles: value[i] = frac[i] or 1 - frac[i] per the complement pattern.
template <class T>
struct FixedAngles {
  std::array<T, 4> value{};
  std::array<int, 4> complement{};
};

template <class T>
FixedAngles<T> fixed_angles_for_net(const NetLabel& lbl, const AngleVec<T>& angles) {
  FixedAngles<T> out;
  out.complement = complement_pattern(lbl);
  for (int i = 0; i < 4; ++i)
    out.value[i] = out.complement[i] ? T(1) - angles.frac[i] : angles.frac[i];
  return out;
}

// ---------------------------------------------------------------------------
// Feasibility
// ---------------------------------------------------------------------------

template <class T>
struct Feasibility {
  bool feasible = false;
  FixedAngles<T> fixed;
  PyramidResult detail;  // witness: tight or violated facet inequalities
};

template <class T>
Feasibility<T> net_feasible(const NetLabel& lbl, const AngleVec<T>& angles) {
  Feasibility<T> out;
  out.fixed = fixed_angles_for_net(lbl, angles);
  out.detail = pyramid_membership(out.fixed.value);
  out.feasible = out.detail.interior();
  return out;
}

// ---------------------------------------------------------------------------
// Degeneration directions and ladder/box patterns
// ---------------------------------------------------------------------------

enum class Direction { Top, Bottom, Left, Right };

inline std::string direction_name(Direction d) {
  switch (d) {
    case Direction::Top: return "top";
    case Direction::Bottom: return "bottom";
    case Direction::Left: return "left";
    case Direction::Right: return "right";
  }
  return "?";
}

// The at-most-two triangle collapses available to a configuration with face
// angles (a,b,c,d): bottom iff a+b > c+d, top iff a+b < c+d, left iff
// a+d > b+c, right iff a+d < b+c. Equality in either pair means the
// configuration can only degenerate to a quadruple intersection.
template <class T>
std::vector<Direction> degeneration_directions(const std::array<T, 4>& q) {
  T ab = q[0] + q[1], cd = q[2] + q[3];
  T ad = q[0] + q[3], bc = q[1] + q[2];
  if (ab == cd) {
    std::string msg = "a+b = c+d";
    if (q[0] == q[3]) msg += " with a = d (tangency limit)";
    throw BoundaryTie(msg);
  }
  if (ad == bc) throw BoundaryTie("a+d = b+c");
  std::vector<Direction> dirs;
  dirs.push_back(ab > cd ? Direction::Bottom : Direction::Top);
  dirs.push_back(ad > bc ? Direction::Left : Direction::Right);
  return dirs;
}

// Two fixed angles flip to their complements when the configuration passes a
// triple intersection; these are the angle indices a direction leaves intact.
inline std::array<int, 2> untouched_indices(Direction d) {
  switch (d) {
    case Direction::Top: return {2, 3};     // complements (a,b)
    case Direction::Bottom: return {0, 1};  // complements (c,d)
    case Direction::Left: return {0, 3};    // complements (b,c)
    case Direction::Right: return {1, 2};   // complements (a,d)
  }
  return {0, 0};
}

enum class TransitionPattern { Ladder, Box };

struct LadderBox {
  TransitionPattern pattern;
  int unchanged_index;  // the angle intact under both permitted transitions
};

// Exactly one fixed angle survives both permitted transitions unchanged. The
// chain pattern is a ladder when the opposite pair containing that angle has
// the smaller sum, a box when it has the larger sum.
template <class T>
LadderBox ladder_or_box(const std::array<T, 4>& q) {
  auto dirs = degeneration_directions(q);
  auto u0 = untouched_indices(dirs[0]);
  auto u1 = untouched_indices(dirs[1]);
  int unchanged = -1;
  for (int i : u0)
    for (int j : u1)
      if (i == j) unchanged = i;
  if (unchanged < 0) throw std::logic_error("no common untouched angle");

  T own = q[unchanged] + q[(unchanged + 2) % 4];
  T other = q[(unchanged + 1) % 4] + q[(unchanged + 3) % 4];
  if (own == other)
    throw AmbiguousOnBoundary("opposite pair sums are equal (a+c = b+d)");
  return {own < other ? TransitionPattern::Ladder : TransitionPattern::Box, unchanged};
}

// ---------------------------------------------------------------------------
// Closure condition
// ---------------------------------------------------------------------------

// L1 distance from a point of the open unit cube to the integer points whose
// coordinate sum has the given parity. Candidates outside {0,1}^4 are
// dominated coordinatewise, so scanning the cube vertices suffices.
template <class T>
T lattice_l1_distance(const std::array<T, 4>& x, int parity) {
  bool first = true;
  T best{};
  for (int v = 0; v < 16; ++v) {
    int ones = 0;
    T d{};
    for (int i = 0; i < 4; ++i) {
      if (v & (1 << i)) {
        ++ones;
        d = d + (T(1) - x[i]);
      } else {
        d = d + x[i];
      }
    }
    if (ones % 2 != parity) continue;
    if (first || d < best) {
      best = d;
      first = false;
    }
  }
  return best;
}

// Necessary condition for a generic quadrilateral with the given angles: the
// fractional parts must be farther than 1 (in L1) from the integer points of
// the opposite parity lattice, and must not all equal 1/2 (a generic
// spherical rectangle does not exist). Equivalently, for an even order sum,
// the fractional parts lie in the open cross-polytope spanned by the
// even-parity vertices of the unit cube, minus its center.
template <class T>
bool closure_condition(const AngleVec<T>& angles) {
  int lattice_parity = (angles.sigma() % 2 == 0) ? 1 : 0;
  T d = lattice_l1_distance(angles.frac, lattice_parity);
  if (!(d > T(1))) return false;
  T half = T(1) / T(2);
  bool center = true;
  for (int i = 0; i < 4; ++i)
    if (angles.frac[i] != half) center = false;
  return !center;
}

}  // namespace sphquad
