// Geometry module tests: arrangement tracing, realization, continuation.
//
// Oracle values marked in comments:
//  - cuboctahedral reference configuration: combinatorics (12/24/14, 8+6) are
//    forced for any four great circles in general position; total area 4.
//  - symmetric configuration angles: for normals along the four cube
//    diagonals, adjacent normals meet at arccos(+-1/3), computed
//    independently: arccos(1/3)/pi = 0.3918265520306073,
//    arccos(-1/3)/pi = 0.6081734479693927.
#include <catch2/catch_amalgamated.hpp>

#include "sphquad/geometry.hpp"

using namespace sphquad;

static FourCircleConfig cube_diagonal_config() {
  double s = 1.0 / std::sqrt(3.0);
  return FourCircleConfig{{Vec3{s, s, s}, Vec3{s, s, -s}, Vec3{s, -s, s}, Vec3{-s, s, s}}};
}

TEST_CASE("angle_between on cube-diagonal normals") {
  auto cfg = cube_diagonal_config();
  // n1.n2 = 1/3 -> angle_between = acos(-1/3)/pi (oracle 0.6081734479693927).
  double got = angle_between({cfg.normals[0]}, {cfg.normals[1]});
  REQUIRE(got == Catch::Approx(0.6081734479693927).epsilon(1e-12));
}

TEST_CASE("arrangement of a generic configuration has cuboctahedral combinatorics") {
  auto cfg = cube_diagonal_config();
  auto arr = trace_arrangement(cfg);
  REQUIRE(arr.vertices.size() == 12);
  REQUIRE(arr.darts.size() == 48);
  REQUIRE(arr.faces.size() == 14);
  int tris = 0, quads = 0;
  double total = 0;
  for (const auto& f : arr.faces) {
    (f.triangle ? tris : quads) += 1;
    REQUIRE(f.area > 0);
    total += f.area;
  }
  REQUIRE(tris == 8);
  REQUIRE(quads == 6);
  REQUIRE(total == Catch::Approx(4.0).epsilon(1e-10));

  // Every edge separates a triangle from a quadrilateral.
  for (const auto& d : arr.darts) {
    bool t1 = arr.faces[d.face].triangle;
    bool t2 = arr.faces[arr.darts[d.twin].face].triangle;
    REQUIRE(t1 != t2);
  }
}

TEST_CASE("distinguished face roles and area identities") {
  auto cfg = cube_diagonal_config();
  auto fa = face_areas(cfg);
  REQUIRE(fa.total() == Catch::Approx(4.0).epsilon(1e-10));
  // F is a quadrilateral, the four neighbors are triangles.
  REQUIRE_FALSE(fa.triangle[fa.roles.at("F")]);
  for (const char* r : {"bottom", "top", "left", "right"}) REQUIRE(fa.triangle[fa.roles.at(r)]);
  // Identities: F area = a+b+c+d-2; bottom-top = (c+d)-(a+b); left-right = (b+c)-(a+d).
  REQUIRE(fa.role_area("F") ==
          Catch::Approx(fa.a + fa.b + fa.c + fa.d - 2).margin(1e-10));
  REQUIRE(fa.role_area("bottom") - fa.role_area("top") ==
          Catch::Approx((fa.c + fa.d) - (fa.a + fa.b)).margin(1e-10));
  REQUIRE(fa.role_area("left") - fa.role_area("right") ==
          Catch::Approx((fa.b + fa.c) - (fa.a + fa.d)).margin(1e-10));
}

TEST_CASE("realize_config reproduces requested angles") {
  // Asymmetric but comfortably feasible angles.
  double a = 0.55, b = 0.62, c = 0.58, d = 0.66;
  Realizer rz(a, b, c, d);
  double t = 0.5 * (rz.e_min() + rz.e_max());
  auto cfg = rz.with_e(t);
  auto fa = face_areas(cfg);
  REQUIRE(fa.a == Catch::Approx(a).margin(1e-9));
  REQUIRE(fa.b == Catch::Approx(b).margin(1e-9));
  REQUIRE(fa.c == Catch::Approx(c).margin(1e-9));
  REQUIRE(fa.d == Catch::Approx(d).margin(1e-9));
  REQUIRE(fa.e == Catch::Approx(t).margin(1e-9));
  // Gauge: n1 = e_z, n2 in the xz-plane.
  REQUIRE(norm(cfg.normals[0] - Vec3{0, 0, 1}) < 1e-12);
  REQUIRE(std::abs(cfg.normals[1].y) < 1e-12);
}

TEST_CASE("monotone coupling of e and z along the family") {
  Realizer rz(0.55, 0.62, 0.58, 0.66);
  double s0 = rz.s_lo() + 0.2 * (rz.s_hi() - rz.s_lo());
  double s1 = rz.s_lo() + 0.8 * (rz.s_hi() - rz.s_lo());
  auto f0 = face_areas(rz.at_param(s0));
  auto f1 = face_areas(rz.at_param(s1));
  // e and z move in opposite directions.
  REQUIRE((f1.e - f0.e) * (f1.z - f0.z) < 0);
}

TEST_CASE("continue_to_triple contracts the requested face") {
  double a = 0.55, b = 0.72, c = 0.58, d = 0.51;
  // a+b > c+d: bottom contractible, top blocked.
  auto res = continue_to_triple(a, b, c, d, "bottom");
  REQUIRE(res.trace.size() >= 2);
  REQUIRE(res.trace.back().areas.at("bottom") < 1e-7);
  for (const auto& st : res.trace) {
    REQUIRE(st.areas.at("top") > 0);
    REQUIRE(st.areas.at("F") > 0);
  }
  REQUIRE_THROWS_AS(continue_to_triple(a, b, c, d, "top"), DirectionBlocked);
  // a+d (1.06) < b+c (1.30): right contracts, left blocked.
  REQUIRE_THROWS_AS(continue_to_triple(a, b, c, d, "left"), DirectionBlocked);

  // Tie: a+b == c+d -> quadruple boundary.
  REQUIRE_THROWS_AS(continue_to_triple(0.6, 0.6, 0.55, 0.65, "bottom"), QuadrupleBoundary);
}

TEST_CASE("detect_triple flags degenerate configurations") {
  auto cfg = cube_diagonal_config();
  REQUIRE_FALSE(detect_triple(cfg));
  // Force circle 4 through the intersection point of circles 1,2: normal
  // orthogonal to cross(n1,n2).
  Vec3 v = normalized(cross(cfg.normals[0], cfg.normals[1]));
  Vec3 n4 = normalized(cross(v, Vec3{0.3, -0.2, 0.9}));
  REQUIRE(detect_triple(FourCircleConfig{{cfg.normals[0], cfg.normals[1], cfg.normals[2], n4}}));
}
