// Net core and immersion layer: reference partition integrity, single-face
// nets, regions, gluing mechanics, masks, reflections, arcs.
#include <catch2/catch_amalgamated.hpp>

#include "sphquad/immersion.hpp"
#include "sphquad/net.hpp"

using namespace sphquad;

TEST_CASE("reference partition integrity") {
  const auto& T = partition_template();
  REQUIRE(T.arr.vertices.size() == 12);
  REQUIRE(T.arr.darts.size() == 48);
  REQUIRE(T.arr.faces.size() == 14);
  int tris = 0, quads = 0;
  for (const auto& f : T.arr.faces) (f.darts.size() == 3 ? tris : quads)++;
  CHECK(tris == 8);
  CHECK(quads == 6);

  // Every dart has a sector symbol matching its numeric angle; sectors around
  // each vertex alternate between the pair angle and its complement and sum
  // to 2 (in units of pi).
  std::map<int, double> around;
  for (int d = 0; d < T.n_darts(); ++d) {
    around[T.arr.darts[d].from] += T.sector_value[d];
    const auto& v = T.arr.vertices[T.arr.darts[d].from];
    CHECK(T.sector[d].pair == circle_pair_index(v.ci, v.cj));
  }
  for (auto& [v, total] : around) CHECK_THAT(total, Catch::Matchers::WithinAbs(2.0, 1e-9));

  // The mirror map is an involution on darts and reverses orientation
  // (twin composition): reflect(twin(reflect(d))) = twin(d)'s behavior is
  // encoded as reflect being built from vertex images; check involution.
  for (int d = 0; d < T.n_darts(); ++d) {
    CHECK(T.reflect_dart[T.reflect_dart[d]] == d);
    CHECK(T.circle_of(T.reflect_dart[d]) == T.reflect_circle[T.circle_of(d)]);
  }
  // Face areas sum to 4 (whole sphere, units of pi).
  double total = 0;
  for (const auto& f : T.arr.faces) total += f.area;
  CHECK_THAT(total, Catch::Matchers::WithinAbs(4.0, 1e-9));
}

TEST_CASE("single face nets validate") {
  const auto& T = partition_template();
  for (size_t f = 0; f < T.arr.faces.size(); ++f) {
    INet Q = face_inet(static_cast<int>(f));
    // Designate every boundary vertex a corner.
    Q.net.corner_darts.clear();
    for (int d = 0; d < Q.net.n_darts(); ++d) Q.net.corner_darts.push_back(d);
    validate_inet(Q, NetKind::Fragment);
    auto rep = validate_net(Q.net, NetKind::Fragment);
    for (int o : rep.corner_order) CHECK(o == 0);
    for (int s : rep.side_order) CHECK(s == 1);
  }
}

TEST_CASE("quadrilateral face as a net: mask zero, four lateral arcs") {
  const auto& T = partition_template();
  // Use an arbitrary quadrilateral face.
  int fq = -1;
  for (size_t f = 0; f < T.arr.faces.size(); ++f)
    if (T.arr.faces[f].darts.size() == 4) fq = static_cast<int>(f);
  REQUIRE(fq >= 0);
  INet Q = face_inet(fq);
  for (int d = 0; d < 4; ++d) Q.net.corner_darts.push_back(d);
  validate_inet(Q, NetKind::Quadrilateral);
  auto mask = complement_mask(Q);
  CHECK(mask == std::array<int, 4>{0, 0, 0, 0});

  Net g = to_net(Q);
  auto arcs = decompose_arcs(g);
  REQUIRE(arcs.size() == 4);
  for (const auto& a : arcs) CHECK(a.kind == ArcKind::Lateral);
  CHECK(is_primitive(g));
}

TEST_CASE("region of two faces across an edge") {
  const auto& T = partition_template();
  // Pick an interior edge of the template: a quad face and its triangle
  // neighbor across dart 0 of the quad.
  int fq = -1;
  for (size_t f = 0; f < T.arr.faces.size(); ++f)
    if (T.arr.faces[f].darts.size() == 4) fq = static_cast<int>(f);
  int td = T.arr.faces[fq].darts[0];
  int ft = T.face_of(T.twin(td));
  INet R = region_inet({fq, ft});
  // 4 + 3 darts total, one interior edge.
  REQUIRE(R.net.n_darts() == 7);
  int interior = 0;
  for (int d = 0; d < R.net.n_darts(); ++d)
    if (!R.net.is_boundary(d)) ++interior;
  CHECK(interior == 2);
  // Designate all five boundary vertices as corners and validate.
  std::vector<int> cyc;
  for (int d = 0; d < R.net.n_darts(); ++d)
    if (R.net.is_boundary(d)) {
      cyc = boundary_cycle(R.net, d);
      break;
    }
  REQUIRE(cyc.size() == 5);
  R.net.corner_darts = cyc;
  validate_inet(R, NetKind::Fragment);
}

TEST_CASE("reflect_inet is an involution on immersed quads") {
  const auto& T = partition_template();
  int fq = -1;
  for (size_t f = 0; f < T.arr.faces.size(); ++f)
    if (T.arr.faces[f].darts.size() == 4) fq = static_cast<int>(f);
  INet Q = face_inet(fq);
  for (int d = 0; d < 4; ++d) Q.net.corner_darts.push_back(d);
  INet R = reflect_inet(reflect_inet(Q));
  validate_inet(R, NetKind::Quadrilateral);
  CHECK(is_isomorphic_labeled(to_net(Q), to_net(R)));
  // A single reflection also yields a valid quadrilateral with zero mask.
  INet M = reflect_inet(Q);
  validate_inet(M, NetKind::Quadrilateral);
  CHECK(complement_mask(M) == std::array<int, 4>{0, 0, 0, 0});
}

TEST_CASE("lune attachment mechanics") {
  const auto& T = partition_template();
  int fq = -1;
  for (size_t f = 0; f < T.arr.faces.size(); ++f)
    if (T.arr.faces[f].darts.size() == 4) fq = static_cast<int>(f);
  INet Q = face_inet(fq);
  for (int d = 0; d < 4; ++d) Q.net.corner_darts.push_back(d);

  for (bool leaving : {true, false}) {
    for (int j = 0; j < 4; ++j) {
      INet R = attach_lune(Q, j, leaving);
      validate_inet(R, NetKind::Quadrilateral);
      auto rep = validate_net(R.net, NetKind::Quadrilateral);
      // Corner orders: the far end of the glued side gains order 1.
      int q_pos = leaving ? (j + 3) % 4 : (j + 1) % 4;
      for (int k = 0; k < 4; ++k)
        CHECK(rep.corner_order[k] == (k == q_pos ? 1 : 0));
      // Side orders: L grows from 1 to 4; the glued side M (order r = 1) is
      // replaced by the lune's leftover chain of order 3 - r = 2.
      int Ls = leaving ? j : (j + 3) % 4;
      int Ms = leaving ? (j + 3) % 4 : j;
      for (int k = 0; k < 4; ++k)
        CHECK(rep.side_order[k] == (k == Ls ? 4 : (k == Ms ? 2 : 1)));
    }
  }
}

TEST_CASE("iterated extension composes") {
  const auto& T = partition_template();
  int fq = -1;
  for (size_t f = 0; f < T.arr.faces.size(); ++f)
    if (T.arr.faces[f].darts.size() == 4) fq = static_cast<int>(f);
  INet Q = face_inet(fq);
  for (int d = 0; d < 4; ++d) Q.net.corner_darts.push_back(d);
  INet R = extend_side(Q, 0, true, 3);
  auto rep = validate_net(R.net, NetKind::Quadrilateral);
  CHECK(rep.corner_order == std::vector<int>{0, 0, 0, 3});
  // The glued side alternates between orders 2 and 1 as lunes stack.
  CHECK(rep.side_order == std::vector<int>{10, 1, 1, 2});
}

TEST_CASE("digon attachment mechanics") {
  const auto& T = partition_template();
  int fq = -1;
  for (size_t f = 0; f < T.arr.faces.size(); ++f)
    if (T.arr.faces[f].darts.size() == 4) fq = static_cast<int>(f);
  INet Q = face_inet(fq);
  for (int d = 0; d < 4; ++d) Q.net.corner_darts.push_back(d);

  auto one = attach_half_sphere(Q, 0);
  CHECK(one.order_split_min == 1);  // D15: side order 1, exposed 5
  auto rep = validate_net(one.net.net, NetKind::Quadrilateral);
  CHECK(rep.side_order[0] == 5);
  CHECK(rep.corner_order == std::vector<int>{1, 1, 0, 0});

  INet two = attach_digon(Q, 0, 2);
  auto rep2 = validate_net(two.net, NetKind::Quadrilateral);
  CHECK(rep2.side_order[0] == 1);
  CHECK(rep2.corner_order == std::vector<int>{2, 2, 0, 0});

  // A side of order >= 6 rejects digons; build one via two extensions.
  INet L = extend_side(extend_side(Q, 0, true, 1), 1, false, 1);
  auto repL = validate_net(L.net, NetKind::Quadrilateral);
  REQUIRE(repL.side_order[0] == 7);
  CHECK_THROWS_AS(attach_half_sphere(L, 0), ForbiddenSide);
}
