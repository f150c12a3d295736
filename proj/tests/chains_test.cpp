// Chain engine: fixed-angle transitions, net-level neighbor diagrams, maximal
// chain assembly, end degeneration kinds, and lower-bound counting.
#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>
#include <string>

#include "sphquad/chains.hpp"

using namespace sphquad;

namespace {

AngleVector frac4(double a, double b, double c, double d, std::array<int, 4> order) {
  return AngleVector::from_parts(order, {a, b, c, d});
}

std::vector<std::string> chain_labels(const Chain& c) {
  std::vector<std::string> out;
  for (const auto& n : c.nets) out.push_back(print_label(n));
  return out;
}

// Multiset of chain lengths, as a sorted vector.
std::vector<int> lengths(const std::vector<Chain>& cs) {
  std::vector<int> out;
  for (const auto& c : cs) out.push_back(c.length());
  std::sort(out.begin(), out.end());
  return out;
}

bool degenerate(EndKind k) { return k == EndKind::Modulus0 || k == EndKind::ModulusInf; }

}  // namespace

TEST_CASE("fixed-angle transition complements the untouched pair") {
  // Dyadic values keep the complements exact.
  std::array<double, 4> q{0.625, 0.75, 0.6875, 0.875};  // a+b < c+d, a+d > b+c
  auto top = transition(q, Direction::Top);
  CHECK(top == std::array<double, 4>{0.375, 0.25, 0.6875, 0.875});
  auto left = transition(q, Direction::Left);
  CHECK(left == std::array<double, 4>{0.625, 0.25, 0.3125, 0.875});

  CHECK_THROWS_AS(transition(q, Direction::Bottom), DirectionBlocked);
  CHECK_THROWS_AS(transition(q, Direction::Right), DirectionBlocked);
}

TEST_CASE("transition involution and two-step exclusivity") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> U(0.01, 0.99);
  int tried = 0;
  while (tried < 10000) {
    std::array<double, 4> q{U(rng), U(rng), U(rng), U(rng)};
    if (!pyramid_membership(q).interior()) continue;
    ++tried;

    std::vector<Direction> dirs;
    try {
      dirs = degeneration_directions(q);
    } catch (const BoundaryTie&) {
      continue;
    }
    for (Direction d : dirs) {
      std::array<double, 4> r;
      try {
        r = transition(q, d);
      } catch (const TargetInfeasible&) {
        continue;
      }
      // Same direction back is permitted and inverts up to one rounding of
      // the double complement.
      auto back = transition(r, d);
      for (int i = 0; i < 4; ++i) CHECK(back[i] == Catch::Approx(q[i]).margin(1e-12));
    }

    // Two steps away complements all four angles; the fully complemented
    // quadruple is never feasible together with the original.
    std::array<double, 4> full{1 - q[0], 1 - q[1], 1 - q[2], 1 - q[3]};
    CHECK_FALSE(pyramid_membership(full).interior());
  }
}

TEST_CASE("direction between complement patterns") {
  CHECK(direction_between({0, 0, 0, 0}, {1, 1, 0, 0}) == Direction::Top);
  CHECK(direction_between({0, 0, 0, 0}, {0, 0, 1, 1}) == Direction::Bottom);
  CHECK(direction_between({1, 0, 0, 1}, {1, 1, 1, 1}) == Direction::Left);
  CHECK(direction_between({0, 0, 1, 0}, {1, 0, 1, 1}) == Direction::Right);
  CHECK_THROWS_AS(direction_between({0, 0, 0, 0}, {1, 1, 1, 1}), Error);
}

TEST_CASE("gated neighbors on the x ladder") {
  // With a+c+d < 1+b the face (a,b,1-c,d) of X01 passes a triple intersection
  // to X'00; with the reverse inequality the target leaves the pyramid.
  auto yes = frac4(0.3, 0.8, 0.5, 0.45, {0, 0, 0, 1});  // 1.25 < 1.8
  auto no = frac4(0.65, 0.3, 0.5, 0.6, {0, 0, 0, 1});   // 1.75 > 1.3
  auto x01 = parse_label("X[0,1]");

  auto nb = net_neighbors(x01, yes);
  REQUIRE(nb.size() == 1);
  CHECK(print_label(nb[0].label) == "X'[0,0]");
  CHECK(nb[0].dir == Direction::Right);

  REQUIRE(net_feasible(x01, no).feasible);
  CHECK(net_neighbors(x01, no).empty());
}

TEST_CASE("gated neighbors between R11 and S11") {
  auto a = frac4(0.248, 0.384, 0.691, 0.486, {0, 0, 1, 1});  // sum < 2
  auto nb = net_neighbors(parse_label("R[1,1]"), a);
  REQUIRE(nb.size() == 1);
  CHECK(print_label(nb[0].label) == "S[1,1]");

  auto back = net_neighbors(parse_label("S[1,1]"), a);
  REQUIRE(back.size() == 1);
  CHECK(print_label(back[0].label) == "R[1,1]");
}

TEST_CASE("only one of the V / V-prime continuations exists") {
  // a+b+c < 1+d picks V21 from Z'10; the reverse picks V'21.
  auto toV = frac4(0.023, 0.790, 0.311, 0.255, {0, 1, 0, 2});   // 1.124 < 1.255
  auto toVp = frac4(0.039, 0.848, 0.629, 0.500, {0, 1, 0, 2});  // 1.516 > 1.5
  auto zp10 = parse_label("Z'[1,0]");

  std::set<std::string> n1;
  for (const auto& nb : net_neighbors(zp10, toV)) n1.insert(print_label(nb.label));
  CHECK(n1.count("V[2,1]") == 1);
  CHECK(n1.count("V'[2,1]") == 0);

  std::set<std::string> n2;
  for (const auto& nb : net_neighbors(zp10, toVp)) n2.insert(print_label(nb.label));
  CHECK(n2.count("V'[2,1]") == 1);
  CHECK(n2.count("V[2,1]") == 0);
}

TEST_CASE("a digon on the order-5 side of S11 blocks the move to R11") {
  auto a = frac4(0.248, 0.384, 0.691, 0.486, {0, 0, 1, 1});
  auto decorated = parse_label("S[1,1] + D15@side0");
  REQUIRE(net_feasible(decorated, a).feasible);
  for (const auto& nb : net_neighbors(decorated, a))
    CHECK(print_label(nb.label) != "R[1,1]");
  // The plain net passes through (previous test); the decorated one
  // conformally degenerates instead: its bottom side contracts to a point.
  auto end = chaindetail::degeneration_at(decorated, Direction::Bottom);
  REQUIRE(end.has_value());
  CHECK(*end == EndKind::ModulusInf);
  CHECK_FALSE(chaindetail::degeneration_at(parse_label("S[1,1]"), Direction::Bottom));
}

TEST_CASE("uncatalogued labels are rejected") {
  auto a = frac4(0.3, 0.4, 0.5, 0.6, {0, 3, 0, 3});
  CHECK_THROWS_AS(net_neighbors(parse_label("W[3,3]"), a), UncataloguedLabel);
  CHECK_THROWS_AS(build_chains(a), UncataloguedLabel);
}

TEST_CASE("worked chain: X01 X'00 X10 of length 2") {
  auto a = frac4(0.531, 0.938, 0.463, 0.907, {0, 0, 0, 1});
  auto cs = build_chains(a);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].length() == 2);
  CHECK(chain_labels(cs[0]) ==
        std::vector<std::string>{"X[1,0]", "X'[0,0]", "X[0,1]"});
  CHECK(cs[0].transitions ==
        std::vector<Direction>{Direction::Bottom, Direction::Right});
  // Ends: the free horizontal move at X10 contracts an order-0 lateral side
  // (sides 0 and 2 meet), the free vertical move at X01 contracts the order-0
  // bottom side (sides 1 and 3 meet).
  CHECK(cs[0].low.kind == EndKind::Modulus0);
  CHECK(cs[0].high.kind == EndKind::ModulusInf);
}

TEST_CASE("worked chain: R11 S11 of length 1, both ends modulus 0") {
  auto a = frac4(0.248, 0.384, 0.691, 0.486, {0, 0, 1, 1});
  auto cs = build_chains(a);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].length() == 1);
  CHECK(chain_labels(cs[0]) == std::vector<std::string>{"R[1,1]", "S[1,1]"});
  CHECK(cs[0].low.kind == EndKind::Modulus0);
  CHECK(cs[0].high.kind == EndKind::Modulus0);

  auto b = count_bounds(a);
  CHECK(b.per_modulus_lo == 0);
  CHECK(b.per_modulus_hi == 0);
  CHECK(b.small_k_lo == 2);
  CHECK(b.small_k_hi == 2);
  CHECK(b.large_k_lo == 0);
  CHECK(b.large_k_hi == 0);
  CHECK_FALSE(b.open_interval);
}

TEST_CASE("worked chain: V21 Z'10 Z11 Z'01 Vbar21 of length 4") {
  auto a = frac4(0.209, 0.040, 0.628, 0.479, {0, 1, 0, 2});
  auto cs = build_chains(a);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].length() == 4);
  CHECK(chain_labels(cs[0]) == std::vector<std::string>{"V[2,1]", "Z'[1,0]", "Z[1,1]",
                                                        "Z'[0,1]", "Vbar[2,1]"});
  CHECK(degenerate(cs[0].low.kind));
  CHECK(degenerate(cs[0].high.kind));
  CHECK(cs[0].low.kind != cs[0].high.kind);
}

TEST_CASE("worked chain: V31 Z'20 Z21 Z'11 Z12 Z'02 Vbar31 of length 6") {
  auto a = frac4(0.209, 0.040, 0.628, 0.479, {0, 1, 0, 3});
  auto cs = build_chains(a);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].length() == 6);
  CHECK(chain_labels(cs[0]) ==
        std::vector<std::string>{"V[3,1]", "Z'[2,0]", "Z[2,1]", "Z'[1,1]", "Z[1,2]",
                                 "Z'[0,2]", "Vbar[3,1]"});
}

TEST_CASE("W22 yields exactly one chain of length 1 in each regime") {
  // The four regimes: sign of a+b vs c+d crossed with fractional sum vs 2.
  const std::array<std::array<double, 4>, 4> samples = {{
      {0.531, 0.938, 0.463, 0.907},  // a+b > c+d, sum > 2: {V'22, U22}
      {0.300, 0.403, 0.795, 0.622},  // a+b < c+d, sum > 2: {V22, U22}
      {0.875, 0.145, 0.058, 0.813},  // a+b > c+d, sum < 2: {V'22, W22}
      {0.248, 0.384, 0.691, 0.486},  // a+b < c+d, sum < 2: {V22, W22}
  }};
  for (const auto& f : samples) {
    auto cs = build_chains(frac4(f[0], f[1], f[2], f[3], {0, 2, 0, 2}));
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].length() == 1);
  }
}

TEST_CASE("quadruple-intersection boundary end") {
  // Exact dyadic tie a+d = 1-c+b on the face (a,b,1-c,d) of X01: the free
  // horizontal move hits a quadruple intersection; the limit quadrilateral is
  // not degenerate. The vertical end still conformally degenerates.
  auto a = frac4(0.5, 0.5, 0.25, 0.75, {0, 0, 0, 1});
  auto cs = build_chains(a);
  REQUIRE(cs.size() == 1);
  REQUIRE(cs[0].length() == 0);
  CHECK(chain_labels(cs[0]) == std::vector<std::string>{"X[0,1]"});
  std::multiset<EndKind> kinds{cs[0].low.kind, cs[0].high.kind};
  CHECK(kinds.count(EndKind::QuadrupleBoundary) == 1);
  CHECK(kinds.count(EndKind::ModulusInf) == 1);
}

TEST_CASE("x ladder case table for n = 2, 3, 4") {
  // Expected multiset of chain lengths per sign pattern of the four defining
  // inequalities (even n: sum > 2, a+d < b+c, a+c < b+d, a+b > c+d; odd n:
  // a+b+d > 1+c, a+c+d < 1+b, b+c+d > 1+a, a+b+c > 1+d), keyed by the node
  // removal rule. Patterns may also come out empty when the remaining
  // pyramid inequalities fail.
  auto expect = [](int n, const std::string& pat) -> std::vector<int> {
    int h = n / 2;  // floor
    bool even = n % 2 == 0;
    if (pat == "TTTT") return std::vector<int>(1, 2 * n);
    if (pat == "FTTT")  // remove even-k X
      return even ? std::vector<int>(h, 2) : [&] {
        std::vector<int> v(h, 2);
        v.push_back(1);
        return v;
      }();
    if (pat == "TFTT") {  // remove even-k X'
      std::vector<int> v(h, 2);
      v.insert(v.end(), even ? 1 : 2, 0);
      return v;
    }
    if (pat == "TTFT") {  // remove odd-k X: runs 1, 2, ..., 2, 1
      if (even) {
        std::vector<int> v(h - 1, 2);
        v.insert(v.end(), 2, 1);
        return v;
      }
      std::vector<int> v(h, 2);
      v.push_back(1);
      return v;
    }
    if (pat == "TTTF") {  // remove odd-k X'
      std::vector<int> v(even ? h : h + 1, 2);
      if (even) v.push_back(0);
      return v;
    }
    if (pat == "TTFF") {  // remove odd-k X and odd-k X'
      std::vector<int> v(even ? h : h + 1, 1);
      if (even) v.push_back(0);
      return v;
    }
    if (pat == "TFTF") return std::vector<int>(n + 1, 0);  // remove all X'
    if (pat == "TFFT") {  // remove odd-k X and even-k X'
      std::vector<int> v(h, 1);
      v.push_back(0);
      return v;
    }
    if (pat == "FTTF")  // remove even-k X and odd-k X'
      return std::vector<int>(even ? h : h + 1, 1);
    if (pat == "FTFT") return std::vector<int>(n, 0);  // remove all X
    if (pat == "FFTT") {  // remove even-k X and even-k X'
      std::vector<int> v(h, 1);
      if (!even) v.push_back(0);
      return v;
    }
    if (pat == "TFFF") return std::vector<int>(h + 1, 0);
    if (pat == "FTFF" || pat == "FFTF")
      return std::vector<int>(even ? h : h + 1, 0);
    if (pat == "FFFT") return std::vector<int>(h, 0);
    return {};  // FFFF: nothing feasible
  };

  std::mt19937 rng(77);
  std::uniform_real_distribution<double> U(0.02, 0.98);
  for (int n : {2, 3, 4}) {
    std::map<std::string, int> seen;
    for (int t = 0; t < 20000; ++t) {
      double a = U(rng), b = U(rng), c = U(rng), d = U(rng);
      std::string pat;
      if (n % 2 == 0) {
        pat += (a + b + c + d > 2) ? 'T' : 'F';
        pat += (a + d < b + c) ? 'T' : 'F';
        pat += (a + c < b + d) ? 'T' : 'F';
        pat += (a + b > c + d) ? 'T' : 'F';
      } else {
        pat += (a + b + d > 1 + c) ? 'T' : 'F';
        pat += (a + c + d < 1 + b) ? 'T' : 'F';
        pat += (b + c + d > 1 + a) ? 'T' : 'F';
        pat += (a + b + c > 1 + d) ? 'T' : 'F';
      }
      auto cs = build_chains(frac4(a, b, c, d, {0, 0, 0, n}));
      if (cs.empty()) continue;
      auto exp = expect(n, pat);
      std::sort(exp.begin(), exp.end());
      INFO("n=" << n << " pattern " << pat);
      REQUIRE(lengths(cs) == exp);
      seen[pat]++;
    }
    // Every non-vacuous pattern must actually be exercised.
    int nonvacuous = 0;
    for (const char* p :
         {"TTTT", "FTTT", "TFTT", "TTFT", "TTTF", "TTFF", "TFTF", "TFFT", "FTTF",
          "FTFT", "FFTT", "TFFF", "FTFF", "FFTF", "FFFT"})
      nonvacuous += seen[p] > 0;
    CHECK(nonvacuous == 15);
  }
}

TEST_CASE("chains partition the feasible labels") {
  std::mt19937 rng(5150);
  std::uniform_real_distribution<double> U(0.02, 0.98);
  const std::vector<std::array<int, 4>> orders = {
      {0, 0, 1, 1}, {0, 0, 0, 2}, {0, 1, 0, 1}, {0, 1, 0, 2}, {0, 1, 0, 3}, {0, 2, 0, 2}};
  for (const auto& ord : orders) {
    const ChainDiagram& d = diagram_for_orders(ord);
    for (int t = 0; t < 300; ++t) {
      auto a = frac4(U(rng), U(rng), U(rng), U(rng), ord);
      std::multiset<std::string> in_chains;
      for (const auto& c : build_chains(a))
        for (const auto& lbl : c.nets) in_chains.insert(print_label(lbl));
      std::multiset<std::string> feasible;
      for (const auto& lbl : d.nodes)
        if (net_feasible(lbl, a).feasible) feasible.insert(print_label(lbl));
      REQUIRE(in_chains == feasible);
    }
  }
}

TEST_CASE("at most one of V and V-prime is feasible") {
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> U(0.02, 0.98);
  const std::vector<std::array<int, 4>> orders = {{0, 1, 0, 2}, {0, 1, 0, 3}, {0, 2, 0, 2}};
  for (const auto& ord : orders) {
    const ChainDiagram& d = diagram_for_orders(ord);
    for (int t = 0; t < 500; ++t) {
      auto a = frac4(U(rng), U(rng), U(rng), U(rng), ord);
      for (bool barred : {false, true}) {
        int v = 0, vp = 0;
        for (const auto& lbl : d.nodes) {
          if (lbl.barred != barred) continue;
          if (lbl.family == Family::V && net_feasible(lbl, a).feasible) ++v;
          if (lbl.family == Family::Vp && net_feasible(lbl, a).feasible) ++vp;
        }
        CHECK(v + vp <= 1);
      }
    }
  }
}

TEST_CASE("parity law of end moduli") {
  std::mt19937 rng(8128);
  std::uniform_real_distribution<double> U(0.02, 0.98);
  const std::vector<std::array<int, 4>> orders = {{0, 0, 1, 1}, {0, 0, 0, 1}, {0, 0, 0, 2},
                                                  {0, 0, 0, 3}, {0, 1, 0, 1}, {0, 1, 0, 2},
                                                  {0, 1, 0, 3}, {0, 2, 0, 2}};
  for (const auto& ord : orders)
    for (int t = 0; t < 400; ++t) {
      auto a = frac4(U(rng), U(rng), U(rng), U(rng), ord);
      for (const auto& c : build_chains(a)) {
        if (!degenerate(c.low.kind) || !degenerate(c.high.kind)) continue;
        if (c.length() % 2 == 0)
          CHECK(c.low.kind != c.high.kind);
        else
          CHECK(c.low.kind == c.high.kind);
      }
      count_bounds(a);  // must never throw a parity violation
    }
}

TEST_CASE("lower bounds on the x ladder") {
  // Full gate pattern, n = 2: one chain of length 4 with ends {0, inf} gives
  // one quadrilateral for every modulus value.
  auto b1 = count_bounds(frac4(0.788, 0.924, 0.384, 0.409, {0, 0, 0, 2}));
  CHECK(b1.per_modulus_lo == 1);
  CHECK(b1.per_modulus_hi == 1);
  CHECK(b1.small_k_lo == 1);
  CHECK(b1.large_k_lo == 1);

  // Pattern with only the vertical-type gates, n = 2: n+1 chains of length 0,
  // each covering all moduli.
  auto b2 = count_bounds(frac4(0.809, 0.883, 0.819, 0.894, {0, 0, 0, 2}));
  CHECK(b2.per_modulus_lo == 3);
  CHECK(b2.per_modulus_hi == 3);
}

TEST_CASE("open count interval above fractional sum 2") {
  // An order-0 net with an attached disk may form a second chain of length 0;
  // the bounds widen to an interval.
  auto b = count_bounds(frac4(0.300, 0.403, 0.795, 0.622, {0, 0, 1, 1}));
  CHECK(b.open_interval);
  CHECK(b.per_modulus_lo == 1);
  CHECK(b.per_modulus_hi == 2);
  CHECK(b.small_k_lo == 1);
  CHECK(b.small_k_hi == 2);
  CHECK(b.large_k_lo == 1);
  CHECK(b.large_k_hi == 2);
}
