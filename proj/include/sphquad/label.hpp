// Symbolic net labels: family + parameters + decorations, with a round-trip
// text grammar used by the CLI ("X'[2,1] mu=1 + D15@side3 x2", "Zbar[0,1]",
// "P0").
#pragma once

#include <string>
#include <vector>

#include "sphquad/base.hpp"
#include "sphquad/builders.hpp"

namespace sphquad {

// A digon attached to one side of the core net. The type names the two digon
// corner orders as printed (D15, D24, ...); `count` stacks several copies of
// the same digon on the same side.
struct DigonSpec {
  int order_a = 0;
  int order_b = 0;
  int side = 0;
  int count = 1;

  friend bool operator==(const DigonSpec& x, const DigonSpec& y) {
    return x.order_a == y.order_a && x.order_b == y.order_b && x.side == y.side &&
           x.count == y.count;
  }
};

// Symbolic name of a generic net: a primitive family with its two extension
// parameters, an optional barred (mirror) flag, an optional pseudo-diagonal
// insertion parameter mu, and optional digon decorations.
struct NetLabel {
  Family family = Family::P;
  bool barred = false;
  int k = 0;
  int l = 0;
  int mu = 0;
  std::vector<DigonSpec> digons;

  friend bool operator==(const NetLabel& x, const NetLabel& y) {
    return x.family == y.family && x.barred == y.barred && x.k == y.k && x.l == y.l &&
           x.mu == y.mu && x.digons == y.digons;
  }
};

inline std::string family_token(Family f) {
  switch (f) {
    case Family::P: return "P";
    case Family::X: return "X";
    case Family::Xp: return "X'";
    case Family::Z: return "Z";
    case Family::Zp: return "Z'";
    case Family::R: return "R";
    case Family::S: return "S";
    case Family::U: return "U";
    case Family::V: return "V";
    case Family::Vp: return "V'";
    case Family::W: return "W";
  }
  throw UnknownLabel("unrecognized family enumerator");
}

inline std::string print_label(const NetLabel& lbl) {
  std::string out;
  if (lbl.family == Family::P && lbl.mu == 0) {
    out = "P0";
  } else if (lbl.family == Family::P) {
    out = "P" + std::to_string(lbl.mu);
  } else {
    out = family_token(lbl.family);
    if (lbl.barred) out += "bar";
    out += "[" + std::to_string(lbl.k) + "," + std::to_string(lbl.l) + "]";
    if (lbl.mu > 0) out += " mu=" + std::to_string(lbl.mu);
  }
  for (const auto& d : lbl.digons) {
    out += " + D" + std::to_string(d.order_a) + std::to_string(d.order_b) + "@side" +
           std::to_string(d.side);
    if (d.count > 1) out += " x" + std::to_string(d.count);
  }
  return out;
}

namespace detail {

inline bool eat(const std::string& s, std::size_t& pos, const std::string& tok) {
  if (s.compare(pos, tok.size(), tok) != 0) return false;
  pos += tok.size();
  return true;
}

inline int eat_int(const std::string& s, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start) throw UnknownLabel("expected integer at position " +
                                       std::to_string(start) + " in '" + s + "'");
  return std::stoi(s.substr(start, pos - start));
}

}  // namespace detail

inline NetLabel parse_label(const std::string& text) {
  using detail::eat;
  using detail::eat_int;
  std::size_t pos = 0;
  NetLabel lbl;

  // Family token; primed names must be matched before their unprimed prefixes.
  static const std::vector<std::pair<std::string, Family>> tokens = {
      {"X'", Family::Xp}, {"Z'", Family::Zp}, {"V'", Family::Vp}, {"X", Family::X},
      {"Z", Family::Z},   {"V", Family::V},   {"R", Family::R},   {"S", Family::S},
      {"U", Family::U},   {"W", Family::W},   {"P", Family::P}};
  bool matched = false;
  for (const auto& [tok, fam] : tokens) {
    if (eat(text, pos, tok)) {
      lbl.family = fam;
      matched = true;
      break;
    }
  }
  if (!matched) throw UnknownLabel("no family token in '" + text + "'");

  if (lbl.family == Family::P) {
    lbl.mu = eat_int(text, pos);  // P0 is the seed; P1, P2, ... are insertions
  } else {
    lbl.barred = eat(text, pos, "bar");
    if (!eat(text, pos, "[")) throw UnknownLabel("expected '[k,l]' in '" + text + "'");
    lbl.k = eat_int(text, pos);
    if (!eat(text, pos, ",")) throw UnknownLabel("expected ',' in '" + text + "'");
    lbl.l = eat_int(text, pos);
    if (!eat(text, pos, "]")) throw UnknownLabel("expected ']' in '" + text + "'");
    if (eat(text, pos, " mu=")) lbl.mu = eat_int(text, pos);
  }

  while (pos < text.size()) {
    if (!eat(text, pos, " + D"))
      throw UnknownLabel("unexpected trailing text '" + text.substr(pos) + "'");
    DigonSpec d;
    int type = eat_int(text, pos);
    d.order_a = type / 10;
    d.order_b = type % 10;
    if (!eat(text, pos, "@side")) throw UnknownLabel("expected '@side' in '" + text + "'");
    d.side = eat_int(text, pos);
    if (eat(text, pos, " x")) d.count = eat_int(text, pos);
    lbl.digons.push_back(d);
  }
  return lbl;
}

}  // namespace sphquad
