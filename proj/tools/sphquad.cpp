// sphquad: command-line front end for the spherical-quadrilateral engines.
//
// Subcommands: validate, classify, enumerate, feasible, chains, realize,
// render. Exit codes: 0 success, 2 infeasible or invalid input, 1 internal
// error. Set SPHQUAD_LOG=1 for progress notes on stderr.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sphquad/chains.hpp"
#include "sphquad/io.hpp"

using namespace sphquad;

namespace {

bool logging_enabled() {
  const char* v = std::getenv("SPHQUAD_LOG");
  return v && *v;
}

void log_note(const std::string& msg) {
  if (logging_enabled()) std::cerr << "sphquad: " << msg << "\n";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

AngleVector parse_angles(const std::string& spec) {
  std::vector<double> v;
  for (const auto& tok : split(spec, ',')) v.push_back(std::stod(tok));
  if (v.size() != 4) throw Error("--angles needs four comma-separated values");
  return AngleVector::from_values({v[0], v[1], v[2], v[3]});
}

Rat parse_rat(const std::string& tok) {
  auto slash = tok.find('/');
  if (slash == std::string::npos) return Rat(std::stoll(tok), 1);
  return Rat(std::stoll(tok.substr(0, slash)), std::stoll(tok.substr(slash + 1)));
}

AngleVectorExact parse_exact(const std::string& spec) {
  std::vector<Rat> v;
  for (const auto& tok : split(spec, ',')) v.push_back(parse_rat(tok));
  if (v.size() != 4) throw Error("--exact needs four comma-separated rationals p/q");
  return AngleVectorExact::from_values({v[0], v[1], v[2], v[3]});
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return json::parse(in);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

// The gating inequality of a transition, evaluated on the source face angles.
template <class T>
json explain_gate(const std::array<T, 4>& q, Direction dir) {
  json j;
  j["direction"] = direction_name(dir);
  bool vertical = dir == Direction::Top || dir == Direction::Bottom;
  double lhs = to_double(q[0]) + to_double(vertical ? q[1] : q[3]);
  double rhs = to_double(q[2]) + to_double(vertical ? q[3] : q[1]);
  j["inequality"] = vertical ? (dir == Direction::Top ? "q0+q1 < q2+q3" : "q0+q1 > q2+q3")
                             : (dir == Direction::Left ? "q0+q3 > q1+q2" : "q0+q3 < q1+q2");
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  return j;
}

// Base family letter for --scope filtering ("X" covers X, X', Xbar, Xbar').
char scope_letter(Family f) {
  switch (f) {
    case Family::X:
    case Family::Xp: return 'X';
    case Family::Z:
    case Family::Zp: return 'Z';
    case Family::U: return 'U';
    case Family::V:
    case Family::Vp: return 'V';
    case Family::W: return 'W';
    case Family::R: return 'R';
    case Family::S: return 'S';
    case Family::P: return 'P';
  }
  return '?';
}

template <class T>
json chains_to_json(const AngleVec<T>& angles, const std::string& scope, bool explain) {
  json out;
  out["chains"] = json::array();
  std::string letters;
  for (const auto& tok : split(scope, ','))
    if (!tok.empty()) letters += tok[0];

  for (const Chain& c : build_chains(angles)) {
    if (!letters.empty()) {
      bool in_scope = false;
      for (const auto& lbl : c.nets)
        if (letters.find(scope_letter(lbl.family)) != std::string::npos) in_scope = true;
      if (!in_scope) continue;
    }
    json jc;
    jc["nets"] = json::array();
    for (const auto& lbl : c.nets) jc["nets"].push_back(print_label(lbl));
    jc["length"] = c.length();
    jc["transitions"] = json::array();
    for (size_t i = 0; i < c.transitions.size(); ++i) {
      if (explain) {
        auto q = net_feasible(c.nets[i], angles).fixed.value;
        jc["transitions"].push_back(explain_gate(q, c.transitions[i]));
      } else {
        jc["transitions"].push_back(direction_name(c.transitions[i]));
      }
    }
    auto end_json = [](const ChainEnd& e) {
      json je;
      je["kind"] = end_kind_name(e.kind);
      if (e.dir) je["direction"] = direction_name(*e.dir);
      return je;
    };
    jc["ends"] = {end_json(c.low), end_json(c.high)};
    out["chains"].push_back(jc);
  }

  CountBounds b = count_bounds(angles);
  out["bounds"] = {{"per_modulus", {b.per_modulus_lo, b.per_modulus_hi}},
                   {"small_modulus", {b.small_k_lo, b.small_k_hi}},
                   {"large_modulus", {b.large_k_lo, b.large_k_hi}},
                   {"open_interval", b.open_interval}};
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spherical quadrilateral nets, feasibility, chains and rendering"};
  app.require_subcommand(1);
  unsigned seed = 0;
  int jobs = 1;
  app.add_option("--seed", seed, "seed for randomized sampling (reproducible output)");
  app.add_option("--jobs", jobs, "worker threads for parallel sweeps");

  std::string in_path, out_path, label_str, angle_str, exact_str, t_str, dir_str, scope_str;
  int bound = 1;
  bool explain = false;

  auto* validate = app.add_subcommand("validate", "validate a net JSON file");
  validate->add_option("--in", in_path, "net JSON path")->required();

  auto* classify_cmd = app.add_subcommand("classify", "classify a net against the catalogue");
  classify_cmd->add_option("--in", in_path, "net JSON path")->required();

  auto* enumerate = app.add_subcommand("enumerate", "list catalogued primitive nets");
  enumerate->add_option("--bound", bound, "maximum total corner order")->required();

  auto* feasible = app.add_subcommand("feasible", "test a label at given angles");
  feasible->add_option("--label", label_str, "net label, e.g. X[0,1]")->required();
  feasible->add_option("--angles", angle_str, "four angles a0,a1,a2,a3");
  feasible->add_option("--exact", exact_str, "four rational angles p/q,...");

  auto* chains_cmd = app.add_subcommand("chains", "maximal chains and count bounds");
  chains_cmd->add_option("--angles", angle_str, "four angles a0,a1,a2,a3");
  chains_cmd->add_option("--exact", exact_str, "four rational angles p/q,...");
  chains_cmd->add_option("--scope", scope_str, "family letters to keep, e.g. X,Z");
  chains_cmd->add_flag("--explain", explain, "append evaluated gating inequalities");

  auto* realize = app.add_subcommand("realize", "realize a circle configuration");
  realize->add_option("--angles", angle_str, "face angles a,b,c,d in (0,1)")->required();
  realize->add_option("--t", t_str, "fifth angle e")->required();
  realize->add_option("--out", out_path, "config JSON output path")->required();

  auto* render = app.add_subcommand("render", "render a config or net as SVG");
  render->add_option("--config", in_path, "config JSON to render");
  render->add_option("--net", label_str, "net JSON to render");
  render->add_option("--out", out_path, "SVG output path")->required();

  CLI11_PARSE(app, argc, argv);
  if (jobs < 1) jobs = 1;
  (void)seed;  // reserved for sampling subcommands

  try {
    if (*validate) {
      Net g = net_from_json(read_json_file(in_path));
      NetReport rep = validate_net(g);
      json j;
      j["valid"] = true;
      j["darts"] = g.n_darts();
      j["faces"] = rep.n_faces;
      j["vertices"] = rep.verts.n_vertices;
      j["corner_order"] = rep.corner_order;
      j["side_order"] = rep.side_order;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*classify_cmd) {
      Net g = net_from_json(read_json_file(in_path));
      try {
        std::cout << print_label(classify(g)) << "\n";
      } catch (const UnknownLabel& e) {
        log_note(e.what());
        std::cout << "uncatalogued\n";
      }
      return 0;
    }
    if (*enumerate) {
      auto all = enumerate_primitive(bound);
      for (const auto& [lbl, net] : all) std::cout << print_label(lbl) << "\n";
      log_note(std::to_string(all.size()) + " labels");
      return 0;
    }
    if (*feasible) {
      NetLabel lbl = parse_label(label_str);
      json j;
      bool ok;
      if (!exact_str.empty()) {
        auto f = net_feasible(lbl, parse_exact(exact_str));
        ok = f.feasible;
        json q = json::array();
        for (const auto& v : f.fixed.value)
          q.push_back(std::to_string(v.num) + "/" + std::to_string(v.den));
        j["fixed_angles"] = q;
        j["witnesses"] = f.detail.facets;
      } else {
        auto f = net_feasible(lbl, parse_angles(angle_str));
        ok = f.feasible;
        j["fixed_angles"] = f.fixed.value;
        j["witnesses"] = f.detail.facets;
      }
      j["label"] = print_label(lbl);
      j["feasible"] = ok;
      std::cout << j.dump(2) << "\n";
      return ok ? 0 : 2;
    }
    if (*chains_cmd) {
      json j = exact_str.empty()
                   ? chains_to_json(parse_angles(angle_str), scope_str, explain)
                   : chains_to_json(parse_exact(exact_str), scope_str, explain);
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*realize) {
      auto a = parse_angles(angle_str);
      FourCircleConfig cfg = realize_config(to_double(a.frac[0]) + a.order[0],
                                            to_double(a.frac[1]) + a.order[1],
                                            to_double(a.frac[2]) + a.order[2],
                                            to_double(a.frac[3]) + a.order[3],
                                            std::stod(t_str));
      write_text_file(out_path, config_to_json(cfg).dump(2) + "\n");
      log_note("wrote " + out_path);
      return 0;
    }
    if (*render) {
      if (!in_path.empty()) {
        FourCircleConfig cfg = config_from_json(read_json_file(in_path));
        write_text_file(out_path, partition_svg(cfg));
      } else if (!label_str.empty()) {
        Net g = net_from_json(read_json_file(label_str));
        write_text_file(out_path, net_svg(g));
      } else {
        throw Error("render needs --config or --net");
      }
      log_note("wrote " + out_path);
      return 0;
    }
  } catch (const InvalidNet& e) {
    std::cerr << "invalid net: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleAngles& e) {
    std::cerr << "infeasible angles: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleParameter& e) {
    std::cerr << "infeasible parameter: " << e.what() << "\n";
    return 2;
  } catch (const UnknownLabel& e) {
    std::cerr << "unknown label: " << e.what() << "\n";
    return 2;
  } catch (const UncataloguedLabel& e) {
    std::cerr << "uncatalogued label: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
