#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "walland/error.hpp"
#include "walland/graded_trace.hpp"
#include "walland/json_io.hpp"
#include "walland/scene.hpp"
#include "walland/wall_crossing.hpp"

using namespace walland;
using io::Json;

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitCertificate = 4;

struct Args {
  std::string surface;
  std::string ch;
  std::string s, q;
  std::string to_s, to_q;
  std::string box;
  std::string out;
  std::string scene;
  std::string scene_out;
  long rank_bound = 0;
  long c1_bound = 0;
  int max_depth = 2;
  std::size_t max_nodes = 20000;
  std::size_t n = 1000;
  std::uint64_t seed = 7;
  bool compact = false;
};

void emit(const Json &j, const Args &a) {
  if (a.compact) {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << io::dump(j);
  }
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SchemaError("cannot write '" + path + "'");
  f << text;
}

SurfaceLattice need_surface(const Args &a) {
  if (a.surface.empty()) throw SchemaError("--surface is required");
  return io::load_lattice(a.surface);
}

CharVec need_char(const Args &a, const SurfaceLattice &L) {
  if (a.ch.empty()) throw SchemaError("--char is required");
  auto xs = parse_rational_list(a.ch);
  if (xs.size() != L.rank() + 2) {
    throw SchemaError("--char needs " + std::to_string(L.rank() + 2) + " comma-separated rationals (r, c1..., ch2)");
  }
  return L.make_char(xs.front(), std::vector<Rational>(xs.begin() + 1, xs.end() - 1), xs.back());
}

StabPoint need_point(const std::string &s, const std::string &q, const char *what) {
  if (s.empty() || q.empty()) throw SchemaError(std::string("both coordinates of ") + what + " are required");
  return StabPoint(parse_rational(s), parse_rational(q));
}

const char *heart_name(HeartSign h) {
  switch (h) {
    case HeartSign::StrictUpper:
      return "strict_upper";
    case HeartSign::NegativeRealAxis:
      return "negative_real_axis";
    case HeartSign::Fails:
      return "fails";
  }
  return "?";
}

int cmd_charge(const Args &a) {
  auto L = need_surface(a);
  auto ch = need_char(a, L);
  auto P = need_point(a.s, a.q, "--s/--q");
  VTilde v = vtilde(ch, L);
  auto Z = central_charge(P, v);
  HeartSign h = heart_sign_check(P, v);
  Json j{{"ch", io::to_json(ch)}, {"v", io::to_json(v)}, {"Z", io::to_json(Z)}, {"heart_sign", heart_name(h)}};
  PhaseValue ph = phase(P, v);
  j["phase"] = io::to_json(ph);
  j["phase_approx"] = ph.approx;
  emit(j, a);
  return 0;
}

int cmd_ext2(const Args &a) {
  auto L = need_surface(a);
  auto ch = need_char(a, L);
  auto P = need_point(a.s, a.q, "--s/--q");
  Ext2Certificate cert = ext2_vanishing_certificate(P, ch, L);
  if (!a.out.empty() || !a.scene_out.empty()) {
    Scene sc = ext2_scene(cert);
    if (!a.out.empty()) write_file(a.out, render_svg(sc));
    if (!a.scene_out.empty()) write_file(a.scene_out, io::dump(to_json(sc)));
  }
  emit(io::to_json(cert), a);
  return cert.verified ? 0 : kExitCertificate;
}

int cmd_phase_bounds(const Args &a) {
  auto L = need_surface(a);
  auto ch = need_char(a, L);
  auto P = need_point(a.s, a.q, "--s/--q");
  auto Q = need_point(a.to_s, a.to_q, "--to-s/--to-q");
  PhaseInterval iv = phase_bound_interval(P, Q, vtilde(ch, L));
  emit(Json{{"P", io::to_json(P)}, {"Q", io::to_json(Q)}, {"interval", io::to_json(iv)}}, a);
  return 0;
}

Region need_region(const Args &a) {
  if (!a.box.empty()) {
    auto xs = parse_rational_list(a.box);
    if (xs.size() != 4) throw SchemaError("--box needs smin,smax,qmin,qmax");
    if (xs[0] > xs[1] || xs[2] > xs[3]) throw SchemaError("--box is empty");
    return Box{xs[0], xs[1], xs[2], xs[3]};
  }
  return Segment{need_point(a.s, a.q, "--s/--q"), need_point(a.to_s, a.to_q, "--to-s/--to-q")};
}

int cmd_walls(const Args &a) {
  auto L = need_surface(a);
  auto ch = need_char(a, L);
  Region region = need_region(a);
  auto walls = enumerate_candidate_walls(ch, L, region, {a.rank_bound, a.c1_bound});
  Json list = Json::array();
  for (const auto &w : walls) list.push_back(io::to_json(w));
  emit(Json{{"ch", io::to_json(ch)},
            {"bounds", {{"rank", a.rank_bound}, {"c1", a.c1_bound}}},
            {"walls", list}},
       a);
  return 0;
}

int cmd_simulate(const Args &a) {
  auto L = need_surface(a);
  auto ch = need_char(a, L);
  auto P = need_point(a.s, a.q, "--s/--q");
  auto Q = need_point(a.to_s, a.to_q, "--to-s/--to-q");
  SimulationOptions opt{{a.rank_bound, a.c1_bound}, a.max_depth, a.max_nodes};
  PathTree tree = simulate_destabilization_paths(P, Q, ch, L, opt);
  PhaseInterval iv = phase_bound_interval(P, Q, vtilde(ch, L));
  std::size_t outside = 0;
  for (const auto *node : tree.nodes()) {
    if (!iv.contains(node->phase_at_Q)) ++outside;
  }
  emit(Json{{"tree", io::to_json(tree)}, {"interval", io::to_json(iv)}, {"nodes_outside_interval", outside}}, a);
  return 0;
}

int cmd_dim(const Args &a) {
  auto L = need_surface(a);
  auto ch = need_char(a, L);
  emit(Json{{"ch", io::to_json(ch)},
            {"chi", io::to_json(euler_pairing(ch, ch, L))},
            {"expected_dim", io::to_json(expected_moduli_dim(ch, L))}},
       a);
  return 0;
}

int cmd_supertrace_fuzz(const Args &a) {
  FuzzReport r = supertrace_fuzz(a.n, a.seed);
  emit(io::to_json(r), a);
  return r.violations == 0 ? 0 : kExitCertificate;
}

int cmd_figure(const Args &a) {
  if (a.scene.empty()) throw SchemaError("--scene is required");
  std::string dir = std::filesystem::path(a.scene).parent_path().string();
  Scene sc = scene_from(io::read_file(a.scene), dir.empty() ? "." : dir);
  std::string svg = render_svg(sc);
  if (a.out.empty()) {
    std::cout << svg;
  } else {
    write_file(a.out, svg);
  }
  return 0;
}

int report_error(const char *kind, const std::string &message, int code) {
  std::cerr << Json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact wall-and-chamber computations for stability conditions on surfaces"};
  app.require_subcommand(1);
  Args a;

  auto common = [&](CLI::App *sub, bool with_char) {
    sub->add_option("--surface", a.surface, "surface lattice JSON file");
    if (with_char) sub->add_option("--char", a.ch, "character r,c1...,ch2");
    sub->add_flag("--json", a.compact, "single-line JSON output");
  };
  auto point = [&](CLI::App *sub) {
    sub->add_option("--s", a.s, "s coordinate of P");
    sub->add_option("--q", a.q, "q coordinate of P");
  };
  auto target = [&](CLI::App *sub) {
    sub->add_option("--to-s", a.to_s, "s coordinate of Q");
    sub->add_option("--to-q", a.to_q, "q coordinate of Q");
  };
  auto bounds = [&](CLI::App *sub) {
    sub->add_option("--rank-bound", a.rank_bound, "|rank| bound for subcharacters");
    sub->add_option("--c1-bound", a.c1_bound, "bound on each c1 coordinate of subcharacters");
  };

  auto *charge = app.add_subcommand("charge", "central charge, heart sign and phase");
  common(charge, true);
  point(charge);
  auto *ext2 = app.add_subcommand("ext2", "geometric Ext^2 vanishing certificate");
  common(ext2, true);
  point(ext2);
  ext2->add_option("--out", a.out, "SVG of the certificate layout");
  ext2->add_option("--scene-out", a.scene_out, "scene JSON of the certificate layout");
  auto *bounds_cmd = app.add_subcommand("phase-bounds", "phase interval at Q of the factors of a P-stable object");
  common(bounds_cmd, true);
  point(bounds_cmd);
  target(bounds_cmd);
  auto *walls = app.add_subcommand("walls", "candidate walls meeting a segment or box");
  common(walls, true);
  point(walls);
  target(walls);
  bounds(walls);
  walls->add_option("--box", a.box, "smin,smax,qmin,qmax (instead of a segment)");
  auto *sim = app.add_subcommand("simulate", "destabilization paths along the segment from P to Q");
  common(sim, true);
  point(sim);
  target(sim);
  bounds(sim);
  sim->add_option("--max-depth", a.max_depth, "maximum splitting depth");
  sim->add_option("--max-nodes", a.max_nodes, "maximum number of tree nodes");
  auto *dim = app.add_subcommand("dim", "expected dimension 1 - chi(E, E)");
  common(dim, true);
  auto *fuzz = app.add_subcommand("supertrace-fuzz", "randomized supertrace and pairing identities");
  fuzz->add_option("--n", a.n, "number of random complexes");
  fuzz->add_option("--seed", a.seed, "generator seed (WALLAND_SEED overrides)");
  fuzz->add_flag("--json", a.compact, "single-line JSON output");
  auto *figure = app.add_subcommand("figure", "render a scene JSON to SVG");
  figure->add_option("--scene", a.scene, "scene JSON file");
  figure->add_option("--out", a.out, "output SVG (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    return report_error("schema", e.what(), kExitSchema);
  }
  if (const char *env = std::getenv("WALLAND_SEED")) {
    try {
      a.seed = std::stoull(env);
    } catch (const std::exception &) {
      return report_error("schema", "WALLAND_SEED must be a nonnegative integer", kExitSchema);
    }
  }

  try {
    if (charge->parsed()) return cmd_charge(a);
    if (ext2->parsed()) return cmd_ext2(a);
    if (bounds_cmd->parsed()) return cmd_phase_bounds(a);
    if (walls->parsed()) return cmd_walls(a);
    if (sim->parsed()) return cmd_simulate(a);
    if (dim->parsed()) return cmd_dim(a);
    if (fuzz->parsed()) return cmd_supertrace_fuzz(a);
    if (figure->parsed()) return cmd_figure(a);
  } catch (const SchemaError &e) {
    return report_error("schema", e.what(), kExitSchema);
  } catch (const PreconditionError &e) {
    return report_error("precondition", e.what(), kExitPrecondition);
  } catch (const std::invalid_argument &e) {
    return report_error("schema", e.what(), kExitSchema);
  }
  return kExitSchema;
}
