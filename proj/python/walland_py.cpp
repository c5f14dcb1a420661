#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>

#include "walland/error.hpp"
#include "walland/graded_trace.hpp"
#include "walland/json_io.hpp"
#include "walland/scene.hpp"
#include "walland/wall_crossing.hpp"

namespace py = pybind11;
using namespace walland;
using io::Json;

namespace {

// Results cross the boundary as canonical JSON text; the Python package
// turns them into dicts.
std::string out(const Json &j) { return j.dump(); }

SurfaceLattice surface(const std::string &path) { return io::load_lattice(path); }

CharVec character(const SurfaceLattice &L, const std::vector<std::string> &parts) {
  if (parts.size() != L.rank() + 2) {
    throw SchemaError("character needs " + std::to_string(L.rank() + 2) + " entries (r, c1..., ch2)");
  }
  std::vector<Rational> xs;
  for (const auto &p : parts) xs.push_back(parse_rational(p));
  return L.make_char(xs.front(), std::vector<Rational>(xs.begin() + 1, xs.end() - 1), xs.back());
}

StabPoint point(const std::string &s, const std::string &q) { return StabPoint(parse_rational(s), parse_rational(q)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact wall-and-chamber computations";

  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  m.def("charge", [](const std::string &surf, const std::vector<std::string> &ch, const std::string &s,
                     const std::string &q) {
    auto L = surface(surf);
    VTilde v = vtilde(character(L, ch), L);
    auto P = point(s, q);
    return out(Json{{"Z", io::to_json(central_charge(P, v))}, {"v", io::to_json(v)}, {"phase", io::to_json(phase(P, v))}});
  });

  m.def("expected_dim", [](const std::string &surf, const std::vector<std::string> &ch) {
    auto L = surface(surf);
    return format_rational(expected_moduli_dim(character(L, ch), L));
  });

  m.def("ext2", [](const std::string &surf, const std::vector<std::string> &ch, const std::string &s,
                   const std::string &q) {
    auto L = surface(surf);
    return out(io::to_json(ext2_vanishing_certificate(point(s, q), character(L, ch), L)));
  });

  m.def("phase_bounds", [](const std::string &surf, const std::vector<std::string> &ch, const std::string &s,
                           const std::string &q, const std::string &to_s, const std::string &to_q) {
    auto L = surface(surf);
    return out(io::to_json(phase_bound_interval(point(s, q), point(to_s, to_q), vtilde(character(L, ch), L))));
  });

  m.def("walls", [](const std::string &surf, const std::vector<std::string> &ch, const std::string &s,
                    const std::string &q, const std::string &to_s, const std::string &to_q, long rank_bound,
                    long c1_bound) {
    auto L = surface(surf);
    auto walls = enumerate_candidate_walls(character(L, ch), L, Segment{point(s, q), point(to_s, to_q)},
                                           {rank_bound, c1_bound});
    Json arr = Json::array();
    for (const auto &w : walls) arr.push_back(io::to_json(w));
    return out(arr);
  });

  m.def(
      "simulate",
      [](const std::string &surf, const std::vector<std::string> &ch, const std::string &s, const std::string &q,
         const std::string &to_s, const std::string &to_q, long rank_bound, long c1_bound, int max_depth,
         std::size_t max_nodes) {
        auto L = surface(surf);
        return out(io::to_json(simulate_destabilization_paths(point(s, q), point(to_s, to_q), character(L, ch), L,
                                                              {{rank_bound, c1_bound}, max_depth, max_nodes})));
      },
      py::arg("surface"), py::arg("ch"), py::arg("s"), py::arg("q"), py::arg("to_s"), py::arg("to_q"),
      py::arg("rank_bound"), py::arg("c1_bound"), py::arg("max_depth") = 2, py::arg("max_nodes") = 20000);

  m.def(
      "supertrace_fuzz", [](std::size_t n, std::uint64_t seed) { return out(io::to_json(supertrace_fuzz(n, seed))); },
      py::arg("n") = 1000, py::arg("seed") = 7);

  m.def("render_scene", [](const std::string &path) {
    return render_svg(scene_from(io::read_file(path), std::filesystem::path(path).parent_path().string()));
  });
}
