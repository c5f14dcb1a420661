#include "walland/json_io.hpp"

#include <fstream>
#include <sstream>

#include "walland/error.hpp"

namespace walland::io {

namespace {

const Json &field(const Json &j, const char *key) {
  if (!j.is_object()) throw SchemaError(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
  return *it;
}

const Json &array_field(const Json &j, const char *key) {
  const Json &a = field(j, key);
  if (!a.is_array()) throw SchemaError(std::string("field '") + key + "' must be an array");
  return a;
}

long integer_from(const Json &j, const char *what) {
  if (!j.is_number_integer()) throw SchemaError(std::string(what) + " must be an integer");
  return j.get<long>();
}

bool bool_from(const Json &j, const char *what) {
  if (!j.is_boolean()) throw SchemaError(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

template <typename T, typename F>
Json array_of(const std::vector<T> &xs, F f) {
  Json a = Json::array();
  for (const auto &x : xs) a.push_back(f(x));
  return a;
}

template <typename F>
auto vector_from(const Json &j, F f) {
  if (!j.is_array()) throw SchemaError("expected an array");
  std::vector<decltype(f(j))> out;
  for (const auto &x : j) out.push_back(f(x));
  return out;
}

template <typename T>
Json optional_json(const std::optional<T> &x) {
  return x ? to_json(*x) : Json(nullptr);
}

Ext2Branch branch_from(const Json &j) {
  if (!j.is_string()) throw SchemaError("branch must be a string");
  const auto s = j.get<std::string>();
  for (auto b : {Ext2Branch::SegmentsIntersect, Ext2Branch::PhaseDominance, Ext2Branch::DualReduction,
                 Ext2Branch::NearbyStability}) {
    if (s == to_string(b)) return b;
  }
  throw SchemaError("unknown branch '" + s + "'");
}

Json to_json_witness(const Witness &w) { return Json{{"ch", to_json(w.ch)}, {"v", to_json(w.v)}}; }

}  // namespace

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

Json parse(const std::string &text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Json to_json(const Rational &x) { return format_rational(x); }

Rational rational_from(const Json &j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw SchemaError("rational must be a \"p/q\" string or an integer");
}

Json to_json(const QuadNum &x) {
  return Json{{"a", to_json(x.a())}, {"b", to_json(x.b())}, {"delta", to_json(x.delta())}};
}

QuadNum quad_from(const Json &j) {
  if (j.is_string() || j.is_number_integer()) return QuadNum(rational_from(j));
  Rational delta = rational_from(field(j, "delta"));
  if (sgn(delta) < 0) throw SchemaError("quadratic number with negative radicand");
  QuadNum x(rational_from(field(j, "a")), rational_from(field(j, "b")), delta);
  // Non-canonical encodings would not round-trip.
  if (!(x.a() == rational_from(field(j, "a")) && x.b() == rational_from(field(j, "b")) && x.delta() == delta)) {
    throw SchemaError("quadratic number is not in canonical form");
  }
  return x;
}

Json to_json(const DivisorClass &d) { return array_of(d.coords, [](const Rational &x) { return to_json(x); }); }

DivisorClass divisor_from(const Json &j) { return DivisorClass(vector_from(j, rational_from)); }

Json to_json(const SurfaceLattice &L) {
  return Json{{"basis", L.basis_labels()}, {"gram", L.gram()}, {"H", to_json(L.H())},
              {"D", to_json(L.D())},       {"K", to_json(L.K())},  {"chiO", L.chiO()}};
}

SurfaceLattice lattice_from(const Json &j) {
  std::vector<std::string> basis;
  for (const auto &b : array_field(j, "basis")) {
    if (!b.is_string()) throw SchemaError("basis labels must be strings");
    basis.push_back(b.get<std::string>());
  }
  std::vector<std::vector<long>> gram;
  for (const auto &row : array_field(j, "gram")) {
    if (!row.is_array()) throw SchemaError("gram rows must be arrays");
    std::vector<long> r;
    for (const auto &x : row) r.push_back(integer_from(x, "gram entry"));
    gram.push_back(std::move(r));
  }
  return SurfaceLattice(std::move(basis), std::move(gram), divisor_from(field(j, "H")), divisor_from(field(j, "D")),
                        divisor_from(field(j, "K")), integer_from(field(j, "chiO"), "chiO"));
}

SurfaceLattice load_lattice(const std::string &path) { return lattice_from(read_file(path)); }

Json to_json(const CharVec &ch) { return Json{{"r", to_json(ch.r)}, {"c1", to_json(ch.c1)}, {"ch2", to_json(ch.e)}}; }

CharVec char_from(const Json &j) {
  // Fields are parsed into locals first: GCC 11 leaks already-built members
  // when a later aggregate initializer throws.
  Rational r = rational_from(field(j, "r"));
  DivisorClass c1 = divisor_from(field(j, "c1"));
  Rational e = rational_from(field(j, "ch2"));
  return {std::move(r), std::move(c1), std::move(e)};
}

Json to_json(const VTilde &v) { return Json::array({to_json(v.v0), to_json(v.v1), to_json(v.v2)}); }

VTilde vtilde_from(const Json &j) {
  if (!j.is_array() || j.size() != 3) throw SchemaError("v must be an array of three rationals");
  Rational v0 = rational_from(j[0]), v1 = rational_from(j[1]), v2 = rational_from(j[2]);
  return {std::move(v0), std::move(v1), std::move(v2)};
}

Json to_json(const PlanePoint &p) {
  return array_of(std::vector<Rational>(p.homog().begin(), p.homog().end()), [](const Rational &x) { return to_json(x); });
}

PlanePoint plane_point_from(const Json &j) {
  VTilde v = vtilde_from(j);
  return PlanePoint(v.v0, v.v1, v.v2);
}

Json to_json(const PlaneLine &l) {
  return array_of(std::vector<Rational>(l.coeffs().begin(), l.coeffs().end()), [](const Rational &x) { return to_json(x); });
}

PlaneLine plane_line_from(const Json &j) {
  VTilde v = vtilde_from(j);
  return PlaneLine(v.v0, v.v1, v.v2);
}

Json to_json(const StabPoint &p) { return Json{{"s", to_json(p.s())}, {"q", to_json(p.q())}}; }

StabPoint stab_point_from(const Json &j) { return StabPoint(rational_from(field(j, "s")), rational_from(field(j, "q"))); }

Json to_json(const QuadPoint &p) { return Json{{"x", to_json(p.x)}, {"y", to_json(p.y)}}; }

QuadPoint quad_point_from(const Json &j) {
  QuadNum x = quad_from(field(j, "x")), y = quad_from(field(j, "y"));
  return {std::move(x), std::move(y)};
}

Json to_json(const BoundaryPoint &b) {
  return Json{{"at_infinity", b.at_infinity}, {"point", b.at_infinity ? Json(nullptr) : to_json(b.point)}};
}

BoundaryPoint boundary_point_from(const Json &j) {
  const bool inf = bool_from(field(j, "at_infinity"), "at_infinity");
  if (inf) return {true, {}};
  return {false, quad_point_from(field(j, "point"))};
}

Json to_json(const ChargeValue &z) { return Json{{"re", to_json(z.re)}, {"im", to_json(z.im)}}; }

Json to_json(const QuadCharge &z) { return Json{{"re", to_json(z.re)}, {"im", to_json(z.im)}}; }

QuadCharge quad_charge_from(const Json &j) { return {quad_from(field(j, "re")), quad_from(field(j, "im"))}; }

Json to_json(const PhaseValue &p) {
  Json j{{"exact_ray", to_json(p.exact_ray)}, {"approx", p.approx}};
  auto frac = p.exact_fraction();
  j["exact"] = frac ? to_json(*frac) : Json(nullptr);
  return j;
}

Json to_json(const LiftedPhase &p) {
  return Json{{"sheet", p.sheet()}, {"charge", to_json(p.charge())}, {"approx", static_cast<double>(p.approx())}};
}

LiftedPhase lifted_phase_from(const Json &j) {
  try {
    return LiftedPhase(integer_from(field(j, "sheet"), "sheet"), quad_charge_from(field(j, "charge")));
  } catch (const PreconditionError &e) {
    throw SchemaError(std::string("inconsistent lifted phase: ") + e.what());
  }
}

Json to_json(const PhaseInterval &i) {
  Json j{{"A", to_json(i.A)},
         {"B", to_json(i.B)},
         {"phase_v_at_P", to_json(i.phase_v_at_P)},
         {"phase_A", to_json(i.phase_A)},
         {"phase_B", to_json(i.phase_B)},
         {"lower", i.A_is_lower() ? "A" : "B"}};
  j["endpoint_at_character"] =
      i.endpoint_at_character ? Json(std::string(1, *i.endpoint_at_character)) : Json(nullptr);
  return j;
}

PhaseInterval phase_interval_from(const Json &j) {
  std::optional<char> endpoint;
  const Json &e = field(j, "endpoint_at_character");
  if (!e.is_null()) {
    if (!e.is_string() || (e != "A" && e != "B")) throw SchemaError("endpoint_at_character must be \"A\", \"B\" or null");
    endpoint = e.get<std::string>()[0];
  }
  BoundaryPoint A = boundary_point_from(field(j, "A")), B = boundary_point_from(field(j, "B"));
  LiftedPhase at_P = lifted_phase_from(field(j, "phase_v_at_P"));
  LiftedPhase phase_A = lifted_phase_from(field(j, "phase_A")), phase_B = lifted_phase_from(field(j, "phase_B"));
  return {std::move(A), std::move(B), std::move(at_P), std::move(phase_A), std::move(phase_B), endpoint};
}

Json to_json(const CandidateWall &w) {
  return Json{{"wall", to_json(w.wall)}, {"witnesses", array_of(w.witnesses, to_json_witness)}};
}

CandidateWall candidate_wall_from(const Json &j) {
  PlaneLine wall = plane_line_from(field(j, "wall"));
  auto witnesses = vector_from(array_field(j, "witnesses"), [](const Json &w) {
    CharVec ch = char_from(field(w, "ch"));
    VTilde v = vtilde_from(field(w, "v"));
    return Witness{std::move(ch), std::move(v)};
  });
  return {std::move(wall), std::move(witnesses)};
}

Json to_json(const PathNode &n) {
  Json events = Json::array();
  for (const auto &e : n.events) {
    events.push_back(Json{{"R", to_json(e.R)},
                          {"lambda", to_json(e.lambda)},
                          {"wall", to_json(e.wall)},
                          {"factors", array_of(e.factors, [](const PathNode &c) { return to_json(c); })}});
  }
  return Json{{"ch", to_json(n.ch)},
              {"v", to_json(n.v)},
              {"start", to_json(n.start)},
              {"phase_at_start", to_json(n.phase_at_start)},
              {"phase_at_Q", to_json(n.phase_at_Q)},
              {"depth", n.depth},
              {"depth_limited", n.depth_limited},
              {"events", events}};
}

PathNode path_node_from(const Json &j) {
  CharVec ch = char_from(field(j, "ch"));
  VTilde v = vtilde_from(field(j, "v"));
  StabPoint start = stab_point_from(field(j, "start"));
  LiftedPhase at_start = lifted_phase_from(field(j, "phase_at_start"));
  LiftedPhase at_Q = lifted_phase_from(field(j, "phase_at_Q"));
  int depth = static_cast<int>(integer_from(field(j, "depth"), "depth"));
  bool limited = bool_from(field(j, "depth_limited"), "depth_limited");
  PathNode n{std::move(ch), std::move(v), std::move(start), std::move(at_start), std::move(at_Q), depth, limited, {}};
  for (const auto &e : array_field(j, "events")) {
    StabPoint R = stab_point_from(field(e, "R"));
    Rational lambda = rational_from(field(e, "lambda"));
    PlaneLine wall = plane_line_from(field(e, "wall"));
    auto factors = vector_from(array_field(e, "factors"), path_node_from);
    n.events.push_back(PathEvent{std::move(R), std::move(lambda), std::move(wall), std::move(factors)});
  }
  return n;
}

Json to_json(const PathTree &t) {
  return Json{{"P", to_json(t.P)},
              {"Q", to_json(t.Q)},
              {"root", to_json(t.root)},
              {"node_count", t.node_count},
              {"truncated", t.truncated}};
}

PathTree path_tree_from(const Json &j) {
  StabPoint P = stab_point_from(field(j, "P")), Q = stab_point_from(field(j, "Q"));
  PathNode root = path_node_from(field(j, "root"));
  auto count = static_cast<std::size_t>(integer_from(field(j, "node_count"), "node_count"));
  bool truncated = bool_from(field(j, "truncated"), "truncated");
  return PathTree{std::move(P), std::move(Q), std::move(root), count, truncated};
}

Json to_json(const Ext2Certificate &c) {
  Json j{{"branch", to_string(c.branch)},
         {"verified", c.verified},
         {"failure", c.verified ? Json(nullptr) : Json(c.failure)},
         {"P", to_json(c.P)},
         {"ch", to_json(c.ch)},
         {"v", to_json(c.v)},
         {"twist_negated", c.twist_negated},
         {"perturbed_P", optional_json(c.perturbed_P)},
         {"inner", array_of(c.inner, [](const Ext2Certificate &x) { return to_json(x); })}};
  if (c.geometry) {
    const auto &g = *c.geometry;
    j["geometry"] = Json{{"ch_EK", to_json(g.ch_EK)},
                         {"v_EK", to_json(g.v_EK)},
                         {"Q", to_json(g.Q)},
                         {"A", to_json(g.A)},
                         {"B", to_json(g.B)},
                         {"A_prime", to_json(g.A_prime)},
                         {"B_prime", to_json(g.B_prime)},
                         {"interval", to_json(g.interval)},
                         {"phase_EK_at_Q", to_json(g.phase_EK_at_Q)},
                         {"R", optional_json(g.R)},
                         {"translation_crosscheck", g.translation_crosscheck ? Json(*g.translation_crosscheck)
                                                                              : Json(nullptr)}};
  } else {
    j["geometry"] = nullptr;
  }
  return j;
}

Ext2Certificate certificate_from(const Json &j) {
  const bool verified = bool_from(field(j, "verified"), "verified");
  std::string failure;
  if (!verified) {
    const Json &f = field(j, "failure");
    if (!f.is_string()) throw SchemaError("failure must be a string");
    failure = f.get<std::string>();
  }
  Ext2Branch branch = branch_from(field(j, "branch"));
  StabPoint P = stab_point_from(field(j, "P"));
  CharVec ch = char_from(field(j, "ch"));
  VTilde v = vtilde_from(field(j, "v"));
  bool negated = bool_from(field(j, "twist_negated"), "twist_negated");
  auto inner = vector_from(array_field(j, "inner"), certificate_from);
  Ext2Certificate c{branch,        verified,     failure,      std::move(P), std::move(ch),
                    std::move(v),  negated,      std::nullopt, std::nullopt, std::move(inner)};
  if (const Json &p = field(j, "perturbed_P"); !p.is_null()) c.perturbed_P = stab_point_from(p);
  if (const Json &g = field(j, "geometry"); !g.is_null()) {
    std::optional<StabPoint> R;
    if (const Json &r = field(g, "R"); !r.is_null()) R = stab_point_from(r);
    std::optional<bool> cross;
    if (const Json &x = field(g, "translation_crosscheck"); !x.is_null()) cross = bool_from(x, "translation_crosscheck");
    CharVec ch_EK = char_from(field(g, "ch_EK"));
    VTilde v_EK = vtilde_from(field(g, "v_EK"));
    StabPoint Q = stab_point_from(field(g, "Q"));
    BoundaryPoint A = boundary_point_from(field(g, "A")), B = boundary_point_from(field(g, "B"));
    BoundaryPoint A2 = boundary_point_from(field(g, "A_prime")), B2 = boundary_point_from(field(g, "B_prime"));
    PhaseInterval interval = phase_interval_from(field(g, "interval"));
    LiftedPhase ek = lifted_phase_from(field(g, "phase_EK_at_Q"));
    c.geometry = Ext2Geometry{std::move(ch_EK), std::move(v_EK), std::move(Q),  std::move(A), std::move(B),
                              std::move(A2),    std::move(B2),   std::move(interval), std::move(ek), R, cross};
  }
  return c;
}

Json to_json(const Matrix &m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Matrix matrix_from(const Json &j) {
  const auto rows = static_cast<std::size_t>(integer_from(field(j, "rows"), "rows"));
  const auto cols = static_cast<std::size_t>(integer_from(field(j, "cols"), "cols"));
  const Json &e = array_field(j, "entries");
  if (e.size() != rows) throw SchemaError("matrix row count mismatch");
  std::vector<Rational> a;
  for (const auto &row : e) {
    if (!row.is_array() || row.size() != cols) throw SchemaError("matrix column count mismatch");
    for (const auto &x : row) a.push_back(rational_from(x));
  }
  return Matrix(rows, cols, std::move(a));
}

Json to_json(const MatrixComplex &c) {
  return Json{{"lo", c.lo()}, {"dims", c.dims()}, {"diffs", array_of(c.diffs(), [](const Matrix &m) { return to_json(m); })}};
}

MatrixComplex complex_from(const Json &j) {
  std::vector<std::size_t> dims;
  for (const auto &d : array_field(j, "dims")) {
    long v = integer_from(d, "dimension");
    if (v < 0) throw SchemaError("negative dimension");
    dims.push_back(static_cast<std::size_t>(v));
  }
  try {
    return MatrixComplex(static_cast<int>(integer_from(field(j, "lo"), "lo")), std::move(dims),
                         vector_from(array_field(j, "diffs"), matrix_from));
  } catch (const std::invalid_argument &e) {
    throw SchemaError(e.what());
  }
}

Json to_json(const HomCochain &f) {
  return Json{{"source", to_json(*f.source())},
              {"target", to_json(*f.target())},
              {"degree", f.degree()},
              {"maps", array_of(f.maps(), [](const Matrix &m) { return to_json(m); })}};
}

HomCochain cochain_from(const Json &j) {
  auto s = std::make_shared<const MatrixComplex>(complex_from(field(j, "source")));
  auto t = std::make_shared<const MatrixComplex>(complex_from(field(j, "target")));
  try {
    return HomCochain(s, t, static_cast<int>(integer_from(field(j, "degree"), "degree")),
                      vector_from(array_field(j, "maps"), matrix_from));
  } catch (const std::invalid_argument &e) {
    throw SchemaError(e.what());
  }
}

Json to_json(const FuzzReport &r) {
  return Json{{"seed", r.seed},
              {"instances", r.instances},
              {"checks", r.checks},
              {"violations", r.violations},
              {"failing_instances", r.failing_instances}};
}

}  // namespace walland::io
