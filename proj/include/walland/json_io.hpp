#pragma once

#include <string>

#include "json.hpp"
#include "walland/graded_trace.hpp"
#include "walland/lattice.hpp"
#include "walland/plane.hpp"
#include "walland/quadnum.hpp"
#include "walland/stability.hpp"
#include "walland/wall_crossing.hpp"

namespace walland::io {

using Json = nlohmann::json;

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json &j);

/// Throws SchemaError on malformed JSON text.
Json parse(const std::string &text);
Json read_file(const std::string &path);

Json to_json(const Rational &x);
Rational rational_from(const Json &j);

Json to_json(const QuadNum &x);
QuadNum quad_from(const Json &j);

Json to_json(const SurfaceLattice &L);
SurfaceLattice lattice_from(const Json &j);
SurfaceLattice load_lattice(const std::string &path);

Json to_json(const DivisorClass &d);
DivisorClass divisor_from(const Json &j);

Json to_json(const CharVec &ch);
CharVec char_from(const Json &j);

Json to_json(const VTilde &v);
VTilde vtilde_from(const Json &j);

Json to_json(const PlanePoint &p);
PlanePoint plane_point_from(const Json &j);

Json to_json(const PlaneLine &l);
PlaneLine plane_line_from(const Json &j);

Json to_json(const StabPoint &p);
StabPoint stab_point_from(const Json &j);

Json to_json(const QuadPoint &p);
QuadPoint quad_point_from(const Json &j);

Json to_json(const BoundaryPoint &b);
BoundaryPoint boundary_point_from(const Json &j);

Json to_json(const ChargeValue &z);
Json to_json(const QuadCharge &z);
QuadCharge quad_charge_from(const Json &j);

Json to_json(const PhaseValue &p);

Json to_json(const LiftedPhase &p);
LiftedPhase lifted_phase_from(const Json &j);

Json to_json(const PhaseInterval &i);
PhaseInterval phase_interval_from(const Json &j);

Json to_json(const CandidateWall &w);
CandidateWall candidate_wall_from(const Json &j);

Json to_json(const PathNode &n);
PathNode path_node_from(const Json &j);

Json to_json(const PathTree &t);
PathTree path_tree_from(const Json &j);

Json to_json(const Ext2Certificate &c);
Ext2Certificate certificate_from(const Json &j);

Json to_json(const Matrix &m);
Matrix matrix_from(const Json &j);

Json to_json(const MatrixComplex &c);
MatrixComplex complex_from(const Json &j);

/// Source and target complexes are embedded.
Json to_json(const HomCochain &f);
HomCochain cochain_from(const Json &j);

Json to_json(const FuzzReport &r);

}  // namespace walland::io
