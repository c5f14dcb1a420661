#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "walland/lattice.hpp"
#include "walland/plane.hpp"
#include "walland/stability.hpp"

namespace walland {

/// An intersection of a line with the boundary parabola q = s^2/2. Vertical
/// lines meet it once in the affine plane and once at [0 : 0 : 1].
struct BoundaryPoint {
  bool at_infinity = false;
  QuadPoint point;  ///< meaningful only when !at_infinity

  friend bool operator==(const BoundaryPoint &a, const BoundaryPoint &b) {
    return a.at_infinity == b.at_infinity && (a.at_infinity || a.point == b.point);
  }
};

/// The two boundary points of the line L through v and P, A before B. For a
/// non-vertical line A is the left point; for a vertical line A is the affine
/// point and B the point at infinity.
std::pair<BoundaryPoint, BoundaryPoint> boundary_points(const PlaneLine &line);

/// The interval [phi_Q(A), phi_Q(B)] bounding the phases at Q of the stable
/// factors of a sigma_P-stable object with character v.
///
/// phi_Q(A) is computed by giving A the character on its ray whose charge at
/// P points the same way as Z_P(v), then continuing that phase from P to Q:
/// phi_P(v) plus the rotation of the line through A as the parameter moves.
struct PhaseInterval {
  BoundaryPoint A, B;
  LiftedPhase phase_v_at_P;
  LiftedPhase phase_A, phase_B;  ///< at Q
  /// 'A' or 'B' when that boundary point is v's own plane point (v on the
  /// parabola); the interval is then only half-open on that side.
  std::optional<char> endpoint_at_character;

  bool A_is_lower() const { return compare(phase_A, phase_B) <= 0; }
  const LiftedPhase &lo() const { return A_is_lower() ? phase_A : phase_B; }
  const LiftedPhase &hi() const { return A_is_lower() ? phase_B : phase_A; }
  /// lo <= phase <= hi.
  bool contains(const LiftedPhase &phase) const;
};

PhaseInterval phase_bound_interval(const StabPoint &P, const StabPoint &Q, const VTilde &v);

struct SearchBounds {
  long rank_bound = 0;
  long c1_bound = 0;
};

struct Segment {
  StabPoint from, to;
};

/// Closed box smin <= s <= smax, qmin <= q <= qmax in the (s, q) plane.
struct Box {
  Rational smin, smax, qmin, qmax;
};

using Region = std::variant<Segment, Box>;

struct Witness {
  CharVec ch;
  VTilde v;
};

struct CandidateWall {
  PlaneLine wall;
  std::vector<Witness> witnesses;
};

/// Potential walls of ch meeting the region above the parabola.
///
/// Witnesses are integral w with |rank| <= rank_bound, every c1 coordinate
/// within c1_bound, ch2 - c1^2/2 integral, both w and ch - w satisfying the
/// Bogomolov inequality, and v(w) != v(ch). The ch2 search range is the
/// one allowed by |Z_R(w)| <= |Z_R(ch)| over the region's q-range. Results
/// are ordered by wall coefficients, witnesses by character. Bounds (0, 0)
/// disable the search.
std::vector<CandidateWall> enumerate_candidate_walls(const CharVec &ch, const SurfaceLattice &L, const Region &region,
                                                     const SearchBounds &bounds);

struct PathEvent;

/// A character being deformed from `start` towards Q.
struct PathNode {
  CharVec ch;
  VTilde v;
  StabPoint start;
  LiftedPhase phase_at_start;
  LiftedPhase phase_at_Q;
  int depth = 0;
  bool depth_limited = false;  ///< not expanded because of the depth cap
  std::vector<PathEvent> events;
};

/// A wall crossed at R where the character splits into two factors whose
/// charges at R lie on its own ray.
struct PathEvent {
  StabPoint R;
  Rational lambda;  ///< R = start + lambda (Q - start), 0 < lambda < 1
  PlaneLine wall;
  std::vector<PathNode> factors;
};

struct SimulationOptions {
  SearchBounds bounds;
  int max_depth = 2;
  std::size_t max_nodes = 20000;
};

struct PathTree {
  StabPoint P, Q;
  PathNode root;
  std::size_t node_count = 0;
  bool truncated = false;

  /// Every node of the tree in depth-first order.
  std::vector<const PathNode *> nodes() const;
};

/// Walks l_PQ. At every candidate wall crossed transversally in the open
/// segment, each two-term integral split with both parts Bogomolov and
/// on the same ray at the crossing point becomes an event, and each part is
/// followed along l_RQ. Every node records its continued phase at Q.
PathTree simulate_destabilization_paths(const StabPoint &P, const StabPoint &Q, const CharVec &ch,
                                        const SurfaceLattice &L, const SimulationOptions &options);

enum class Ext2Branch { SegmentsIntersect, PhaseDominance, DualReduction, NearbyStability };

const char *to_string(Ext2Branch branch);

/// Points computed in the left-of-v case.
struct Ext2Geometry {
  CharVec ch_EK;
  VTilde v_EK;
  StabPoint Q;
  BoundaryPoint A, B, A_prime, B_prime;
  PhaseInterval interval;
  LiftedPhase phase_EK_at_Q;
  std::optional<StabPoint> R;
  /// When c1^D and K are multiples of H: whether v(E (x) K) equals v(E)
  /// moved along its parabola.
  std::optional<bool> translation_crosscheck;
};

/// The geometric witness that Hom(E, E (x) K) = 0 for a sigma_P-stable E.
///
/// `verified == false` is a counterexample payload: the branch reached and
/// the inequality that failed are kept in `failure`.
struct Ext2Certificate {
  Ext2Branch branch;
  bool verified = false;
  std::string failure;
  StabPoint P;
  CharVec ch;
  VTilde v;
  bool twist_negated = false;  ///< lattice has D replaced by -D
  std::optional<Ext2Geometry> geometry;
  std::optional<StabPoint> perturbed_P;
  std::vector<Ext2Certificate> inner;  ///< one element for DualReduction / NearbyStability
};

/// The data handed to the inner certificate by the dual reduction:
/// ch -> -ch(E^v[2]) (shifted once so it lands in the heart), D -> -D,
/// s -> -s. Applying it twice is the identity.
struct DualData {
  CharVec ch;
  SurfaceLattice lattice;
  StabPoint P;
};
DualData dual_reduction(const CharVec &ch, const SurfaceLattice &L, const StabPoint &P);

/// Requires poisson_mode, a heart character at P and discriminant >= 0.
Ext2Certificate ext2_vanishing_certificate(const StabPoint &P, const CharVec &ch, const SurfaceLattice &L);

/// 1 - chi(E, E).
Rational expected_moduli_dim(const CharVec &ch, const SurfaceLattice &L);

/// Total order on characters used for canonical output.
bool char_less(const CharVec &a, const CharVec &b);

}  // namespace walland
