#pragma once

#include <optional>
#include <string>
#include <vector>

#include "walland/json_io.hpp"
#include "walland/wall_crossing.hpp"

namespace walland {

enum class SceneKind { Parabola, Point, Segment, Line, Ray };

struct SceneItem {
  SceneKind kind;
  std::string label;
  /// Point: {p}; Segment: {from, to}; Line: {p, q}; Ray: {from, through}.
  std::vector<QuadPoint> points;
  Rational shift{0};  ///< Parabola: q = s^2/2 + shift
  bool dashed = false;
};

struct Scene {
  std::string title;
  std::optional<std::string> surface;  ///< lattice file used to resolve "char" points
  Rational smin, smax, qmin, qmax;
  std::vector<SceneItem> items;
};

/// Parses a scene document. Points are given inline as {"at": [x, y]} (x, y
/// rationals or quadratic numbers), as {"char": {...}} resolved through the
/// surface, or by the label of an earlier point item. `base_dir` resolves a
/// relative surface path.
Scene scene_from(const io::Json &j, const std::string &base_dir = ".");
io::Json to_json(const Scene &scene);

/// y-axis flipped, 100 units per plane unit, coordinates printed with four
/// decimals; parabola arcs are exact quadratic Bezier curves.
std::string render_svg(const Scene &scene);

/// The layout used for an Ext^2 certificate: v(E), v(E (x) K), P, Q, A, B,
/// A', B', both parabolas and both chords.
Scene ext2_scene(const Ext2Certificate &cert);

}  // namespace walland
