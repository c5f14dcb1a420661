#include "walland/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

#include "walland/error.hpp"

namespace walland {

namespace {

const char *kind_name(SceneKind k) {
  switch (k) {
    case SceneKind::Parabola:
      return "parabola";
    case SceneKind::Point:
      return "point";
    case SceneKind::Segment:
      return "segment";
    case SceneKind::Line:
      return "line";
    case SceneKind::Ray:
      return "ray";
  }
  return "?";
}

SceneKind kind_from(const std::string &s) {
  for (auto k : {SceneKind::Parabola, SceneKind::Point, SceneKind::Segment, SceneKind::Line, SceneKind::Ray}) {
    if (s == kind_name(k)) return k;
  }
  throw SchemaError("unknown scene item kind '" + s + "'");
}

std::string fmt(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4Lf", v);
  std::string s(buf);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Canvas {
  long double smin, qmax;
  long double X(long double s) const { return 100 * (s - smin); }
  long double Y(long double q) const { return 100 * (qmax - q); }
};

struct Approx {
  long double x, y;
};

Approx approx(const QuadPoint &p) { return {p.x.approx(), p.y.approx()}; }

// Parameter range [t0, t1] of p + t d inside the box (Liang-Barsky), if any.
std::optional<std::pair<long double, long double>> clip(Approx p, Approx d, const Scene &sc, long double t0,
                                                        long double t1) {
  const long double lo[2] = {to_long_double(sc.smin), to_long_double(sc.qmin)};
  const long double hi[2] = {to_long_double(sc.smax), to_long_double(sc.qmax)};
  const long double pp[2] = {p.x, p.y};
  const long double dd[2] = {d.x, d.y};
  for (int k = 0; k < 2; ++k) {
    if (dd[k] == 0) {
      if (pp[k] < lo[k] || pp[k] > hi[k]) return std::nullopt;
      continue;
    }
    long double a = (lo[k] - pp[k]) / dd[k], b = (hi[k] - pp[k]) / dd[k];
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
  }
  if (t0 > t1) return std::nullopt;
  return std::pair{t0, t1};
}

void draw_clipped(std::ostringstream &out, const Canvas &cv, Approx p, Approx d, long double t0, long double t1,
                  const Scene &sc, const char *cls, bool dashed) {
  auto range = clip(p, d, sc, t0, t1);
  if (!range) return;
  auto [a, b] = *range;
  out << "  <line class=\"" << cls << "\" x1=\"" << fmt(cv.X(p.x + a * d.x)) << "\" y1=\"" << fmt(cv.Y(p.y + a * d.y))
      << "\" x2=\"" << fmt(cv.X(p.x + b * d.x)) << "\" y2=\"" << fmt(cv.Y(p.y + b * d.y)) << "\""
      << (dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
}

QuadPoint point_from(const io::Json &j, const std::map<std::string, QuadPoint> &named,
                     const std::optional<SurfaceLattice> &lattice) {
  if (j.is_string()) {
    auto it = named.find(j.get<std::string>());
    if (it == named.end()) throw SchemaError("scene refers to unknown point '" + j.get<std::string>() + "'");
    return it->second;
  }
  if (j.is_object() && j.contains("at")) {
    const auto &at = j["at"];
    if (!at.is_array() || at.size() != 2) throw SchemaError("'at' must be [x, y]");
    QuadNum x = io::quad_from(at[0]), y = io::quad_from(at[1]);
    return {std::move(x), std::move(y)};
  }
  if (j.is_object() && j.contains("char")) {
    if (!lattice) throw SchemaError("scene point given by a character needs a surface");
    VTilde v = vtilde(io::char_from(j["char"]), *lattice);
    if (v.is_zero()) throw SchemaError("scene character has zero v");
    PlanePoint p = PlanePoint::of(v);
    if (!p.is_affine()) throw SchemaError("scene character lies at infinity");
    return QuadPoint::of(p);
  }
  throw SchemaError("scene point must be a label, {\"at\": [x, y]} or {\"char\": {...}}");
}

}  // namespace

Scene scene_from(const io::Json &j, const std::string &base_dir) {
  if (!j.is_object()) throw SchemaError("scene must be an object");
  Scene sc;
  sc.title = j.value("title", std::string());
  std::optional<SurfaceLattice> lattice;
  if (j.contains("surface") && !j["surface"].is_null()) {
    if (!j["surface"].is_string()) throw SchemaError("scene surface must be a file name");
    sc.surface = j["surface"].get<std::string>();
    std::filesystem::path p(*sc.surface);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    lattice = io::load_lattice(p.string());
  }
  if (!j.contains("viewport")) throw SchemaError("scene needs a viewport");
  const auto &vp = j["viewport"];
  sc.smin = io::rational_from(vp.at("smin"));
  sc.smax = io::rational_from(vp.at("smax"));
  sc.qmin = io::rational_from(vp.at("qmin"));
  sc.qmax = io::rational_from(vp.at("qmax"));
  if (sc.smin >= sc.smax || sc.qmin >= sc.qmax) throw SchemaError("scene viewport is empty");

  std::map<std::string, QuadPoint> named;
  if (!j.contains("items") || !j["items"].is_array()) throw SchemaError("scene needs an 'items' array");
  for (const auto &it : j["items"]) {
    if (!it.is_object() || !it.contains("kind") || !it["kind"].is_string()) throw SchemaError("scene item needs a kind");
    SceneItem item{kind_from(it["kind"].get<std::string>()), it.value("label", std::string()), {}, 0,
                   it.value("dashed", false)};
    auto pt = [&](const char *key) {
      if (!it.contains(key)) throw SchemaError(std::string("scene item is missing '") + key + "'");
      return point_from(it[key], named, lattice);
    };
    switch (item.kind) {
      case SceneKind::Parabola:
        if (it.contains("shift")) item.shift = io::rational_from(it["shift"]);
        break;
      case SceneKind::Point:
        item.points = {point_from(it, named, lattice)};
        if (!item.label.empty()) named.insert_or_assign(item.label, item.points[0]);
        break;
      case SceneKind::Segment:
        item.points = {pt("from"), pt("to")};
        break;
      case SceneKind::Line: {
        if (!it.contains("through") || !it["through"].is_array() || it["through"].size() != 2) {
          throw SchemaError("line needs 'through': [p, q]");
        }
        item.points = {point_from(it["through"][0], named, lattice), point_from(it["through"][1], named, lattice)};
        break;
      }
      case SceneKind::Ray:
        item.points = {pt("from"), pt("through")};
        break;
    }
    sc.items.push_back(std::move(item));
  }
  return sc;
}

io::Json to_json(const Scene &sc) {
  io::Json items = io::Json::array();
  auto coord = [](const QuadNum &x) { return x.is_rational() ? io::to_json(x.a()) : io::to_json(x); };
  auto at = [&](const QuadPoint &p) { return io::Json{{"at", io::Json::array({coord(p.x), coord(p.y)})}}; };
  for (const auto &item : sc.items) {
    io::Json j{{"kind", kind_name(item.kind)}};
    if (!item.label.empty()) j["label"] = item.label;
    if (item.dashed) j["dashed"] = true;
    switch (item.kind) {
      case SceneKind::Parabola:
        j["shift"] = io::to_json(item.shift);
        break;
      case SceneKind::Point:
        j["at"] = at(item.points[0])["at"];
        break;
      case SceneKind::Segment:
        j["from"] = at(item.points[0]);
        j["to"] = at(item.points[1]);
        break;
      case SceneKind::Line:
        j["through"] = io::Json::array({at(item.points[0]), at(item.points[1])});
        break;
      case SceneKind::Ray:
        j["from"] = at(item.points[0]);
        j["through"] = at(item.points[1]);
        break;
    }
    items.push_back(j);
  }
  io::Json out{{"title", sc.title},
               {"viewport",
                {{"smin", io::to_json(sc.smin)},
                 {"smax", io::to_json(sc.smax)},
                 {"qmin", io::to_json(sc.qmin)},
                 {"qmax", io::to_json(sc.qmax)}}},
               {"items", items}};
  if (sc.surface) out["surface"] = *sc.surface;
  return out;
}

std::string render_svg(const Scene &sc) {
  const Canvas cv{to_long_double(sc.smin), to_long_double(sc.qmax)};
  const long double width = 100 * to_long_double(sc.smax - sc.smin);
  const long double height = 100 * to_long_double(sc.qmax - sc.qmin);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" viewBox=\"0.0000 0.0000 " << fmt(width) << " " << fmt(height) << "\">\n";
  if (!sc.title.empty()) out << "  <title>" << escape(sc.title) << "</title>\n";
  out << "  <style>.curve{fill:none;stroke:#555;stroke-width:1.5}.seg{stroke:#1f4e9c;stroke-width:2}"
         ".line{stroke:#999;stroke-width:1}.ray{stroke:#b03a2e;stroke-width:1.5}.pt{fill:#000}"
         "text{font-family:sans-serif;font-size:14px}</style>\n";
  out << "  <clipPath id=\"vp\"><rect x=\"0.0000\" y=\"0.0000\" width=\"" << fmt(width) << "\" height=\""
      << fmt(height) << "\"/></clipPath>\n";
  out << "  <g clip-path=\"url(#vp)\">\n";
  std::ostringstream labels;
  for (const auto &item : sc.items) {
    switch (item.kind) {
      case SceneKind::Parabola: {
        // One exact quadratic Bezier per unit interval of s.
        const Rational C = item.shift;
        auto y = [&](const Rational &x) -> Rational { return x * x / 2 + C; };
        out << "  <path class=\"curve\"" << (item.dashed ? " stroke-dasharray=\"6 4\"" : "") << " d=\"M "
            << fmt(cv.X(to_long_double(sc.smin))) << " " << fmt(cv.Y(to_long_double(y(sc.smin))));
        Rational x0 = sc.smin;
        while (x0 < sc.smax) {
          Rational x1 = x0 + 1;
          if (x1 > sc.smax) x1 = sc.smax;
          Rational cx = (x0 + x1) / 2;
          Rational cy = y(x0) + x0 * (x1 - x0) / 2;
          out << " Q " << fmt(cv.X(to_long_double(cx))) << " " << fmt(cv.Y(to_long_double(cy))) << " "
              << fmt(cv.X(to_long_double(x1))) << " " << fmt(cv.Y(to_long_double(y(x1))));
          x0 = x1;
        }
        out << "\"/>\n";
        if (!item.label.empty()) {
          labels << "  <text x=\"" << fmt(cv.X(to_long_double(sc.smax)) - 4) << "\" y=\""
                 << fmt(cv.Y(to_long_double(y(sc.smax))) + 16) << "\" text-anchor=\"end\">" << escape(item.label)
                 << "</text>\n";
        }
        break;
      }
      case SceneKind::Point: {
        Approx p = approx(item.points[0]);
        out << "  <circle class=\"pt\" cx=\"" << fmt(cv.X(p.x)) << "\" cy=\"" << fmt(cv.Y(p.y)) << "\" r=\"3.0000\"/>\n";
        if (!item.label.empty()) {
          labels << "  <text x=\"" << fmt(cv.X(p.x) + 6) << "\" y=\"" << fmt(cv.Y(p.y) - 6) << "\">"
                 << escape(item.label) << "</text>\n";
        }
        break;
      }
      case SceneKind::Segment:
      case SceneKind::Line:
      case SceneKind::Ray: {
        Approx a = approx(item.points[0]);
        Approx b = approx(item.points[1]);
        Approx d{b.x - a.x, b.y - a.y};
        const long double big = 1e6L;
        const long double t0 = item.kind == SceneKind::Line ? -big : 0;
        const long double t1 = item.kind == SceneKind::Segment ? 1 : big;
        const char *cls = item.kind == SceneKind::Segment ? "seg" : (item.kind == SceneKind::Line ? "line" : "ray");
        draw_clipped(out, cv, a, d, t0, t1, sc, cls, item.dashed);
        if (!item.label.empty()) {
          labels << "  <text x=\"" << fmt(cv.X((a.x + b.x) / 2) + 6) << "\" y=\"" << fmt(cv.Y((a.y + b.y) / 2) + 16)
                 << "\">" << escape(item.label) << "</text>\n";
        }
        break;
      }
    }
  }
  out << "  </g>\n" << labels.str() << "</svg>\n";
  return out.str();
}

namespace {

const Ext2Certificate &geometric_leaf(const Ext2Certificate &c) {
  return c.inner.empty() ? c : geometric_leaf(c.inner.front());
}

}  // namespace

Scene ext2_scene(const Ext2Certificate &root) {
  const Ext2Certificate &cert = geometric_leaf(root);
  if (!cert.geometry) throw PreconditionError("certificate carries no geometry to draw");
  const Ext2Geometry &g = *cert.geometry;
  Scene sc;
  sc.title = std::string("Ext2 certificate: ") + to_string(cert.branch) + (cert.verified ? "" : " (failed)");

  std::vector<Approx> extent;
  auto add_point = [&](const QuadPoint &p, const std::string &label) {
    for (auto &item : sc.items) {
      if (item.kind == SceneKind::Point && item.points[0] == p) {
        item.label += " = " + label;
        return;
      }
    }
    sc.items.push_back({SceneKind::Point, label, {p}, 0, false});
    extent.push_back(approx(p));
  };
  auto boundary = [&](const BoundaryPoint &b, const BoundaryPoint &a) {
    // A point at infinity is drawn as the vertical direction above A.
    if (!b.at_infinity) return b.point;
    return QuadPoint{a.point.x, a.point.y + QuadNum(1)};
  };

  sc.items.push_back({SceneKind::Parabola, "q = s^2/2", {}, 0, false});
  const QuadPoint P = QuadPoint::of(cert.P.plane_point());
  const QuadPoint Q = QuadPoint::of(g.Q.plane_point());
  sc.items.push_back({SceneKind::Parabola, "", {}, cert.P.q() - cert.P.s() * cert.P.s() / 2, true});
  const PlanePoint pv = PlanePoint::of(cert.v);
  if (pv.is_affine() && sgn(height_above_parabola(pv)) != 0) {
    sc.items.push_back({SceneKind::Parabola, "", {}, height_above_parabola(pv), true});
  }

  auto chord = [&](const BoundaryPoint &a, const BoundaryPoint &b) {
    const bool ray = b.at_infinity;
    sc.items.push_back({ray ? SceneKind::Ray : SceneKind::Segment, "", {a.point, boundary(b, a)}, 0, false});
  };
  chord(g.A, g.B);
  chord(g.A_prime, g.B_prime);
  sc.items.push_back({SceneKind::Segment, "", {P, Q}, 0, true});

  if (pv.is_affine()) add_point(QuadPoint::of(pv), "v(E)");
  const PlanePoint pEK = PlanePoint::of(g.v_EK);
  if (pEK.is_affine()) add_point(QuadPoint::of(pEK), "v(E(x)K)");
  add_point(P, "P");
  add_point(Q, "Q");
  add_point(g.A.point, "A");
  if (!g.B.at_infinity) add_point(g.B.point, "B");
  add_point(g.A_prime.point, "A'");
  if (!g.B_prime.at_infinity) add_point(g.B_prime.point, "B'");
  if (g.R) add_point(QuadPoint::of(g.R->plane_point()), "R");

  long double xmin = extent[0].x, xmax = extent[0].x, ymin = extent[0].y, ymax = extent[0].y;
  for (const auto &p : extent) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  sc.smin = Rational(static_cast<long>(std::floor(xmin)) - 1);
  sc.smax = Rational(static_cast<long>(std::ceil(xmax)) + 1);
  sc.qmin = Rational(static_cast<long>(std::floor(ymin)) - 1);
  sc.qmax = Rational(static_cast<long>(std::ceil(ymax)) + 1);
  return sc;
}

}  // namespace walland
