#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cagemap/analysis.hpp"
#include "cagemap/geom.hpp"

namespace cagemap {

// Raised for malformed scene or bundle files.  The message names the
// offending field so callers can forward it as a diagnostic.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A scene file as written on disk: obstacles given as explicit disks and/or
// polygons to be approximated, plus exactly one object given the same way.
struct SceneInput {
  std::vector<Disk> obstacle_disks;
  std::vector<Polygon> obstacle_polygons;
  std::vector<Disk> object_disks;
  std::optional<Polygon> object_polygon;
};

// Options collected from the command line before a build.
struct RunConfig {
  std::string scene_path;
  std::string output_path;
  std::optional<double> ball_radius;      // obstacle approximation radius
  std::optional<double> obj_ball_radius;  // object approximation radius
  std::string epsilon_spec;               // absolute ("0.12") or relative ("0.3r")
  unsigned threads = 1;
};

namespace detail {

inline double number_field(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number())
    throw ParseError(where + ": missing numeric field '" + key + "'");
  return j[key].get<double>();
}

inline Disk parse_disk(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": disk must be an object");
  Disk d;
  d.center.x = number_field(j, "x", where);
  d.center.y = number_field(j, "y", where);
  d.radius = number_field(j, "r", where);
  if (!(d.radius > 0.0)) throw ParseError(where + ": disk radius must be positive");
  return d;
}

inline Polygon parse_polygon(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
    throw ParseError(where + ": polygon must be an object with a 'vertices' array");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
    const auto& v = j["vertices"][i];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ParseError(where + ": vertex " + std::to_string(i) + " must be [x, y]");
    pts.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  if (pts.size() < 3) throw ParseError(where + ": polygon needs at least 3 vertices");
  // Accept clockwise input by reversing; Polygon requires counterclockwise.
  double twice_area = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& a = pts[i];
    const Point& b = pts[(i + 1) % pts.size()];
    twice_area += a.x * b.y - b.x * a.y;
  }
  if (twice_area < 0.0) std::reverse(pts.begin(), pts.end());
  try {
    return Polygon(pts);
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

// Serializes a double so that parsing the text recovers the exact bits.
inline nlohmann::json exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return nlohmann::json::parse(buf);
}

}  // namespace detail

inline SceneInput parse_scene(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("scene: top level must be an object");
  SceneInput s;
  if (j.contains("obstacles")) {
    const auto& o = j["obstacles"];
    if (!o.is_object()) throw ParseError("scene.obstacles: must be an object");
    if (o.contains("disks"))
      for (std::size_t i = 0; i < o["disks"].size(); ++i)
        s.obstacle_disks.push_back(
            detail::parse_disk(o["disks"][i], "scene.obstacles.disks[" + std::to_string(i) + "]"));
    if (o.contains("polygons"))
      for (std::size_t i = 0; i < o["polygons"].size(); ++i)
        s.obstacle_polygons.push_back(detail::parse_polygon(
            o["polygons"][i], "scene.obstacles.polygons[" + std::to_string(i) + "]"));
  }
  if (!j.contains("object") || !j["object"].is_object())
    throw ParseError("scene.object: exactly one object is required");
  const auto& b = j["object"];
  if (b.contains("disks"))
    for (std::size_t i = 0; i < b["disks"].size(); ++i)
      s.object_disks.push_back(
          detail::parse_disk(b["disks"][i], "scene.object.disks[" + std::to_string(i) + "]"));
  if (b.contains("polygon")) s.object_polygon = detail::parse_polygon(b["polygon"], "scene.object.polygon");
  const bool has_disks = !s.object_disks.empty();
  const bool has_poly = s.object_polygon.has_value();
  if (has_disks == has_poly)
    throw ParseError("scene.object: give either 'disks' or 'polygon', not both or neither");
  return s;
}

inline SceneInput load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scene file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("scene file " + path + ": " + e.what());
  }
  return parse_scene(j);
}

// The scene realized as geometry the pipeline consumes.  Polygon obstacles
// whose approximation came out empty are recorded by index so callers can
// warn about them.
struct SceneGeometry {
  DiskUnion obstacles;
  RigidObject object;
  std::vector<std::size_t> skipped_obstacle_polygons;
};

inline SceneGeometry realize_scene(const SceneInput& s,
                                   std::optional<double> ball_radius,
                                   std::optional<double> obj_ball_radius) {
  std::vector<Disk> obs = s.obstacle_disks;
  for (const Disk& d : obs)
    if (d.radius != obs.front().radius)
      throw ParseError("scene.obstacles.disks: all disks must share one radius");
  if (!obs.empty() && ball_radius && *ball_radius != obs.front().radius)
    throw ParseError("--ball-radius conflicts with the radius of the explicit obstacle disks");
  double radius = obs.empty() ? ball_radius.value_or(0.0) : obs.front().radius;
  if (!s.obstacle_polygons.empty() && !(radius > 0.0))
    throw ParseError("polygon obstacles need --ball-radius");

  SceneGeometry g;
  for (std::size_t i = 0; i < s.obstacle_polygons.size(); ++i) {
    try {
      DiskUnion u = approximate_polygon(s.obstacle_polygons[i], radius);
      obs.insert(obs.end(), u.disks.begin(), u.disks.end());
    } catch (const EmptyApproximation&) {
      g.skipped_obstacle_polygons.push_back(i);
    }
  }
  g.obstacles = DiskUnion(obs);

  std::vector<Disk> body = s.object_disks;
  if (s.object_polygon) {
    if (!obj_ball_radius || !(*obj_ball_radius > 0.0))
      throw ParseError("a polygon object needs --obj-ball-radius");
    try {
      body = approximate_polygon(*s.object_polygon, *obj_ball_radius).disks;
    } catch (const EmptyApproximation&) {
      throw ParseError("scene.object.polygon: approximation at this radius is empty");
    }
  } else {
    for (const Disk& d : body)
      if (d.radius != body.front().radius)
        throw ParseError("scene.object.disks: all disks must share one radius");
    if (obj_ball_radius && *obj_ball_radius != body.front().radius)
      throw ParseError("--obj-ball-radius conflicts with the radius of the explicit object disks");
  }
  g.object = make_rigid_object(DiskUnion(body));
  return g;
}

// Parses an epsilon given either as an absolute length ("0.12") or as a
// fraction of the object ball radius ("0.3r").
inline double parse_epsilon(const std::string& spec, double obj_ball_radius) {
  std::string text = spec;
  bool relative = false;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  if (!text.empty() && (text.back() == 'r' || text.back() == 'R')) {
    relative = true;
    text.pop_back();
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("cannot parse epsilon '" + spec + "'");
  }
  if (used != text.size()) throw ParseError("cannot parse epsilon '" + spec + "'");
  return relative ? value * obj_ball_radius : value;
}

inline nlohmann::json bundle_json(const Analysis& a) {
  using nlohmann::json;
  json j;
  j["format"] = "cagemap-bundle-1";
  j["epsilon"] = detail::exact(a.epsilon);

  json obs = json::array();
  for (const Disk& d : a.obstacles.disks)
    obs.push_back({{"x", detail::exact(d.center.x)},
                   {"y", detail::exact(d.center.y)},
                   {"r", detail::exact(d.radius)}});
  j["obstacles"] = obs;

  json body = json::array();
  for (const Disk& d : a.object.body.disks)
    body.push_back({{"x", detail::exact(d.center.x)},
                    {"y", detail::exact(d.center.y)},
                    {"r", detail::exact(d.radius)}});
  j["object"] = {{"disks", body},
                 {"reference", {detail::exact(a.object.reference.x), detail::exact(a.object.reference.y)}}};

  json samples = json::array();
  for (double phi : a.partition.samples) samples.push_back(detail::exact(phi));
  j["partition"] = {{"delta_phi", detail::exact(a.partition.delta_phi)}, {"samples", samples}};

  json slices = json::array();
  for (const SliceApprox& s : a.slices) {
    json areas = json::array();
    for (double v : s.decomposition.component_area) areas.push_back(detail::exact(v));
    slices.push_back({{"phi", detail::exact(s.phi)},
                      {"phi_end", detail::exact(s.phi_end)},
                      {"degenerate", s.degenerate},
                      {"sites", s.collision.disks.size()},
                      {"triangles", s.degenerate ? 0 : s.dt.triangles.size()},
                      {"bounded_components", s.decomposition.bounded_count},
                      {"component_areas", areas}});
  }
  j["slices"] = slices;

  json verts = json::array();
  for (const Vertex& v : a.graph.vertices) verts.push_back({v.slice, v.component});
  json edges = json::array();
  for (const auto& e : a.graph.edges) edges.push_back({e.first, e.second});
  j["graph"] = {{"vertices", verts},
                {"edges", edges},
                {"roots", a.graph.root},
                {"escapes", json(std::vector<int>(a.graph.escapes.begin(), a.graph.escapes.end()))}};
  return j;
}

inline void write_bundle(const Analysis& a, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file: " + path);
  out << bundle_json(a).dump(2) << '\n';
}

// Rebuilds the full analysis from the primitives stored in a bundle.  Every
// stage is deterministic, so the reconstruction answers queries exactly as
// the original run did.
inline Analysis load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open bundle file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("bundle file " + path + ": " + e.what());
  }
  if (!j.is_object() || j.value("format", "") != std::string("cagemap-bundle-1"))
    throw ParseError("bundle file " + path + ": unrecognized format");

  std::vector<Disk> obs;
  for (std::size_t i = 0; i < j["obstacles"].size(); ++i)
    obs.push_back(detail::parse_disk(j["obstacles"][i], "bundle.obstacles[" + std::to_string(i) + "]"));
  std::vector<Disk> body;
  for (std::size_t i = 0; i < j["object"]["disks"].size(); ++i)
    body.push_back(detail::parse_disk(j["object"]["disks"][i],
                                      "bundle.object.disks[" + std::to_string(i) + "]"));
  if (body.empty()) throw ParseError("bundle object has no disks");
  if (!j.contains("epsilon") || !j["epsilon"].is_number())
    throw ParseError("bundle is missing epsilon");
  const auto& ref = j["object"]["reference"];
  if (!ref.is_array() || ref.size() != 2 || !ref[0].is_number() || !ref[1].is_number())
    throw ParseError("bundle.object.reference must be [x, y]");
  // The body disks are stored as offsets from the reference; restore the
  // object verbatim instead of re-centering it.
  RigidObject obj;
  obj.body = DiskUnion(body);
  obj.reference = {ref[0].get<double>(), ref[1].get<double>()};
  obj.diam = object_diameter(obj);
  return build_analysis(DiskUnion(obs), obj, j["epsilon"].get<double>());
}

}  // namespace cagemap
