// cagemap: conservative SE(2) free-space connectivity from orientation slices.
//
// Exit codes: 0 success, 2 input error (files, flags, malformed values),
// 3 precondition violation (epsilon out of range, occupied query cell, ...).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cagemap/analysis.hpp"
#include "cagemap/io.hpp"
#include "cagemap/metrics.hpp"
#include "cagemap/oracle.hpp"
#include "cagemap/render.hpp"

namespace {

using nlohmann::json;

cagemap::Configuration parse_configuration(const std::string& text) {
  double x = 0.0, y = 0.0, theta = 0.0;
  char tail = '\0';
  if (std::sscanf(text.c_str(), " %lf , %lf , %lf %c", &x, &y, &theta, &tail) != 3)
    throw cagemap::ParseError("configuration must be \"x,y,theta\": " + text);
  return cagemap::Configuration(x, y, theta);
}

json location_json(const std::optional<cagemap::Vertex>& v) {
  if (!v) return nullptr;
  return json{{"slice", v->slice}, {"component", v->component}};
}

cagemap::SceneGeometry load_geometry(const std::string& scene_path,
                                     std::optional<double> ball_radius,
                                     std::optional<double> obj_ball_radius) {
  cagemap::SceneGeometry g =
      cagemap::realize_scene(cagemap::load_scene(scene_path), ball_radius, obj_ball_radius);
  for (std::size_t i : g.skipped_obstacle_polygons)
    std::cerr << "warning: obstacle polygon " << i
              << " has an empty disk approximation at this radius; skipped\n";
  return g;
}

int cmd_build(const cagemap::RunConfig& cfg) {
  cagemap::SceneGeometry g = load_geometry(cfg.scene_path, cfg.ball_radius, cfg.obj_ball_radius);
  const double eps =
      cagemap::parse_epsilon(cfg.epsilon_spec, g.object.body.common_radius);
  cagemap::BuildTimings timings;
  cagemap::Analysis a = cagemap::build_analysis(g.obstacles, g.object, eps, cfg.threads, &timings);
  cagemap::write_bundle(a, cfg.output_path);

  const cagemap::VolumeReport volumes = cagemap::component_volumes(a.graph, a.slices);
  json out{{"bundle", cfg.output_path},
           {"epsilon", eps},
           {"slices", a.partition.size()},
           {"vertices", a.graph.vertices.size()},
           {"edges", a.graph.edges.size()},
           {"components", volumes.components.size()},
           {"timings",
            {{"slices_seconds", timings.slices_seconds},
             {"graph_seconds", timings.graph_seconds}}}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_query(const std::string& bundle_path, const std::string& kind, const std::string& from,
              const std::string& to, const std::string& at, double delta, bool has_delta) {
  const cagemap::Analysis a = cagemap::load_bundle(bundle_path);
  json out{{"kind", kind}};
  if (kind == "path") {
    if (from.empty() || to.empty())
      throw cagemap::ParseError("query --kind path needs --from and --to");
    const cagemap::Configuration c1 = parse_configuration(from);
    const cagemap::Configuration c2 = parse_configuration(to);
    out["verdict"] = cagemap::to_string(cagemap::query_path(c1, c2, a.graph, a.slices));
    out["from"] = location_json(cagemap::locate(c1, a.slices));
    out["to"] = location_json(cagemap::locate(c2, a.slices));
  } else if (kind == "cage") {
    if (at.empty()) throw cagemap::ParseError("query --kind cage needs --at");
    const cagemap::Configuration c = parse_configuration(at);
    out["verdict"] = cagemap::to_string(cagemap::query_caged(c, a.graph, a.slices));
    out["at"] = location_json(cagemap::locate(c, a.slices));
  } else {  // delta
    if (from.empty() || to.empty() || !has_delta)
      throw cagemap::ParseError("query --kind delta needs --from, --to, and --delta");
    const cagemap::Configuration c1 = parse_configuration(from);
    const cagemap::Configuration c2 = parse_configuration(to);
    out["verdict"] = cagemap::to_string(
        cagemap::delta_connected(c1, c2, delta, a.obstacles, a.core, a.partition));
    out["delta"] = delta;
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_volumes(const std::string& bundle_path) {
  const cagemap::Analysis a = cagemap::load_bundle(bundle_path);
  const cagemap::VolumeReport report = cagemap::component_volumes(a.graph, a.slices);
  json comps = json::array();
  for (const cagemap::ComponentVolume& c : report.components)
    comps.push_back({{"root", c.root}, {"infinite", c.infinite}, {"volume", c.volume}});
  std::cout << json{{"components", comps}}.dump(2) << '\n';
  return 0;
}

int cmd_passages(const std::string& bundle_path, const std::string& from, const std::string& to) {
  const cagemap::Analysis a = cagemap::load_bundle(bundle_path);
  const cagemap::Configuration c1 = parse_configuration(from);
  const cagemap::Configuration c2 = parse_configuration(to);
  json out;
  try {
    const cagemap::PassageReport r = cagemap::passage_width(c1, c2, a.slices, a.graph);
    out = {{"delta_star", r.delta_star},
           {"alpha", r.alpha},
           {"from", {{"slice", r.v1.slice}, {"component", r.v1.component}}},
           {"to", {{"slice", r.v2.slice}, {"component", r.v2.component}}}};
  } catch (const cagemap::NoFiniteWidth&) {
    out = {{"result", "no_finite_width"}};
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_render(const std::string& bundle_path, std::size_t slice, const std::string& out_path) {
  const cagemap::Analysis a = cagemap::load_bundle(bundle_path);
  if (slice >= a.slices.size())
    throw cagemap::ParseError("slice index " + std::to_string(slice) + " out of range (" +
                              std::to_string(a.slices.size()) + " slices)");
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw cagemap::ParseError("cannot open output file: " + out_path);
  out << cagemap::render_slice_svg(a.slices[slice]);
  std::cout << json{{"svg", out_path}, {"slice", slice}}.dump(2) << '\n';
  return 0;
}

int cmd_oracle(const std::string& scene_path, double resolution, const std::string& from,
               const std::string& to, unsigned ntheta, std::optional<double> ball_radius,
               std::optional<double> obj_ball_radius) {
  cagemap::SceneGeometry g = load_geometry(scene_path, ball_radius, obj_ball_radius);
  const cagemap::Configuration c1 = parse_configuration(from);
  const cagemap::Configuration c2 = parse_configuration(to);
  const cagemap::GridSpec spec = cagemap::make_grid_spec(g.obstacles, g.object, resolution, ntheta);
  const cagemap::FreeGrid grid = cagemap::rasterize(g.object, g.obstacles, spec);
  json out{{"connected", cagemap::oracle_connected(grid, c1, c2)},
           {"from_escapes", cagemap::oracle_escapes(grid, c1)},
           {"to_escapes", cagemap::oracle_escapes(grid, c2)},
           {"resolution", resolution},
           {"ntheta", ntheta}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conservative SE(2) free-space connectivity analysis"};
  app.require_subcommand(1);

  cagemap::RunConfig cfg;
  double ball_radius = 0.0, obj_ball_radius = 0.0;
  CLI::App* build = app.add_subcommand("build", "slice a scene and write an analysis bundle");
  build->add_option("--scene", cfg.scene_path, "scene JSON file")->required();
  CLI::Option* br = build->add_option("--ball-radius", ball_radius, "obstacle ball radius");
  CLI::Option* obr = build->add_option("--obj-ball-radius", obj_ball_radius, "object ball radius");
  build->add_option("--epsilon", cfg.epsilon_spec, "core shrink, absolute or like 0.3r")
      ->required();
  build->add_option("--threads", cfg.threads, "worker threads for slicing");
  build->add_option("-o,--output", cfg.output_path, "bundle output path")->required();

  std::string bundle_path, kind, from, to, at;
  double delta = 0.0;
  CLI::App* query = app.add_subcommand("query", "answer connectivity queries from a bundle");
  query->add_option("--bundle", bundle_path, "bundle file")->required();
  query->add_option("--kind", kind, "path | cage | delta")
      ->required()
      ->check(CLI::IsMember({"path", "cage", "delta"}));
  query->add_option("--from", from, "configuration \"x,y,theta\"");
  query->add_option("--to", to, "configuration \"x,y,theta\"");
  query->add_option("--at", at, "configuration \"x,y,theta\"");
  CLI::Option* delta_opt = query->add_option("--delta", delta, "clearance for --kind delta");

  CLI::App* volumes = app.add_subcommand("volumes", "report per-component volumes");
  volumes->add_option("--bundle", bundle_path, "bundle file")->required();

  CLI::App* passages = app.add_subcommand("passages", "narrow-passage width between two configurations");
  passages->add_option("--bundle", bundle_path, "bundle file")->required();
  passages->add_option("--from", from, "configuration \"x,y,theta\"")->required();
  passages->add_option("--to", to, "configuration \"x,y,theta\"")->required();

  std::size_t slice_index = 0;
  std::string svg_path;
  CLI::App* render = app.add_subcommand("render", "render one slice as SVG");
  render->add_option("--bundle", bundle_path, "bundle file")->required();
  render->add_option("--slice", slice_index, "slice index")->required();
  render->add_option("-o,--output", svg_path, "SVG output path")->required();

  double resolution = 0.0;
  unsigned ntheta = 64;
  CLI::App* oracle = app.add_subcommand("oracle", "grid ground truth for a configuration pair");
  oracle->add_option("--scene", cfg.scene_path, "scene JSON file")->required();
  oracle->add_option("--resolution", resolution, "grid cell size")->required();
  oracle->add_option("--from", from, "configuration \"x,y,theta\"")->required();
  oracle->add_option("--to", to, "configuration \"x,y,theta\"")->required();
  oracle->add_option("--ntheta", ntheta, "orientation layers");
  CLI::Option* obr2 = oracle->add_option("--ball-radius", ball_radius, "obstacle ball radius");
  CLI::Option* oor2 = oracle->add_option("--obj-ball-radius", obj_ball_radius, "object ball radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) {
      if (br->count()) cfg.ball_radius = ball_radius;
      if (obr->count()) cfg.obj_ball_radius = obj_ball_radius;
      return cmd_build(cfg);
    }
    if (query->parsed())
      return cmd_query(bundle_path, kind, from, to, at, delta, delta_opt->count() > 0);
    if (volumes->parsed()) return cmd_volumes(bundle_path);
    if (passages->parsed()) return cmd_passages(bundle_path, from, to);
    if (render->parsed()) return cmd_render(bundle_path, slice_index, svg_path);
    if (oracle->parsed())
      return cmd_oracle(cfg.scene_path, resolution, from, to, ntheta,
                        obr2->count() ? std::optional<double>(ball_radius) : std::nullopt,
                        oor2->count() ? std::optional<double>(obj_ball_radius) : std::nullopt);
  } catch (const cagemap::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const cagemap::EpsilonTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const cagemap::CellNotFree& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
