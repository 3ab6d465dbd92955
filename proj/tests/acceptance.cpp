// Acceptance gate: exercises the full pipeline against its ground-truth
// oracles and prints one PASS/FAIL line per criterion.  Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "cagemap/analysis.hpp"
#include "cagemap/geom.hpp"
#include "cagemap/metrics.hpp"
#include "cagemap/oracle.hpp"
#include "cagemap/slicing.hpp"
#include "cagemap/triangulation.hpp"
#include "support/bigscenes.hpp"
#include "support/grid2d.hpp"
#include "support/scenes.hpp"

using namespace cagemap;
using namespace cagemap::testsupport;
namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

// Component labels for every free cell of a 3D occupancy grid, plus a flag
// per component for reaching the x/y border.  Same connectivity as the
// oracle's BFS (4-connected in the plane, theta wraps), so label equality is
// oracle_connected and the border flag is oracle_escapes.
struct GridLabels {
  std::vector<int> label;      // -1 for occupied cells
  std::vector<char> escapes;   // per component
};

GridLabels label_grid(const FreeGrid& g) {
  const std::size_t nx = g.spec.nx, ny = g.spec.ny, nt = g.spec.ntheta;
  GridLabels out;
  out.label.assign(g.free.size(), -1);
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < g.free.size(); ++start) {
    if (!g.free[start] || out.label[start] >= 0) continue;
    const int id = static_cast<int>(out.escapes.size());
    bool escapes = false;
    out.label[start] = id;
    stack.assign(1, start);
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      const std::size_t ix = cur % nx, iy = (cur / nx) % ny, it = cur / (nx * ny);
      if (ix == 0 || iy == 0 || ix + 1 == nx || iy + 1 == ny) escapes = true;
      auto push = [&](std::size_t j) {
        if (g.free[j] && out.label[j] < 0) {
          out.label[j] = id;
          stack.push_back(j);
        }
      };
      if (ix > 0) push(cur - 1);
      if (ix + 1 < nx) push(cur + 1);
      if (iy > 0) push(cur - nx);
      if (iy + 1 < ny) push(cur + nx);
      push(g.index(ix, iy, it + 1 == nt ? 0 : it + 1));
      push(g.index(ix, iy, it == 0 ? nt - 1 : it - 1));
    }
    out.escapes.push_back(escapes ? 1 : 0);
  }
  return out;
}

int grid_class(const FreeGrid& g, const GridLabels& labels, const Configuration& c) {
  std::size_t ix, iy, it;
  if (!g.cell_of(c, ix, iy, it)) return -1;
  return labels.label[g.index(ix, iy, it)];
}

// Criterion 1: every ProvenDisconnected / ProvenCaged verdict on randomized
// desk scenes plus ring and corridor is confirmed by the grid oracle at
// resolution 0.05 r, ntheta 64.
bool criterion1(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Scene> scenes{ring_scene(), corridor_scene()};
  std::mt19937 rng(20260815);
  while (scenes.size() < 22) scenes.push_back(random_scene(rng));

  std::size_t queries = 0, proven = 0, confirmed = 0;
  for (std::size_t si = 0; si < scenes.size(); ++si) {
    const Scene& s = scenes[si];
    const Analysis a = build_analysis(s.obs, s.obj, s.epsilon);
    const double r = s.obj.body.common_radius;
    const GridSpec spec = make_grid_spec(s.obs, s.obj, 0.05 * r, 64);
    const FreeGrid grid = rasterize(s.obj, s.obs, spec);
    const GridLabels labels = label_grid(grid);

    double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
    for (const Disk& d : s.obs.disks) {
      minx = std::min(minx, d.center.x - d.radius);
      maxx = std::max(maxx, d.center.x + d.radius);
      miny = std::min(miny, d.center.y - d.radius);
      maxy = std::max(maxy, d.center.y + d.radius);
    }
    std::uniform_real_distribution<double> px(minx - s.obj.diam, maxx + s.obj.diam);
    std::uniform_real_distribution<double> py(miny - s.obj.diam, maxy + s.obj.diam);
    std::uniform_real_distribution<double> pt(0.0, 2.0 * kPi);

    // Probes must be free for both sides: locatable in the approximation and
    // in a free oracle cell.  Proven claims live inside bounded pockets, so
    // seed probes at the widest triangle of each pocket of the first slice
    // before topping up with random configurations.
    std::vector<Configuration> probes;
    if (si == 0) {  // ring: guarantee one caged and one escaped probe
      probes.push_back({0.0, 0.0, 0.3});
      probes.push_back({3.6, 3.6, 0.3});
    }
    const SliceApprox& first = a.slices[0];
    if (!first.degenerate) {
      const double mid = 0.5 * (first.phi + first.phi_end);
      std::vector<double> best(static_cast<std::size_t>(first.decomposition.bounded_count) + 1,
                               0.0);
      std::vector<Point> pick(best.size());
      for (std::size_t t = 0; t < first.dt.triangle_count(); ++t) {
        const int k = first.decomposition.comp[t];
        if (k <= 0) continue;
        const Point& pa = first.dt.sites[static_cast<std::size_t>(first.dt.triangles[t][0])];
        const Point& pb = first.dt.sites[static_cast<std::size_t>(first.dt.triangles[t][1])];
        const Point& pc = first.dt.sites[static_cast<std::size_t>(first.dt.triangles[t][2])];
        const double area = 0.5 * std::abs(cross(pb - pa, pc - pa));
        if (area > best[static_cast<std::size_t>(k)]) {
          best[static_cast<std::size_t>(k)] = area;
          pick[static_cast<std::size_t>(k)] = (1.0 / 3.0) * (pa + pb + pc);
        }
      }
      for (std::size_t k = 1; k < pick.size() && probes.size() < 4; ++k) {
        const Configuration c{pick[k].x, pick[k].y, mid};
        if (best[k] > 0.0 && locate(c, a.slices) && grid_class(grid, labels, c) >= 0)
          probes.push_back(c);
      }
    }
    for (int attempt = 0; attempt < 600 && probes.size() < 6; ++attempt) {
      const Configuration c{px(rng), py(rng), pt(rng)};
      if (locate(c, a.slices) && grid_class(grid, labels, c) >= 0) probes.push_back(c);
    }
    for (const Configuration& c : probes)
      if (!locate(c, a.slices) || grid_class(grid, labels, c) < 0) {
        detail = format("scene %zu: probe not free on both sides", si);
        return false;
      }

    for (std::size_t i = 0; i < probes.size(); ++i)
      for (std::size_t j = i + 1; j < probes.size(); ++j) {
        ++queries;
        if (query_path(probes[i], probes[j], a.graph, a.slices) ==
            Verdict::ProvenDisconnected) {
          ++proven;
          if (grid_class(grid, labels, probes[i]) != grid_class(grid, labels, probes[j]))
            ++confirmed;
        }
      }
    for (const Configuration& c : probes) {
      ++queries;
      if (query_caged(c, a.graph, a.slices) == Verdict::ProvenCaged) {
        ++proven;
        if (!labels.escapes[static_cast<std::size_t>(grid_class(grid, labels, c))])
          ++confirmed;
      }
    }
  }
  const double elapsed = seconds_since(t0);
  detail = format("%zu scenes, %zu queries, %zu proven claims, %zu confirmed, %.1fs",
                  scenes.size(), queries, proven, confirmed, elapsed);
  return proven == confirmed && proven >= 2 && elapsed < 300.0;
}

// Criterion 2: delta_connected proves disconnection on five constructed
// truly-disconnected instances (ring of overlapping collision disks around a
// free pocket), with eps = 0.3 r, delta = 2 eps, and the partition meeting
// the displacement condition D < delta - eps.
bool criterion2(std::string& detail) {
  struct Case {
    int n;
    double rho, obs_r, obj_r;
  };
  const Case cases[5] = {{8, 2.5, 0.6, 0.6},
                         {10, 3.0, 0.55, 0.5},
                         {12, 3.5, 0.5, 0.45},
                         {9, 2.8, 0.7, 0.55},
                         {11, 3.2, 0.6, 0.5}};
  int shown = 0;
  for (const Case& k : cases) {
    // Adjacent collision disks overlap at every orientation, so the pocket is
    // disconnected from the exterior in the true free space.
    const double gap = 2.0 * k.rho * std::sin(kPi / k.n);
    if (!(gap < 2.0 * (k.obs_r + k.obj_r))) {
      detail = format("case n=%d is not sealed (gap %.3f)", k.n, gap);
      return false;
    }
    std::vector<Disk> ring;
    for (int i = 0; i < k.n; ++i) {
      const double ang = 2.0 * kPi * i / k.n;
      ring.emplace_back(Point{k.rho * std::cos(ang), k.rho * std::sin(ang)}, k.obs_r);
    }
    const DiskUnion obs{ring};
    const RigidObject obj = make_rigid_object(DiskUnion({Disk({0.0, 0.0}, k.obj_r)}));
    const double eps = 0.3 * k.obj_r, delta = 2.0 * eps;
    const EpsilonCore core = epsilon_core(obj, eps);
    const So2Partition part = partition_so2(obj, eps);
    if (!(displacement_bound(part.delta_phi, obj.diam) < delta - eps)) {
      detail = format("case n=%d misses the displacement condition", k.n);
      return false;
    }
    const Configuration inside{0.0, 0.0, 0.2};
    const Configuration outside{k.rho + k.obs_r + 2.0, 0.0, 0.2};
    if (delta_connected(inside, outside, delta, obs, core, part) !=
        Verdict::ProvenDisconnected) {
      detail = format("case n=%d not proven disconnected", k.n);
      return false;
    }
    // Ground truth at 0.05 r: the pocket never reaches the box corner.
    const GridSpec spec = make_grid_spec(obs, obj, 0.05 * k.obj_r, 64);
    const FreeGrid grid = rasterize(obj, obs, spec);
    const Configuration corner = grid.center(spec.nx - 2, spec.ny - 2, 0);
    if (oracle_connected(grid, inside, corner)) {
      detail = format("case n=%d is not truly disconnected", k.n);
      return false;
    }
    ++shown;
  }
  detail = format("%d/5 instances proven disconnected and oracle-confirmed", shown);
  return shown == 5;
}

struct Labels2D {
  std::vector<int> label;     // -1 for occupied cells
  std::vector<char> border;   // per component
};

Labels2D flood2d(const Grid2D& g) {
  Labels2D out;
  out.label.assign(g.free.size(), -1);
  std::vector<int> stack;
  for (int start = 0; start < static_cast<int>(g.free.size()); ++start) {
    if (!g.free[start] || out.label[start] >= 0) continue;
    const int id = static_cast<int>(out.border.size());
    bool border = false;
    out.label[start] = id;
    stack.assign(1, start);
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      const int ix = cur % g.nx, iy = cur / g.nx;
      if (ix == 0 || iy == 0 || ix == g.nx - 1 || iy == g.ny - 1) border = true;
      const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int jx = ix + dx[k], jy = iy + dy[k];
        if (jx < 0 || jy < 0 || jx >= g.nx || jy >= g.ny) continue;
        const int j = jy * g.nx + jx;
        if (g.free[j] && out.label[j] < 0) {
          out.label[j] = id;
          stack.push_back(j);
        }
      }
    }
    out.border.push_back(border ? 1 : 0);
  }
  return out;
}

// Criterion 3: alpha decomposition against a planar pixel oracle on 50 random
// unions: equal bounded-component counts, and point classification
// (occupied / bounded hole / unbounded) agrees for points farther than one
// grid diagonal from every disk boundary.
bool criterion3(std::string& detail) {
  std::mt19937 rng(913);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::uniform_int_distribution<int> count(3, 25);
  const double radius = 1.0, cell = 0.02;
  const double diag = cell * std::sqrt(2.0);
  int done = 0;
  std::size_t sampled = 0, agreed = 0;
  while (done < 50) {
    const int n = count(rng);
    std::vector<Point> centers;
    for (int i = 0; i < n; ++i) centers.push_back({coord(rng), coord(rng)});
    if (!grid_resolvable(centers, radius, 6.0 * cell)) continue;
    DelaunayTriangulation dt;
    try {
      dt = build_delaunay(centers);
    } catch (const DegenerateInput&) {
      continue;
    }
    const AlphaComplex alpha = build_alpha(build_filtration(dt), radius * radius);
    const ExteriorDecomposition decomp = exterior_components(dt, alpha);
    const DiskUnion u(centers, radius);
    const Grid2D grid = rasterize2d(u, 0.5, cell);
    if (decomp.bounded_count != bounded_components_2d(grid, u)) {
      detail = format("union %d: component counts differ", done);
      return false;
    }
    const Labels2D labels = flood2d(grid);

    std::uniform_real_distribution<double> sx(grid.minx, grid.minx + grid.nx * cell);
    std::uniform_real_distribution<double> sy(grid.miny, grid.miny + grid.ny * cell);
    enum { kOccupied, kBounded, kUnbounded };
    for (int i = 0; i < 400; ++i) {
      const Point p{sx(rng), sy(rng)};
      double nearest = 1e300;
      for (const Point& c : centers)
        nearest = std::min(nearest, std::abs(distance(p, c) - radius));
      if (nearest <= diag) continue;

      int mine;
      if (signed_distance(p, u) < 0.0) {
        mine = kOccupied;
      } else {
        const int t = find_triangle(dt, p);
        if (t < 0)
          mine = kUnbounded;
        else if (alpha.tri_member[static_cast<std::size_t>(t)])
          mine = kOccupied;
        else
          mine = decomp.comp[static_cast<std::size_t>(t)] == 0 ? kUnbounded : kBounded;
      }

      const int ix = static_cast<int>((p.x - grid.minx) / cell);
      const int iy = static_cast<int>((p.y - grid.miny) / cell);
      if (ix < 0 || iy < 0 || ix >= grid.nx || iy >= grid.ny) continue;
      const int lab = labels.label[iy * grid.nx + ix];
      const int theirs =
          lab < 0 ? kOccupied : (labels.border[static_cast<std::size_t>(lab)] ? kUnbounded : kBounded);

      ++sampled;
      if (mine == theirs) ++agreed;
    }
    ++done;
  }
  const double rate = sampled ? static_cast<double>(agreed) / static_cast<double>(sampled) : 0.0;
  detail = format("50 unions, counts all equal, membership %zu/%zu (%.2f%%)", agreed,
                  sampled, 100.0 * rate);
  return rate >= 0.99;
}

// Criterion 4: the slice count for diam 5 matches ceil(2 pi / (2 asin(0.999
// eps / 10))) exactly and never increases with eps.
bool criterion4(std::string& detail) {
  const RigidObject obj = make_rigid_object(DiskUnion({Disk({0.0, 0.0}, 5.0)}));
  std::size_t prev = 0;
  std::string curve;
  for (int k = 1; k <= 10; ++k) {
    const double eps = 0.1 * k;
    const std::size_t s = partition_so2(obj, eps).size();
    const std::size_t expect = static_cast<std::size_t>(
        std::ceil(2.0 * kPi / (2.0 * std::asin(0.999 * eps / 10.0))));
    if (s != expect) {
      detail = format("eps %.1f: s=%zu, formula %zu", eps, s, expect);
      return false;
    }
    if (k > 1 && s > prev) {
      detail = format("eps %.1f: s increased %zu -> %zu", eps, prev, s);
      return false;
    }
    prev = s;
    curve += format(k == 1 ? "%zu" : ",%zu", s);
  }
  detail = "s(0.1..1.0) = " + curve;
  return true;
}

// Criterion 5: the multichamber scene gains one component per refinement
// level as thinner dividers become representable: 2 / 3 / 4 components.
bool criterion5(std::string& detail) {
  const Multichamber m = multichamber_scene();
  std::size_t balls[3] = {0, 0, 0}, comps[3] = {0, 0, 0};
  const double levels[3] = {m.coarse, m.medium, m.fine};
  for (int i = 0; i < 3; ++i) {
    const DiskUnion obs = approximate_walls(m.walls, levels[i]);
    const Analysis a = build_analysis(obs, m.object, m.epsilon);
    balls[i] = obs.disks.size();
    comps[i] = component_volumes(a.graph, a.slices).components.size();
  }
  detail = format("radius 4/3/2: %zu/%zu/%zu balls, %zu/%zu/%zu components", balls[0],
                  balls[1], balls[2], comps[0], comps[1], comps[2]);
  return comps[0] == 2 && comps[1] == 3 && comps[2] == 4;
}

// Criterion 6: chamber volumes at the fine level bound the oracle volume
// within [1, 2], and grow with eps over a shared partition while no merge
// happens.
bool criterion6(std::string& detail) {
  const Multichamber m = multichamber_scene();
  const DiskUnion obs = approximate_walls(m.walls, m.fine);
  const Point chambers[3] = {m.chamber1, m.chamber2, m.chamber3};

  const Analysis a = build_analysis(obs, m.object, m.epsilon);
  const GridSpec spec = make_grid_spec(obs, m.object, 0.1 * 4.0, 64);
  const FreeGrid grid = rasterize(m.object, obs, spec);
  double worst_lo = 1e300, worst_hi = 0.0;
  for (const Point& p : chambers) {
    const Configuration c{p.x, p.y, 0.0};
    const auto v = locate(c, a.slices);
    if (!v) {
      detail = format("chamber (%g, %g) not locatable", p.x, p.y);
      return false;
    }
    const double computed = component_volume(a.graph, a.slices, *v).volume;
    const double truth = oracle_volume(grid, c);
    const double ratio = computed / truth;
    worst_lo = std::min(worst_lo, ratio);
    worst_hi = std::max(worst_hi, ratio);
  }
  if (!(worst_lo >= 1.0 && worst_hi <= 2.0)) {
    detail = format("volume/oracle ratios outside [1, 2]: %.3f .. %.3f", worst_lo, worst_hi);
    return false;
  }

  // Epsilon sweep over one partition (valid for every eps above its own): the
  // per-slice free regions nest, so each chamber volume must be
  // non-decreasing as long as the component count stays put.
  const double sweep[5] = {1.2, 1.3, 1.4, 1.5, 1.6};  // 0.30r .. 0.40r
  const So2Partition part = partition_so2(m.object, sweep[0]);
  double prev[3] = {-1.0, -1.0, -1.0};
  for (double eps : sweep) {
    if (!(displacement_bound(part.delta_phi, m.object.diam) < eps)) {
      detail = format("shared partition invalid at eps %.2f", eps);
      return false;
    }
    const EpsilonCore core = epsilon_core(m.object, eps);
    std::vector<SliceApprox> slices;
    for (std::size_t i = 0; i < part.size(); ++i)
      slices.push_back(build_slice(obs, core, i, part));
    const ConnectivityGraph graph = build_graph(slices);
    if (component_volumes(graph, slices).components.size() != 4) {
      detail = format("components merged at eps %.2f", eps);
      return false;
    }
    for (int i = 0; i < 3; ++i) {
      const auto v = locate({chambers[i].x, chambers[i].y, 0.0}, slices);
      if (!v) {
        detail = format("chamber %d not locatable at eps %.2f", i + 1, eps);
        return false;
      }
      const double vol = component_volume(graph, slices, *v).volume;
      if (vol + 1e-9 * vol < prev[i]) {
        detail = format("chamber %d volume fell at eps %.2f (%.3f -> %.3f)", i + 1, eps,
                        prev[i], vol);
        return false;
      }
      prev[i] = vol;
    }
  }
  detail = format("volume/oracle in [%.3f, %.3f]; monotone over eps 0.30r..0.40r",
                  worst_lo, worst_hi);
  return true;
}

// Criterion 7: corridor passage width equals gap/2 - (R + r - eps).
bool criterion7(std::string& detail) {
  const DiskUnion obs{{Disk({0.0, 0.0}, 1.0), Disk({0.0, 6.0}, 1.0)}};
  const RigidObject obj = make_rigid_object(DiskUnion({Disk({0.0, 0.0}, 0.5)}));
  const double eps = 0.15;
  const Analysis a = build_analysis(obs, obj, eps);
  const PassageReport report =
      passage_width({0.0, 3.0, 0.0}, {2.0, 3.0, 0.0}, a.slices, a.graph);
  const double analytic = 6.0 / 2.0 - (1.0 + 0.5 - eps);
  const double diff = std::abs(report.delta_star - analytic);
  detail = format("delta* %.12f, analytic %.12f, |diff| %.2e", report.delta_star,
                  analytic, diff);
  return diff <= 1e-9;
}

// Criterion 8: full build on a 681-obstacle-ball x 5-object-ball scene at
// eps 0.3r: < 10 s single-threaded, < 4 s with 4 threads, and edge
// construction at most 5x slice construction.
bool criterion8(std::string& detail) {
  const Multichamber m = multichamber_scene();  // reuse the plus object
  const DiskUnion spiral = spiral_scene(681, 2.0, 16.0, 2.5);
  if (spiral.disks.size() != 681 || m.object.body.size() != 5) {
    detail = "scene sizes off";
    return false;
  }
  BuildTimings t1;
  auto w0 = std::chrono::steady_clock::now();
  const Analysis a1 = build_analysis(spiral, m.object, 1.2, 1, &t1);
  const double wall1 = seconds_since(w0);
  BuildTimings t4;
  w0 = std::chrono::steady_clock::now();
  const Analysis a4 = build_analysis(spiral, m.object, 1.2, 4, &t4);
  const double wall4 = seconds_since(w0);
  const double ratio = t1.graph_seconds / std::max(t1.slices_seconds, 1e-9);
  detail = format("%zu slices; 1 thread %.2fs, 4 threads %.2fs (%u hw cores), "
                  "graph/slices %.2f",
                  a1.slices.size(), wall1, wall4, std::thread::hardware_concurrency(),
                  ratio);
  return wall1 < 10.0 && wall4 < 4.0 && ratio <= 5.0 &&
         a4.slices.size() == a1.slices.size();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// Criterion 9: two CLI runs on the same scene produce byte-identical bundles
// and SVGs.
bool criterion9(std::string& detail) {
  const fs::path work = fs::temp_directory_path() / "cagemap_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);
  const std::string scene = std::string(CAGEMAP_SCENES_DIR) + "/ring.json";
  auto run = [&](const std::string& args) {
    const std::string cmd = std::string(CAGEMAP_CLI_PATH) + " " + args +
                            " > /dev/null 2> /dev/null";
    return WEXITSTATUS(std::system(cmd.c_str()));
  };
  for (const char* tag : {"a", "b"}) {
    const std::string bundle = (work / (std::string("ring_") + tag + ".json")).string();
    if (run("build --scene " + scene + " --epsilon 0.3r -o " + bundle) != 0) {
      detail = "build run failed";
      return false;
    }
    for (int slice : {0, 7})
      if (run("render --bundle " + bundle + " --slice " + std::to_string(slice) + " -o " +
              (work / format("slice%d_%s.svg", slice, tag)).string()) != 0) {
        detail = "render run failed";
        return false;
      }
  }
  const std::string bundle_a = slurp(work / "ring_a.json");
  if (bundle_a.empty() || bundle_a != slurp(work / "ring_b.json")) {
    detail = "bundles differ";
    return false;
  }
  for (int slice : {0, 7}) {
    const std::string svg = slurp(work / format("slice%d_a.svg", slice));
    if (svg.empty() || svg != slurp(work / format("slice%d_b.svg", slice))) {
      detail = format("slice %d SVGs differ", slice);
      return false;
    }
  }
  detail = format("bundle %zu bytes and 2 SVGs byte-identical across runs",
                  bundle_a.size());
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    bool (*fn)(std::string&);
  };
  const Criterion table[] = {{1, criterion1}, {2, criterion2}, {3, criterion3},
                             {4, criterion4}, {5, criterion5}, {6, criterion6},
                             {7, criterion7}, {8, criterion8}, {9, criterion9}};
  int failed = 0;
  for (const Criterion& c : table) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      detail = format("exception: %s", e.what());
    }
    if (!ok) ++failed;
    std::printf("[criterion %d] %s - %s\n", c.id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/9 criteria passed\n", 9 - failed);
  return failed;
}
