#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cagemap/geom.hpp"

namespace cagemap {

struct CellNotFree : std::runtime_error {
  explicit CellNotFree(const std::string& what) : std::runtime_error(what) {}
};

struct GridSpec {
  double minx = 0.0, miny = 0.0, maxx = 0.0, maxy = 0.0;
  std::size_t nx = 0, ny = 0, ntheta = 8;

  double dx() const { return (maxx - minx) / static_cast<double>(nx); }
  double dy() const { return (maxy - miny) / static_cast<double>(ny); }
  double dtheta() const { return 2.0 * kPi / static_cast<double>(ntheta); }
};

// Box covering the obstacles inflated by the object diameter (so escape
// through the border means escape from the obstacles), cells of roughly the
// requested size.
inline GridSpec make_grid_spec(const DiskUnion& obs, const RigidObject& obj,
                               double cell, std::size_t ntheta) {
  if (!(cell > 0.0)) throw std::invalid_argument("make_grid_spec: cell must be positive");
  if (ntheta < 8) throw std::invalid_argument("make_grid_spec: ntheta must be >= 8");
  GridSpec spec;
  spec.ntheta = ntheta;
  double minx = -1.0, maxx = 1.0, miny = -1.0, maxy = 1.0;
  if (!obs.empty()) {
    minx = maxx = obs.disks[0].center.x;
    miny = maxy = obs.disks[0].center.y;
    for (const Disk& d : obs.disks) {
      minx = std::min(minx, d.center.x - d.radius);
      maxx = std::max(maxx, d.center.x + d.radius);
      miny = std::min(miny, d.center.y - d.radius);
      maxy = std::max(maxy, d.center.y + d.radius);
    }
  }
  const double margin = obj.diam + cell;
  spec.minx = minx - margin;
  spec.maxx = maxx + margin;
  spec.miny = miny - margin;
  spec.maxy = maxy + margin;
  spec.nx = static_cast<std::size_t>(std::ceil((spec.maxx - spec.minx) / cell));
  spec.ny = static_cast<std::size_t>(std::ceil((spec.maxy - spec.miny) / cell));
  return spec;
}

// Occupancy over (x, y, theta) cell centers: true = collision-free there.
struct FreeGrid {
  GridSpec spec;
  std::vector<char> free;  // layer-major: (it * ny + iy) * nx + ix

  std::size_t index(std::size_t ix, std::size_t iy, std::size_t it) const {
    return (it * spec.ny + iy) * spec.nx + ix;
  }
  Configuration center(std::size_t ix, std::size_t iy, std::size_t it) const {
    return {spec.minx + (static_cast<double>(ix) + 0.5) * spec.dx(),
            spec.miny + (static_cast<double>(iy) + 0.5) * spec.dy(),
            (static_cast<double>(it) + 0.5) * spec.dtheta()};
  }
  // Cell containing a configuration; false if (x, y) is outside the box.
  bool cell_of(const Configuration& c, std::size_t& ix, std::size_t& iy,
               std::size_t& it) const {
    if (c.x < spec.minx || c.x >= spec.maxx || c.y < spec.miny || c.y >= spec.maxy)
      return false;
    ix = static_cast<std::size_t>((c.x - spec.minx) / spec.dx());
    iy = static_cast<std::size_t>((c.y - spec.miny) / spec.dy());
    it = static_cast<std::size_t>(c.theta / spec.dtheta());
    ix = std::min(ix, spec.nx - 1);
    iy = std::min(iy, spec.ny - 1);
    it = std::min(it, spec.ntheta - 1);
    return true;
  }
};

namespace detail {

// Uniform bins over the obstacle centers so each cell-center test touches a
// handful of candidates instead of every obstacle.  The exact distance test
// still runs on every candidate, so results match the brute-force scan.
struct ObstacleBins {
  double minx = 0.0, miny = 0.0, cell = 1.0;
  std::size_t nx = 1, ny = 1;
  std::vector<std::vector<int>> bins;

  ObstacleBins(const DiskUnion& obs, double search_radius) {
    cell = std::max(search_radius, 1e-12);
    minx = obs.disks[0].center.x;
    miny = obs.disks[0].center.y;
    double maxx = minx, maxy = miny;
    for (const Disk& d : obs.disks) {
      minx = std::min(minx, d.center.x);
      maxx = std::max(maxx, d.center.x);
      miny = std::min(miny, d.center.y);
      maxy = std::max(maxy, d.center.y);
    }
    nx = static_cast<std::size_t>((maxx - minx) / cell) + 1;
    ny = static_cast<std::size_t>((maxy - miny) / cell) + 1;
    bins.resize(nx * ny);
    for (std::size_t j = 0; j < obs.disks.size(); ++j)
      bins[at(obs.disks[j].center)].push_back(static_cast<int>(j));
  }

  std::size_t clamp_ix(double x) const {
    const double t = (x - minx) / cell;
    if (t <= 0.0) return 0;
    const std::size_t i = static_cast<std::size_t>(t);
    return std::min(i, nx - 1);
  }
  std::size_t clamp_iy(double y) const {
    const double t = (y - miny) / cell;
    if (t <= 0.0) return 0;
    const std::size_t i = static_cast<std::size_t>(t);
    return std::min(i, ny - 1);
  }
  std::size_t at(const Point& p) const { return clamp_iy(p.y) * nx + clamp_ix(p.x); }

  bool hits(const Point& p, double ball_radius, const DiskUnion& obs) const {
    const std::size_t cx = clamp_ix(p.x), cy = clamp_iy(p.y);
    const std::size_t x0 = cx > 0 ? cx - 1 : 0, x1 = std::min(cx + 1, nx - 1);
    const std::size_t y0 = cy > 0 ? cy - 1 : 0, y1 = std::min(cy + 1, ny - 1);
    for (std::size_t by = y0; by <= y1; ++by)
      for (std::size_t bx = x0; bx <= x1; ++bx)
        for (int j : bins[by * nx + bx]) {
          const Disk& o = obs.disks[static_cast<std::size_t>(j)];
          const double rr = ball_radius + o.radius;
          if (distance_sq(p, o.center) < rr * rr) return true;
        }
    return false;
  }
};

}  // namespace detail

inline FreeGrid rasterize(const RigidObject& obj, const DiskUnion& obs,
                          const GridSpec& spec, unsigned threads = 1) {
  FreeGrid g;
  g.spec = spec;
  g.free.assign(spec.nx * spec.ny * spec.ntheta, 0);
  double search = 0.0;
  double max_obs_r = 0.0;
  for (const Disk& o : obs.disks) max_obs_r = std::max(max_obs_r, o.radius);
  for (const Disk& b : obj.body.disks) search = std::max(search, b.radius + max_obs_r);
  const std::optional<detail::ObstacleBins> bins =
      obs.size() > 24 ? std::optional<detail::ObstacleBins>(detail::ObstacleBins(obs, search))
                      : std::nullopt;
  auto fill_layer = [&](std::size_t it) {
    const double theta = (static_cast<double>(it) + 0.5) * spec.dtheta();
    const DiskUnion placed = transform(obj.body, Configuration(0.0, 0.0, theta));
    for (std::size_t iy = 0; iy < spec.ny; ++iy) {
      const double y = spec.miny + (static_cast<double>(iy) + 0.5) * spec.dy();
      for (std::size_t ix = 0; ix < spec.nx; ++ix) {
        const double x = spec.minx + (static_cast<double>(ix) + 0.5) * spec.dx();
        bool hit = false;
        for (const Disk& b : placed.disks) {
          const Point p{x + b.center.x, y + b.center.y};
          if (bins) {
            if (bins->hits(p, b.radius, obs)) {
              hit = true;
              break;
            }
            continue;
          }
          for (const Disk& o : obs.disks) {
            const double rr = b.radius + o.radius;
            if (distance_sq(p, o.center) < rr * rr) {
              hit = true;
              break;
            }
          }
          if (hit) break;
        }
        g.free[g.index(ix, iy, it)] = hit ? 0 : 1;
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, spec.ntheta));
  if (n == 1) {
    for (std::size_t it = 0; it < spec.ntheta; ++it) fill_layer(it);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t it = w; it < spec.ntheta; it += n) fill_layer(it);
      });
    for (std::thread& t : pool) t.join();
  }
  return g;
}

namespace detail {

// 6-connected BFS (x, y, theta-with-wrap) from a seed cell; visits the seed's
// component, marking `mark`.
inline void oracle_flood(const FreeGrid& g, std::size_t seed, std::vector<char>& mark) {
  std::vector<std::size_t> queue{seed};
  mark[seed] = 1;
  const std::size_t nx = g.spec.nx, ny = g.spec.ny, nt = g.spec.ntheta;
  while (!queue.empty()) {
    const std::size_t cur = queue.back();
    queue.pop_back();
    const std::size_t ix = cur % nx, iy = (cur / nx) % ny, it = cur / (nx * ny);
    auto push = [&](std::size_t j) {
      if (g.free[j] && !mark[j]) {
        mark[j] = 1;
        queue.push_back(j);
      }
    };
    if (ix > 0) push(cur - 1);
    if (ix + 1 < nx) push(cur + 1);
    if (iy > 0) push(cur - nx);
    if (iy + 1 < ny) push(cur + nx);
    push(g.index(ix, iy, it + 1 == nt ? 0 : it + 1));
    push(g.index(ix, iy, it == 0 ? nt - 1 : it - 1));
  }
}

inline std::size_t seed_cell(const FreeGrid& g, const Configuration& c,
                             const char* who) {
  std::size_t ix, iy, it;
  if (!g.cell_of(c, ix, iy, it))
    throw CellNotFree(std::string(who) + ": configuration outside the grid box");
  const std::size_t j = g.index(ix, iy, it);
  if (!g.free[j]) throw CellNotFree(std::string(who) + ": endpoint cell is occupied");
  return j;
}

}  // namespace detail

inline bool oracle_connected(const FreeGrid& g, const Configuration& c1,
                             const Configuration& c2) {
  const std::size_t s1 = detail::seed_cell(g, c1, "oracle_connected");
  const std::size_t s2 = detail::seed_cell(g, c2, "oracle_connected");
  std::vector<char> mark(g.free.size(), 0);
  detail::oracle_flood(g, s1, mark);
  return mark[s2] != 0;
}

// True if the BFS component of c reaches the x/y border of the box (the box
// covers the obstacles inflated by the object diameter, so border cells are
// clear of the obstacles).
inline bool oracle_escapes(const FreeGrid& g, const Configuration& c) {
  const std::size_t seed = detail::seed_cell(g, c, "oracle_escapes");
  std::vector<char> mark(g.free.size(), 0);
  detail::oracle_flood(g, seed, mark);
  const std::size_t nx = g.spec.nx, ny = g.spec.ny;
  for (std::size_t j = 0; j < mark.size(); ++j) {
    if (!mark[j]) continue;
    const std::size_t ix = j % nx, iy = (j / nx) % ny;
    if (ix == 0 || iy == 0 || ix + 1 == nx || iy + 1 == ny) return true;
  }
  return false;
}

inline double oracle_volume(const FreeGrid& g, const Configuration& seed) {
  const std::size_t s = detail::seed_cell(g, seed, "oracle_volume");
  std::vector<char> mark(g.free.size(), 0);
  detail::oracle_flood(g, s, mark);
  std::size_t count = 0;
  for (char m : mark) count += m != 0;
  return static_cast<double>(count) * g.spec.dx() * g.spec.dy() * g.spec.dtheta();
}

}  // namespace cagemap
