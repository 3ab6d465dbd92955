#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cagemap/geom.hpp"
#include "cagemap/predicates.hpp"

// Delaunay triangulation by incremental insertion (walk + cavity retriangulation)
// with ghost triangles closing the hull, followed by the alpha-complex
// filtration over the resulting simplices.

namespace cagemap {

struct DegenerateInput : std::runtime_error {
  explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

struct TriEdge {
  int a = -1, b = -1;        // site ids, a < b
  int tri[2] = {-1, -1};     // incident triangles; tri[1] == -1 on the hull
};

struct DelaunayTriangulation {
  std::vector<Point> sites;                   // deduplicated, input order
  std::vector<std::array<int, 3>> triangles;  // CCW site ids
  std::vector<std::array<int, 3>> neighbors;  // across edge k=(v[k],v[k+1]); -1 hull
  std::vector<std::array<int, 3>> tri_edges;  // edge id per triangle slot
  std::vector<TriEdge> edges;
  std::vector<int> hull;                      // CCW cycle of hull site ids

  std::size_t triangle_count() const { return triangles.size(); }
};

namespace detail {

constexpr int kInf = -1;

struct BuildTri {
  int v[3];
  int n[3];
  bool alive = true;
  bool ghost() const { return v[0] == kInf || v[1] == kInf || v[2] == kInf; }
};

class DelaunayBuilder {
 public:
  explicit DelaunayBuilder(std::vector<Point> sites) : sites_(std::move(sites)) {}

  DelaunayTriangulation run() {
    if (sites_.size() < 3)
      throw DegenerateInput("build_delaunay: fewer than 3 distinct sites");
    int k = -1;
    double o = 0.0;
    for (std::size_t i = 2; i < sites_.size(); ++i) {
      o = orient2d(sites_[0], sites_[1], sites_[i]);
      if (o != 0.0) {
        k = static_cast<int>(i);
        break;
      }
    }
    if (k < 0) throw DegenerateInput("build_delaunay: all sites collinear");
    seed(0, 1, k, o > 0.0);
    for (std::size_t i = 2; i < sites_.size(); ++i) {
      if (static_cast<int>(i) == k) continue;
      insert(static_cast<int>(i));
    }
    return finish();
  }

 private:
  std::vector<Point> sites_;
  std::vector<BuildTri> tris_;
  std::vector<int> stamp_;
  std::vector<int> reject_;
  int epoch_ = 0;
  int hint_ = 0;

  void seed(int p, int q, int r, bool ccw) {
    if (!ccw) std::swap(p, q);
    tris_.push_back({{p, q, r}, {1, 2, 3}});
    tris_.push_back({{q, p, kInf}, {0, 3, 2}});   // across (p->q)
    tris_.push_back({{r, q, kInf}, {0, 1, 3}});   // across (q->r)
    tris_.push_back({{p, r, kInf}, {0, 2, 1}});   // across (r->p)
    stamp_.assign(4, 0);
    reject_.assign(4, 0);
    hint_ = 0;
  }

  // Hull edge of a ghost, directed with the triangulation interior on its
  // left: the reverse of the ghost's finite directed edge.
  void ghost_hull_edge(const BuildTri& t, int& a, int& b) const {
    for (int k = 0; k < 3; ++k) {
      const int u = t.v[k], w = t.v[(k + 1) % 3];
      if (u != kInf && w != kInf) {
        a = w;
        b = u;
        return;
      }
    }
    a = b = kInf;
  }

  bool conflicts(const BuildTri& t, const Point& p) const {
    if (!t.ghost())
      return incircle(sites_[t.v[0]], sites_[t.v[1]], sites_[t.v[2]], p) > 0.0;
    int a, b;
    ghost_hull_edge(t, a, b);
    const double o = orient2d(sites_[a], sites_[b], p);
    if (o < 0.0) return true;
    if (o > 0.0) return false;
    // Collinear: conflict only if p lies inside the open hull segment.
    const Point& pa = sites_[a];
    const Point& pb = sites_[b];
    const double t1 = dot(p - pa, pb - pa);
    return t1 > 0.0 && t1 < norm_sq(pb - pa);
  }

  int walk(const Point& p) const {
    int cur = hint_;
    const std::size_t cap = 4 * tris_.size() + 16;
    for (std::size_t step = 0; step < cap; ++step) {
      const BuildTri& t = tris_[cur];
      if (t.ghost()) return cur;
      int next = -1;
      for (int k = 0; k < 3; ++k) {
        if (orient2d(sites_[t.v[k]], sites_[t.v[(k + 1) % 3]], p) < 0.0) {
          next = t.n[k];
          break;
        }
      }
      if (next < 0) return cur;
      cur = next;
    }
    // Safety net for walk cycles: scan for any conflicting triangle.
    for (std::size_t i = 0; i < tris_.size(); ++i)
      if (tris_[i].alive && conflicts(tris_[i], p)) return static_cast<int>(i);
    return cur;
  }

  struct BoundaryEdge {
    int u, v;        // directed as seen from inside the cavity
    int outer;       // triangle outside the cavity sharing this edge
    int outer_slot;  // slot of the shared edge in `outer`
  };

  void insert(int site) {
    const Point& p = sites_[site];
    int seed_tri = walk(p);
    if (!conflicts(tris_[seed_tri], p)) {
      // The walk found the containing triangle; it must conflict unless the
      // structure is inconsistent, but fall back to a scan to be safe.
      seed_tri = -1;
      for (std::size_t i = 0; i < tris_.size(); ++i)
        if (tris_[i].alive && conflicts(tris_[i], p)) {
          seed_tri = static_cast<int>(i);
          break;
        }
      if (seed_tri < 0)
        throw std::logic_error("delaunay: no conflicting triangle for new site");
    }

    ++epoch_;
    stamp_.resize(tris_.size(), 0);
    reject_.resize(tris_.size(), 0);
    std::vector<int> cavity{seed_tri};
    std::vector<BoundaryEdge> boundary;
    stamp_[seed_tri] = epoch_;
    for (std::size_t qi = 0; qi < cavity.size(); ++qi) {
      const int ti = cavity[qi];
      const BuildTri t = tris_[ti];
      for (int k = 0; k < 3; ++k) {
        const int ni = t.n[k];
        if (stamp_[ni] == epoch_) continue;
        if (reject_[ni] != epoch_ && conflicts(tris_[ni], p)) {
          stamp_[ni] = epoch_;
          cavity.push_back(ni);
        } else {
          reject_[ni] = epoch_;
          const BuildTri& o = tris_[ni];
          int slot = 0;
          while (!(o.v[slot] == t.v[(k + 1) % 3] && o.v[(slot + 1) % 3] == t.v[k]))
            ++slot;
          boundary.push_back({t.v[k], t.v[(k + 1) % 3], ni, slot});
        }
      }
    }

    for (const int ti : cavity) tris_[ti].alive = false;

    const int base = static_cast<int>(tris_.size());
    const int m = static_cast<int>(boundary.size());
    for (int i = 0; i < m; ++i) {
      const BoundaryEdge& e = boundary[i];
      tris_.push_back({{e.u, e.v, site}, {e.outer, -1, -1}});
      tris_[e.outer].n[e.outer_slot] = base + i;
    }
    stamp_.resize(tris_.size(), 0);
    // Fan neighbors: across (v -> site) lies the new triangle whose boundary
    // edge starts at v; across (site -> u) the one whose edge ends at u.
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (boundary[j].u == boundary[i].v) tris_[base + i].n[1] = base + j;
        if (boundary[j].v == boundary[i].u) tris_[base + i].n[2] = base + j;
      }
    }
    for (int i = 0; i < m; ++i)
      if (!tris_[base + i].ghost()) {
        hint_ = base + i;
        break;
      }
  }

  DelaunayTriangulation finish() {
    DelaunayTriangulation out;
    out.sites = std::move(sites_);
    std::vector<int> remap(tris_.size(), -1);
    for (std::size_t i = 0; i < tris_.size(); ++i)
      if (tris_[i].alive && !tris_[i].ghost()) {
        remap[i] = static_cast<int>(out.triangles.size());
        out.triangles.push_back({tris_[i].v[0], tris_[i].v[1], tris_[i].v[2]});
      }
    out.neighbors.resize(out.triangles.size());
    for (std::size_t i = 0; i < tris_.size(); ++i) {
      if (remap[i] < 0) continue;
      for (int k = 0; k < 3; ++k) out.neighbors[remap[i]][k] = remap[tris_[i].n[k]];
    }

    // Unique undirected edges, in triangle/slot encounter order.
    out.tri_edges.resize(out.triangles.size());
    std::unordered_map<std::uint64_t, int> edge_ids;
    edge_ids.reserve(out.triangles.size() * 2);
    for (std::size_t t = 0; t < out.triangles.size(); ++t)
      for (int k = 0; k < 3; ++k) {
        const int a = out.triangles[t][k], b = out.triangles[t][(k + 1) % 3];
        const int lo = std::min(a, b), hi = std::max(a, b);
        const std::uint64_t key =
            (static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint32_t>(hi);
        auto [it, inserted] = edge_ids.try_emplace(key, static_cast<int>(out.edges.size()));
        if (inserted) {
          TriEdge e;
          e.a = lo;
          e.b = hi;
          e.tri[0] = static_cast<int>(t);
          out.edges.push_back(e);
        } else {
          out.edges[it->second].tri[1] = static_cast<int>(t);
        }
        out.tri_edges[t][k] = it->second;
      }

    // Hull cycle from the surviving ghosts.
    std::unordered_map<int, int> next_on_hull;
    int start = -1;
    for (const BuildTri& t : tris_) {
      if (!t.alive || !t.ghost()) continue;
      int a, b;
      ghost_hull_edge(t, a, b);
      next_on_hull[a] = b;
      if (start < 0 || a < start) start = a;
    }
    if (!next_on_hull.empty()) {
      int v = start;
      do {
        out.hull.push_back(v);
        v = next_on_hull.at(v);
      } while (v != start && out.hull.size() <= next_on_hull.size());
    }
    return out;
  }
};

// Merge sites closer than kTol, keeping first occurrences in input order.
inline std::vector<Point> dedupe_sites(const std::vector<Point>& input) {
  std::vector<Point> out;
  out.reserve(input.size());
  std::unordered_map<std::uint64_t, std::vector<int>> grid;
  grid.reserve(input.size() * 2);
  const double inv = 1.0 / kTol;
  auto key_of = [&](long long qx, long long qy) {
    return static_cast<std::uint64_t>(qx) * 0x9E3779B97F4A7C15ull ^
           static_cast<std::uint64_t>(qy);
  };
  for (const Point& p : input) {
    const long long qx = static_cast<long long>(std::floor(p.x * inv));
    const long long qy = static_cast<long long>(std::floor(p.y * inv));
    bool dup = false;
    for (long long dx = -1; dx <= 1 && !dup; ++dx)
      for (long long dy = -1; dy <= 1 && !dup; ++dy) {
        auto it = grid.find(key_of(qx + dx, qy + dy));
        if (it == grid.end()) continue;
        for (int id : it->second)
          if (distance_sq(p, out[id]) <= kTol * kTol) {
            dup = true;
            break;
          }
      }
    if (!dup) {
      grid[key_of(qx, qy)].push_back(static_cast<int>(out.size()));
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace detail

// Delaunay triangulation of the given sites.  Duplicates (within kTol) are
// merged first; fewer than 3 distinct sites or an all-collinear set raise
// DegenerateInput.  Deterministic for a fixed input sequence.
inline DelaunayTriangulation build_delaunay(const std::vector<Point>& input) {
  return detail::DelaunayBuilder(detail::dedupe_sites(input)).run();
}

// Containing triangle of p (closed triangles), or -1 if p lies strictly
// outside the convex hull.
inline int find_triangle(const DelaunayTriangulation& dt, const Point& p) {
  if (dt.triangles.empty()) return -1;
  int cur = 0;
  const std::size_t cap = 4 * dt.triangles.size() + 16;
  for (std::size_t step = 0; step < cap; ++step) {
    int next = -2;
    for (int k = 0; k < 3; ++k) {
      if (orient2d(dt.sites[dt.triangles[cur][k]],
                   dt.sites[dt.triangles[cur][(k + 1) % 3]], p) < 0.0) {
        next = dt.neighbors[cur][k];
        break;
      }
    }
    if (next == -2) return cur;
    if (next == -1) return -1;
    cur = next;
  }
  for (std::size_t t = 0; t < dt.triangles.size(); ++t) {
    bool inside = true;
    for (int k = 0; k < 3 && inside; ++k)
      inside = orient2d(dt.sites[dt.triangles[t][k]],
                        dt.sites[dt.triangles[t][(k + 1) % 3]], p) >= 0.0;
    if (inside) return static_cast<int>(t);
  }
  return -1;
}

inline bool strictly_inside_hull(const DelaunayTriangulation& dt, const Point& p) {
  const std::size_t h = dt.hull.size();
  if (h < 3) return false;
  for (std::size_t i = 0; i < h; ++i)
    if (orient2d(dt.sites[dt.hull[i]], dt.sites[dt.hull[(i + 1) % h]], p) <= 0.0)
      return false;
  return true;
}

inline bool strictly_outside_hull(const DelaunayTriangulation& dt, const Point& p) {
  const std::size_t h = dt.hull.size();
  if (h < 3) return true;
  for (std::size_t i = 0; i < h; ++i)
    if (orient2d(dt.sites[dt.hull[i]], dt.sites[dt.hull[(i + 1) % h]], p) < 0.0)
      return true;
  return false;
}

inline double circumradius_sq(const Point& a, const Point& b, const Point& c) {
  const Point u = b - a, v = c - a;
  const double d = 2.0 * cross(u, v);
  const double nu = norm_sq(u), nv = norm_sq(v);
  const double ux = (nu * v.y - nv * u.y) / d;
  const double uy = (nv * u.x - nu * v.x) / d;
  return ux * ux + uy * uy;
}

inline Point circumcenter(const Point& a, const Point& b, const Point& c) {
  const Point u = b - a, v = c - a;
  const double d = 2.0 * cross(u, v);
  const double nu = norm_sq(u), nv = norm_sq(v);
  return {a.x + (nu * v.y - nv * u.y) / d, a.y + (nv * u.x - nu * v.x) / d};
}

// Squared-radius alpha filtration over a Delaunay triangulation: a triangle's
// value is its squared circumradius; an edge's value is its squared Gabriel
// radius if the open diametral disk is empty of the opposite vertices, else
// the smallest incident triangle value.
struct Filtration {
  std::vector<double> tri_value;
  std::vector<double> edge_value;
  std::vector<char> edge_gabriel;
};

inline Filtration build_filtration(const DelaunayTriangulation& dt) {
  Filtration f;
  f.tri_value.resize(dt.triangle_count());
  for (std::size_t t = 0; t < dt.triangle_count(); ++t)
    f.tri_value[t] = circumradius_sq(dt.sites[dt.triangles[t][0]],
                                     dt.sites[dt.triangles[t][1]],
                                     dt.sites[dt.triangles[t][2]]);
  f.edge_value.resize(dt.edges.size());
  f.edge_gabriel.resize(dt.edges.size());
  for (std::size_t e = 0; e < dt.edges.size(); ++e) {
    const TriEdge& edge = dt.edges[e];
    const Point& a = dt.sites[edge.a];
    const Point& b = dt.sites[edge.b];
    const Point mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
    const double gabriel = 0.25 * distance_sq(a, b);
    bool attached = false;
    double min_tri = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 2; ++s) {
      const int t = edge.tri[s];
      if (t < 0) continue;
      min_tri = std::min(min_tri, f.tri_value[t]);
      for (int k = 0; k < 3; ++k) {
        const int v = dt.triangles[t][k];
        if (v == edge.a || v == edge.b) continue;
        if (distance_sq(dt.sites[v], mid) < gabriel) attached = true;
      }
    }
    f.edge_gabriel[e] = attached ? 0 : 1;
    f.edge_value[e] = attached ? min_tri : gabriel;
  }
  return f;
}

// Alpha complex at a fixed alpha (squared radius): membership is value <= alpha.
struct AlphaComplex {
  double alpha = 0.0;
  std::vector<char> edge_member;
  std::vector<char> tri_member;
};

inline AlphaComplex build_alpha(const Filtration& f, double alpha) {
  AlphaComplex cx;
  cx.alpha = alpha;
  cx.edge_member.resize(f.edge_value.size());
  cx.tri_member.resize(f.tri_value.size());
  for (std::size_t e = 0; e < f.edge_value.size(); ++e)
    cx.edge_member[e] = f.edge_value[e] <= alpha ? 1 : 0;
  for (std::size_t t = 0; t < f.tri_value.size(); ++t)
    cx.tri_member[t] = f.tri_value[t] <= alpha ? 1 : 0;
  return cx;
}

// Connected components of non-member (exterior) triangles, crossing only
// non-member edges.  Component 0 is the unbounded one, seeded across
// non-member hull edges; bounded components are numbered from 1 in
// triangle-id order.  comp[t] == -1 marks member triangles.
struct ExteriorDecomposition {
  std::vector<int> comp;
  int bounded_count = 0;
  std::vector<std::vector<int>> component_triangles;  // per component, sorted ids
  std::vector<double> component_area;
};

inline ExteriorDecomposition exterior_components(const DelaunayTriangulation& dt,
                                                 const AlphaComplex& cx) {
  ExteriorDecomposition d;
  const std::size_t T = dt.triangle_count();
  d.comp.assign(T, -2);
  for (std::size_t t = 0; t < T; ++t)
    if (cx.tri_member[t]) d.comp[t] = -1;

  std::vector<int> queue;
  auto flood = [&](int from, int label) {
    d.comp[from] = label;
    queue.clear();
    queue.push_back(from);
    while (!queue.empty()) {
      const int t = queue.back();
      queue.pop_back();
      for (int k = 0; k < 3; ++k) {
        const int n = dt.neighbors[t][k];
        if (n < 0 || d.comp[n] != -2) continue;
        if (cx.edge_member[dt.tri_edges[t][k]]) continue;
        d.comp[n] = label;
        queue.push_back(n);
      }
    }
  };

  // The unbounded component enters across every non-member hull edge.
  for (std::size_t t = 0; t < T; ++t) {
    if (d.comp[t] != -2) continue;
    for (int k = 0; k < 3; ++k)
      if (dt.neighbors[t][k] < 0 && !cx.edge_member[dt.tri_edges[t][k]]) {
        flood(static_cast<int>(t), 0);
        break;
      }
  }
  int next = 1;
  for (std::size_t t = 0; t < T; ++t)
    if (d.comp[t] == -2) flood(static_cast<int>(t), next++);
  d.bounded_count = next - 1;

  d.component_triangles.assign(next, {});
  d.component_area.assign(next, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    const int c = d.comp[t];
    if (c < 0) continue;
    d.component_triangles[c].push_back(static_cast<int>(t));
    const Point& a = dt.sites[dt.triangles[t][0]];
    const Point& b = dt.sites[dt.triangles[t][1]];
    const Point& cc = dt.sites[dt.triangles[t][2]];
    d.component_area[c] += 0.5 * cross(b - a, cc - a);
  }
  return d;
}

}  // namespace cagemap
