#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cagemap/geom.hpp"
#include "cagemap/slicing.hpp"
#include "cagemap/triangulation.hpp"

namespace cagemap {

enum class Verdict {
  ProvenDisconnected,
  PossiblyConnected,
  ProvenCaged,
  NotProvenCaged,
  InCollision,
};

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::ProvenDisconnected: return "proven_disconnected";
    case Verdict::PossiblyConnected: return "possibly_connected";
    case Verdict::ProvenCaged: return "proven_caged";
    case Verdict::NotProvenCaged: return "not_proven_caged";
    case Verdict::InCollision: return "in_collision";
  }
  return "unknown";
}

// A free-space region of one slice: component 0 is the unbounded exterior.
struct Vertex {
  std::size_t slice = 0;
  int component = 0;

  bool operator==(const Vertex& o) const {
    return slice == o.slice && component == o.component;
  }
};

namespace detail {

// Closed-set triangle contact with a small tolerance band: near-touching
// counts as touching.  Extra edges only weaken disconnection claims, missing
// ones would break soundness.
inline constexpr double kTouchTol = 1e-9;

inline int orient_sign(const Point& a, const Point& b, const Point& c) {
  const double v = cross(b - a, c - a);
  if (v > kTouchTol) return 1;
  if (v < -kTouchTol) return -1;
  return 0;
}

inline bool point_in_tri_closed(const Point& p, const Point& a, const Point& b,
                                const Point& c) {
  return orient_sign(a, b, p) >= 0 && orient_sign(b, c, p) >= 0 &&
         orient_sign(c, a, p) >= 0;
}

inline bool segments_touch_closed(const Point& p1, const Point& p2, const Point& q1,
                                  const Point& q2) {
  const int o1 = orient_sign(p1, p2, q1), o2 = orient_sign(p1, p2, q2);
  const int o3 = orient_sign(q1, q2, p1), o4 = orient_sign(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  auto on_seg = [](const Point& a, const Point& b, const Point& c) {
    return std::min(a.x, b.x) - kTouchTol <= c.x && c.x <= std::max(a.x, b.x) + kTouchTol &&
           std::min(a.y, b.y) - kTouchTol <= c.y && c.y <= std::max(a.y, b.y) + kTouchTol;
  };
  if (o1 == 0 && on_seg(p1, p2, q1)) return true;
  if (o2 == 0 && on_seg(p1, p2, q2)) return true;
  if (o3 == 0 && on_seg(q1, q2, p1)) return true;
  if (o4 == 0 && on_seg(q1, q2, p2)) return true;
  return false;
}

inline bool triangles_touch(const Point& a0, const Point& a1, const Point& a2,
                            const Point& b0, const Point& b1, const Point& b2) {
  if (point_in_tri_closed(b0, a0, a1, a2) || point_in_tri_closed(b1, a0, a1, a2) ||
      point_in_tri_closed(b2, a0, a1, a2))
    return true;
  if (point_in_tri_closed(a0, b0, b1, b2) || point_in_tri_closed(a1, b0, b1, b2) ||
      point_in_tri_closed(a2, b0, b1, b2))
    return true;
  const Point* ea[4] = {&a0, &a1, &a2, &a0};
  const Point* eb[4] = {&b0, &b1, &b2, &b0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (segments_touch_closed(*ea[i], *ea[i + 1], *eb[j], *eb[j + 1])) return true;
  return false;
}

struct TriBox {
  double minx = 0.0, miny = 0.0, maxx = 0.0, maxy = 0.0;
};

inline TriBox tri_box(const DelaunayTriangulation& dt, int t) {
  const Point& a = dt.sites[dt.triangles[t][0]];
  const Point& b = dt.sites[dt.triangles[t][1]];
  const Point& c = dt.sites[dt.triangles[t][2]];
  return {std::min({a.x, b.x, c.x}), std::min({a.y, b.y, c.y}),
          std::max({a.x, b.x, c.x}), std::max({a.y, b.y, c.y})};
}

// Uniform grid over one slice's exterior triangles, keyed by bounding box;
// cell size is the median box diagonal.
struct TriGrid {
  double minx = 0.0, miny = 0.0, cell = 1.0;
  int nx = 0, ny = 0;
  std::vector<std::vector<int>> bins;

  TriGrid(const DelaunayTriangulation& dt, const std::vector<int>& tris) {
    if (tris.empty()) return;
    std::vector<double> diag;
    diag.reserve(tris.size());
    double maxx = -std::numeric_limits<double>::infinity();
    double maxy = maxx;
    minx = std::numeric_limits<double>::infinity();
    miny = minx;
    for (int t : tris) {
      const TriBox b = tri_box(dt, t);
      minx = std::min(minx, b.minx);
      miny = std::min(miny, b.miny);
      maxx = std::max(maxx, b.maxx);
      maxy = std::max(maxy, b.maxy);
      diag.push_back(std::hypot(b.maxx - b.minx, b.maxy - b.miny));
    }
    std::nth_element(diag.begin(), diag.begin() + diag.size() / 2, diag.end());
    cell = std::max(diag[diag.size() / 2], 1e-9);
    nx = static_cast<int>((maxx - minx) / cell) + 1;
    ny = static_cast<int>((maxy - miny) / cell) + 1;
    bins.assign(static_cast<std::size_t>(nx) * ny, {});
    for (int t : tris) {
      const TriBox b = tri_box(dt, t);
      for (int iy = iy_of(b.miny); iy <= iy_of(b.maxy); ++iy)
        for (int ix = ix_of(b.minx); ix <= ix_of(b.maxx); ++ix)
          bins[static_cast<std::size_t>(iy) * nx + ix].push_back(t);
    }
  }

  int ix_of(double x) const {
    return std::clamp(static_cast<int>((x - minx) / cell), 0, nx - 1);
  }
  int iy_of(double y) const {
    return std::clamp(static_cast<int>((y - miny) / cell), 0, ny - 1);
  }
};

// Everything about one adjacent slice pair that does not depend on the alpha
// level: which exterior triangles touch across the pair, and which triangles
// stick out of the other slice's hull (reaching the shared unbounded region).
// Exterior sets only shrink as alpha grows, so these lists stay supersets.
struct PairAdjacency {
  std::size_t a = 0, b = 0;                     // slice indices
  std::vector<std::pair<int, int>> touching;    // (triangle in a, triangle in b)
  std::vector<int> a_outside_b;                 // triangles of a reaching b's hull complement
  std::vector<int> b_outside_a;
};

inline std::vector<int> exterior_triangles(const SliceApprox& s) {
  std::vector<int> out;
  if (s.degenerate) return out;
  for (int t = 0; t < static_cast<int>(s.dt.triangles.size()); ++t)
    if (!s.alpha.tri_member[t]) out.push_back(t);
  return out;
}

// Triangles with a vertex strictly outside the other hull overlap the other
// slice's unbounded region.  A vertex merely on that hull is covered by the
// triangle-touching test against the other slice's own triangles.
inline std::vector<int> outside_hull_triangles(const SliceApprox& from,
                                               const std::vector<int>& tris,
                                               const SliceApprox& other) {
  std::vector<int> out;
  for (int t : tris) {
    bool outside = false;
    for (int k = 0; k < 3 && !outside; ++k)
      if (strictly_outside_hull(other.dt, from.dt.sites[from.dt.triangles[t][k]]))
        outside = true;
    if (outside) out.push_back(t);
  }
  return out;
}

inline PairAdjacency build_pair_adjacency(const std::vector<SliceApprox>& slices,
                                          std::size_t a, std::size_t b) {
  PairAdjacency adj;
  adj.a = a;
  adj.b = b;
  const SliceApprox& sa = slices[a];
  const SliceApprox& sb = slices[b];
  if (sa.degenerate || sb.degenerate) return adj;  // handled generously downstream
  const std::vector<int> ta = exterior_triangles(sa);
  const std::vector<int> tb = exterior_triangles(sb);
  adj.a_outside_b = outside_hull_triangles(sa, ta, sb);
  adj.b_outside_a = outside_hull_triangles(sb, tb, sa);
  if (ta.empty() || tb.empty()) return adj;
  const TriGrid grid(sb.dt, tb);
  std::vector<int> seen(sb.dt.triangles.size(), -1);
  for (int t : ta) {
    const TriBox box = tri_box(sa.dt, t);
    const Point& a0 = sa.dt.sites[sa.dt.triangles[t][0]];
    const Point& a1 = sa.dt.sites[sa.dt.triangles[t][1]];
    const Point& a2 = sa.dt.sites[sa.dt.triangles[t][2]];
    for (int iy = grid.iy_of(box.miny - kTouchTol); iy <= grid.iy_of(box.maxy + kTouchTol); ++iy)
      for (int ix = grid.ix_of(box.minx - kTouchTol); ix <= grid.ix_of(box.maxx + kTouchTol); ++ix)
        for (int u : grid.bins[static_cast<std::size_t>(iy) * grid.nx + ix]) {
          if (seen[u] == t) continue;
          seen[u] = t;
          const TriBox bu = tri_box(sb.dt, u);
          if (bu.minx > box.maxx + kTouchTol || box.minx > bu.maxx + kTouchTol ||
              bu.miny > box.maxy + kTouchTol || box.miny > bu.maxy + kTouchTol)
            continue;
          if (triangles_touch(a0, a1, a2, sb.dt.sites[sb.dt.triangles[u][0]],
                              sb.dt.sites[sb.dt.triangles[u][1]],
                              sb.dt.sites[sb.dt.triangles[u][2]]))
            adj.touching.emplace_back(t, u);
        }
  }
  std::sort(adj.touching.begin(), adj.touching.end());
  return adj;
}

// Adjacent slice pairs (i, i+1 mod s) without duplicates.
inline std::vector<std::pair<std::size_t, std::size_t>> adjacent_pairs(std::size_t s) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (s < 2) return out;
  for (std::size_t i = 0; i + 1 < s; ++i) out.emplace_back(i, i + 1);
  if (s > 2) out.emplace_back(s - 1, 0);
  return out;
}

inline std::vector<PairAdjacency> build_adjacency(const std::vector<SliceApprox>& slices) {
  std::vector<PairAdjacency> out;
  for (const auto& [a, b] : adjacent_pairs(slices.size()))
    out.push_back(build_pair_adjacency(slices, a, b));
  return out;
}

}  // namespace detail

struct ConnectivityGraph {
  std::vector<Vertex> vertices;            // grouped by slice, components ascending
  std::vector<std::size_t> slice_offset;   // index of (slice i, component 0); size s+1
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // vertex-id pairs, sorted
  std::vector<std::size_t> root;           // flattened union-find root per vertex
  std::vector<char> escapes;               // root's class contains an infinite vertex

  std::size_t vertex_id(std::size_t slice, int component) const {
    return slice_offset[slice] + static_cast<std::size_t>(component);
  }
  std::size_t vertex_id(const Vertex& v) const { return vertex_id(v.slice, v.component); }
};

namespace detail {

// Assemble the graph from per-slice decompositions and the level-independent
// pair adjacency.  The decompositions may be the base ones stored in the
// slices or rebuilt at a higher alpha (triangulations never change).
inline ConnectivityGraph assemble_graph(const std::vector<SliceApprox>& slices,
                                        const std::vector<const ExteriorDecomposition*>& decomp,
                                        const std::vector<PairAdjacency>& adjacency) {
  const std::size_t s = slices.size();
  ConnectivityGraph g;
  g.slice_offset.assign(s + 1, 0);
  for (std::size_t i = 0; i < s; ++i) {
    g.slice_offset[i + 1] = g.slice_offset[i] + decomp[i]->component_triangles.size();
    for (int c = 0; c < static_cast<int>(decomp[i]->component_triangles.size()); ++c)
      g.vertices.push_back({i, c});
  }
  const std::size_t total = g.slice_offset[s];
  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  auto link = [&](std::size_t va, std::size_t vb) {
    edges.emplace_back(std::min(va, vb), std::max(va, vb));
    const std::size_t ra = find(va), rb = find(vb);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  };
  for (const PairAdjacency& adj : adjacency) {
    const std::size_t a = adj.a, b = adj.b;
    link(g.vertex_id(a, 0), g.vertex_id(b, 0));
    if (slices[a].degenerate || slices[b].degenerate) {
      // A slice with no triangulation has connected free space: every
      // component of the neighbor may reach it.
      for (std::size_t v = g.slice_offset[a]; v < g.slice_offset[a + 1]; ++v)
        link(v, g.vertex_id(b, 0));
      for (std::size_t v = g.slice_offset[b]; v < g.slice_offset[b + 1]; ++v)
        link(g.vertex_id(a, 0), v);
      continue;
    }
    for (const auto& [ta, tb] : adj.touching) {
      const int ca = decomp[a]->comp[ta], cb = decomp[b]->comp[tb];
      if (ca < 0 || cb < 0) continue;  // member at this level
      link(g.vertex_id(a, ca), g.vertex_id(b, cb));
    }
    for (int t : adj.a_outside_b) {
      const int c = decomp[a]->comp[t];
      if (c >= 0) link(g.vertex_id(a, c), g.vertex_id(b, 0));
    }
    for (int t : adj.b_outside_a) {
      const int c = decomp[b]->comp[t];
      if (c >= 0) link(g.vertex_id(a, 0), g.vertex_id(b, c));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  g.root.resize(total);
  for (std::size_t v = 0; v < total; ++v) g.root[v] = find(v);
  std::vector<char> root_escapes(total, 0);
  for (std::size_t i = 0; i < s; ++i) root_escapes[g.root[g.vertex_id(i, 0)]] = 1;
  g.escapes.resize(total);
  for (std::size_t v = 0; v < total; ++v) g.escapes[v] = root_escapes[g.root[v]];
  return g;
}

inline std::vector<const ExteriorDecomposition*> base_decompositions(
    const std::vector<SliceApprox>& slices) {
  std::vector<const ExteriorDecomposition*> d;
  d.reserve(slices.size());
  for (const SliceApprox& s : slices) d.push_back(&s.decomposition);
  return d;
}

}  // namespace detail

inline ConnectivityGraph build_graph(const std::vector<SliceApprox>& slices) {
  if (slices.empty()) throw std::invalid_argument("build_graph: no slices");
  return detail::assemble_graph(slices, detail::base_decompositions(slices),
                                detail::build_adjacency(slices));
}

// Maps a configuration to its slice vertex; nullopt means the configuration
// is inside the approximated collision set (a sound collision claim).
inline std::optional<Vertex> locate(const Configuration& c,
                                    const std::vector<SliceApprox>& slices) {
  const std::size_t s = slices.size();
  std::size_t i = static_cast<std::size_t>(c.theta * static_cast<double>(s) / (2.0 * kPi));
  if (i >= s) i = s - 1;
  const SliceApprox& sl = slices[i];
  const Point p{c.x, c.y};
  if (!sl.collision.empty() && signed_distance(p, sl.collision) < 0.0) return std::nullopt;
  if (sl.degenerate) return Vertex{i, 0};
  const int t = find_triangle(sl.dt, p);
  if (t < 0) return Vertex{i, 0};
  if (sl.alpha.tri_member[t]) return std::nullopt;  // member simplices lie in the union
  return Vertex{i, sl.decomposition.comp[t]};
}

inline Verdict query_path(const Configuration& c1, const Configuration& c2,
                          const ConnectivityGraph& g,
                          const std::vector<SliceApprox>& slices) {
  const std::optional<Vertex> v1 = locate(c1, slices);
  const std::optional<Vertex> v2 = locate(c2, slices);
  if (!v1 || !v2) return Verdict::InCollision;
  if (g.root[g.vertex_id(*v1)] != g.root[g.vertex_id(*v2)])
    return Verdict::ProvenDisconnected;
  return Verdict::PossiblyConnected;
}

inline Verdict query_caged(const Configuration& c, const ConnectivityGraph& g,
                           const std::vector<SliceApprox>& slices) {
  const std::optional<Vertex> v = locate(c, slices);
  if (!v) return Verdict::InCollision;
  return g.escapes[g.vertex_id(*v)] ? Verdict::NotProvenCaged : Verdict::ProvenCaged;
}

}  // namespace cagemap
