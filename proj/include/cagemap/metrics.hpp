#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cagemap/connectivity.hpp"
#include "cagemap/geom.hpp"
#include "cagemap/slicing.hpp"
#include "cagemap/triangulation.hpp"

namespace cagemap {

// SE(2) volume of one graph component: triangle areas times interval widths.
// Components reaching the unbounded region are flagged instead of summed.
struct ComponentVolume {
  std::size_t root = 0;  // smallest vertex id of the component
  bool infinite = false;
  double volume = 0.0;   // length^2 * radians; 0 when infinite
};

struct VolumeReport {
  std::vector<ComponentVolume> components;  // ascending root id
};

inline VolumeReport component_volumes(const ConnectivityGraph& g,
                                      const std::vector<SliceApprox>& slices) {
  const std::size_t total = g.vertices.size();
  std::vector<double> vol(total, 0.0);
  for (std::size_t v = 0; v < total; ++v) {
    const Vertex& vx = g.vertices[v];
    const SliceApprox& sl = slices[vx.slice];
    const double width = sl.phi_end - sl.phi;
    vol[g.root[v]] +=
        sl.decomposition.component_area[static_cast<std::size_t>(vx.component)] * width;
  }
  VolumeReport report;
  for (std::size_t v = 0; v < total; ++v) {
    if (g.root[v] != v) continue;
    ComponentVolume cv;
    cv.root = v;
    cv.infinite = g.escapes[v] != 0;
    cv.volume = cv.infinite ? 0.0 : vol[v];
    report.components.push_back(cv);
  }
  return report;
}

inline ComponentVolume component_volume(const ConnectivityGraph& g,
                                        const std::vector<SliceApprox>& slices,
                                        const Vertex& v) {
  const std::size_t root = g.root[g.vertex_id(v)];
  for (const ComponentVolume& cv : component_volumes(g, slices).components)
    if (cv.root == root) return cv;
  throw std::logic_error("component_volume: vertex root missing from report");
}

// Verdict on delta-connectivity: rebuilds the pipeline with every core disk
// inflated by delta (collision radius R + r + delta - epsilon).  An endpoint
// swallowed by the inflated collision set cannot start a delta-clearance path,
// which proves disconnection.
inline Verdict delta_connected(const Configuration& c1, const Configuration& c2,
                               double delta, const DiskUnion& obs,
                               const EpsilonCore& core, const So2Partition& partition) {
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("delta_connected: delta must be nonnegative");
  EpsilonCore inflated = core;
  for (Disk& d : inflated.disks.disks) d.radius += delta;
  inflated.disks.common_radius += delta;
  std::vector<SliceApprox> slices;
  slices.reserve(partition.size());
  for (std::size_t i = 0; i < partition.size(); ++i)
    slices.push_back(build_slice(obs, inflated, i, partition));
  const ConnectivityGraph g = build_graph(slices);
  if (delta == 0.0) return query_path(c1, c2, g, slices);
  const std::optional<Vertex> v1 = locate(c1, slices);
  const std::optional<Vertex> v2 = locate(c2, slices);
  if (!v1 || !v2) return Verdict::ProvenDisconnected;
  return g.root[g.vertex_id(*v1)] == g.root[g.vertex_id(*v2)]
             ? Verdict::PossiblyConnected
             : Verdict::ProvenDisconnected;
}

struct NoFiniteWidth : std::runtime_error {
  explicit NoFiniteWidth(const std::string& what) : std::runtime_error(what) {}
};

struct PassageReport {
  Vertex v1, v2;           // base-level vertices of the query pair
  double delta_star = 0.0; // smallest delta at which the pair disconnects
  double alpha = 0.0;      // squared collision radius at that level
};

// Sweeps the nested alpha complexes of all slices (triangulations fixed, only
// memberships change) for the smallest delta = sqrt(alpha) - (R + r - eps)
// at which the pair disconnects.  Candidate levels are the filtration values
// plus the levels at which an endpoint is swallowed; the verdict is monotone
// in alpha, so a binary search suffices.
inline PassageReport passage_width(const Configuration& c1, const Configuration& c2,
                                   const std::vector<SliceApprox>& slices,
                                   const ConnectivityGraph& base_graph) {
  if (query_path(c1, c2, base_graph, slices) != Verdict::PossiblyConnected)
    throw std::invalid_argument(
        "passage_width: pair must be possibly connected at delta 0");
  const double base_r = slices.empty() ? 0.0 : slices[0].collision.common_radius;
  const double base_alpha = base_r * base_r;
  const std::vector<detail::PairAdjacency> adjacency = detail::build_adjacency(slices);

  struct Endpoint {
    std::size_t slice = 0;
    int tri = -1;                 // containing triangle, fixed across levels
    double swallow_alpha = std::numeric_limits<double>::infinity();
  };
  auto make_endpoint = [&](const Configuration& c) {
    Endpoint e;
    const std::size_t s = slices.size();
    std::size_t i =
        static_cast<std::size_t>(c.theta * static_cast<double>(s) / (2.0 * kPi));
    if (i >= s) i = s - 1;
    e.slice = i;
    const Point p{c.x, c.y};
    const SliceApprox& sl = slices[i];
    if (!sl.collision.empty()) {
      double best = std::numeric_limits<double>::infinity();
      for (const Disk& d : sl.collision.disks)
        best = std::min(best, distance_sq(p, d.center));
      e.swallow_alpha = best;
    }
    if (!sl.degenerate) e.tri = find_triangle(sl.dt, p);
    return e;
  };
  const Endpoint e1 = make_endpoint(c1), e2 = make_endpoint(c2);

  std::vector<double> candidates;
  for (const SliceApprox& sl : slices) {
    if (sl.degenerate) continue;
    for (double v : sl.filtration.tri_value)
      if (v >= base_alpha) candidates.push_back(v);
    for (double v : sl.filtration.edge_value)
      if (v >= base_alpha) candidates.push_back(v);
  }
  for (const Endpoint& e : {e1, e2})
    if (std::isfinite(e.swallow_alpha) && e.swallow_alpha >= base_alpha)
      candidates.push_back(e.swallow_alpha);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  if (candidates.empty())
    throw NoFiniteWidth("passage_width: no level disconnects the pair");

  std::vector<ExteriorDecomposition> level(slices.size());
  auto disconnected_at = [&](double a) {
    // The level's collision set is closed (membership uses value <= alpha), so
    // swallowing is closed too.
    if (e1.swallow_alpha <= a || e2.swallow_alpha <= a) return true;
    std::vector<const ExteriorDecomposition*> decomp(slices.size());
    for (std::size_t i = 0; i < slices.size(); ++i) {
      if (slices[i].degenerate) {
        decomp[i] = &slices[i].decomposition;
      } else {
        level[i] = exterior_components(slices[i].dt,
                                       build_alpha(slices[i].filtration, a));
        decomp[i] = &level[i];
      }
    }
    const ConnectivityGraph g = detail::assemble_graph(slices, decomp, adjacency);
    auto vertex_of = [&](const Endpoint& e) {
      int comp = 0;
      if (e.tri >= 0) comp = decomp[e.slice]->comp[e.tri];
      return comp;  // -1 means member at this level: swallowed
    };
    const int comp1 = vertex_of(e1), comp2 = vertex_of(e2);
    if (comp1 < 0 || comp2 < 0) return true;
    return g.root[g.vertex_id(e1.slice, comp1)] != g.root[g.vertex_id(e2.slice, comp2)];
  };

  if (!disconnected_at(candidates.back()))
    throw NoFiniteWidth("passage_width: no level disconnects the pair");
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (disconnected_at(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  PassageReport report;
  report.v1 = *locate(c1, slices);
  report.v2 = *locate(c2, slices);
  report.alpha = candidates[lo];
  report.delta_star = std::sqrt(candidates[lo]) - base_r;
  return report;
}

}  // namespace cagemap
