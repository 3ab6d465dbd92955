#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cagemap/geom.hpp"
#include "cagemap/triangulation.hpp"

namespace cagemap {

struct EpsilonTooLarge : std::runtime_error {
  explicit EpsilonTooLarge(const std::string& what) : std::runtime_error(what) {}
};

// The object shrunk by epsilon: same offsets, radii reduced by epsilon.  If a
// path exists for the full object it exists for the core, so proving the core
// caged proves the object caged.
struct EpsilonCore {
  double epsilon = 0.0;
  DiskUnion disks;  // offsets from the reference, common radius r - epsilon
};

inline EpsilonCore epsilon_core(const RigidObject& obj, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon_core: epsilon must be positive");
  const double r = obj.body.common_radius;
  if (epsilon >= r)
    throw EpsilonTooLarge("epsilon_core: epsilon must be smaller than the object radius");
  std::vector<Disk> core;
  core.reserve(obj.body.size());
  for (const Disk& b : obj.body.disks) core.emplace_back(b.center, b.radius - epsilon);
  return {epsilon, DiskUnion(std::move(core))};
}

// Maximal displacement of any object point under a rotation by delta_phi.
inline double displacement_bound(double delta_phi, double diam) {
  return 2.0 * std::abs(std::sin(0.5 * delta_phi)) * diam;
}

// Equal-width partition of SO(2).  samples[i] is the left endpoint of
// interval U_i = [samples[i], samples[i] + delta_phi); the last interval wraps
// to samples[0] + 2*pi.
struct So2Partition {
  double delta_phi = 0.0;
  std::vector<double> samples;

  std::size_t size() const { return samples.size(); }
};

inline So2Partition partition_so2(const RigidObject& obj, double epsilon,
                                  double safety = 0.999) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("partition_so2: epsilon must be positive");
  if (!(safety > 0.0 && safety < 1.0))
    throw std::invalid_argument("partition_so2: safety must be in (0, 1)");
  const double diam = obj.diam;
  const double arg = safety * epsilon / (2.0 * diam);
  std::size_t s = 1;
  if (arg < 1.0) {
    // Rotating by the interval width must move points by less than epsilon.
    const double dphi_star = 2.0 * std::asin(arg);
    s = static_cast<std::size_t>(std::ceil(2.0 * kPi / dphi_star));
  }
  So2Partition part;
  part.delta_phi = 2.0 * kPi / static_cast<double>(s);
  part.samples.reserve(s);
  for (std::size_t i = 0; i < s; ++i)
    part.samples.push_back(static_cast<double>(i) * part.delta_phi);
  if (s > 1 && !(displacement_bound(part.delta_phi, diam) < epsilon))
    throw std::logic_error("partition_so2: displacement bound not below epsilon");
  return part;
}

// Collision disks of one slice: a placement (x, y) at orientation phi collides
// when the reference lands inside any disk of radius R + r_core around
// X_j - Rot_phi(GY_i).  One disk per (obstacle, core disk) pair, duplicates
// kept.
inline DiskUnion slice_collision_union(const DiskUnion& obs, const EpsilonCore& core,
                                       double phi) {
  const double radius = obs.common_radius + core.disks.common_radius;
  const double co = std::cos(phi), si = std::sin(phi);
  std::vector<Point> centers;
  centers.reserve(obs.size() * core.disks.size());
  for (const Disk& o : obs.disks)
    for (const Disk& c : core.disks.disks)
      centers.push_back({o.center.x - (co * c.center.x - si * c.center.y),
                         o.center.y - (si * c.center.x + co * c.center.y)});
  return DiskUnion(std::move(centers), radius);
}

// One orientation slice: merged collision union, its alpha complex at
// alpha = radius^2, and the exterior decomposition.  Fewer than 3 distinct
// centers (or all collinear) cannot enclose a bounded free region, so the
// degenerate path skips the triangulation and reports only the infinite
// component.
struct SliceApprox {
  std::size_t index = 0;
  double phi = 0.0;       // sample orientation, left end of the interval
  double phi_end = 0.0;   // right end (phi + delta_phi)
  DiskUnion collision;    // duplicate centers merged
  bool degenerate = false;
  DelaunayTriangulation dt;
  Filtration filtration;
  AlphaComplex alpha;
  ExteriorDecomposition decomposition;
};

inline SliceApprox build_slice(const DiskUnion& obs, const EpsilonCore& core,
                               std::size_t i, const So2Partition& partition) {
  if (i >= partition.size())
    throw std::out_of_range("build_slice: interval index out of range");
  SliceApprox slice;
  slice.index = i;
  slice.phi = partition.samples[i];
  slice.phi_end = partition.samples[i] + partition.delta_phi;
  const DiskUnion raw = slice_collision_union(obs, core, slice.phi);
  std::vector<Point> centers;
  centers.reserve(raw.size());
  for (const Disk& d : raw.disks) centers.push_back(d.center);
  centers = detail::dedupe_sites(centers);
  slice.collision = DiskUnion(centers, raw.common_radius);
  try {
    slice.dt = build_delaunay(centers);
  } catch (const DegenerateInput&) {
    slice.degenerate = true;
    slice.decomposition.bounded_count = 0;
    slice.decomposition.component_triangles.assign(1, {});
    slice.decomposition.component_area.assign(1, 0.0);
    return slice;
  }
  slice.filtration = build_filtration(slice.dt);
  const double r = slice.collision.common_radius;
  slice.alpha = build_alpha(slice.filtration, r * r);
  slice.decomposition = exterior_components(slice.dt, slice.alpha);
  return slice;
}

}  // namespace cagemap
