#pragma once

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <string>

#include "cagemap/slicing.hpp"

namespace cagemap {

namespace detail {

inline void svg_append(std::string& out, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  out += buf;
}

inline constexpr const char* kComponentPalette[8] = {
    "#e07a5f", "#3d9970", "#5e81ac", "#d4a017",
    "#9c6bb3", "#2aa198", "#c94f6d", "#7f8c4f"};

}  // namespace detail

// Renders one slice as layered SVG text.  Layers carry stable ids: the
// collision disks, the member simplices of the alpha complex, and one group
// per bounded exterior component (color-coded); the infinite component is
// left unfilled.  Coordinates are written with fixed precision, so equal
// slices render to byte-identical documents.
inline std::string render_slice_svg(const SliceApprox& slice) {
  using detail::svg_append;
  double minx = -1.0, maxx = 1.0, miny = -1.0, maxy = 1.0;
  if (!slice.collision.empty()) {
    minx = miny = 1e300;
    maxx = maxy = -1e300;
    for (const Disk& d : slice.collision.disks) {
      minx = std::min(minx, d.center.x - d.radius);
      maxx = std::max(maxx, d.center.x + d.radius);
      miny = std::min(miny, d.center.y - d.radius);
      maxy = std::max(maxy, d.center.y + d.radius);
    }
  }
  const double pad = 0.05 * std::max(maxx - minx, maxy - miny) + 1e-6;
  minx -= pad;
  maxx += pad;
  miny -= pad;
  maxy += pad;
  const double w = maxx - minx;
  const double h = maxy - miny;
  const double stroke = 0.004 * std::max(w, h);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  // Scene y grows upward; flip the whole drawing instead of every coordinate.
  svg_append(out,
             "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.6f %.6f %.6f %.6f\" "
             "width=\"800\" height=\"%.6f\">\n",
             minx, -maxy, w, h, 800.0 * h / w);
  svg_append(out, "<g transform=\"scale(1,-1)\" stroke-width=\"%.6f\">\n", stroke);

  out += "<g id=\"disks\" fill=\"#d0d7de\" fill-opacity=\"0.6\" stroke=\"#57606a\">\n";
  for (const Disk& d : slice.collision.disks)
    svg_append(out, "<circle cx=\"%.6f\" cy=\"%.6f\" r=\"%.6f\"/>\n", d.center.x, d.center.y,
               d.radius);
  out += "</g>\n";

  out += "<g id=\"triangles\" fill=\"#8c959f\" fill-opacity=\"0.8\">\n";
  if (!slice.degenerate)
    for (std::size_t t = 0; t < slice.dt.triangles.size(); ++t)
      if (slice.alpha.tri_member[t]) {
        const auto& tri = slice.dt.triangles[t];
        const Point& a = slice.dt.sites[tri[0]];
        const Point& b = slice.dt.sites[tri[1]];
        const Point& c = slice.dt.sites[tri[2]];
        svg_append(out, "<path d=\"M %.6f %.6f L %.6f %.6f L %.6f %.6f Z\"/>\n", a.x, a.y, b.x,
                   b.y, c.x, c.y);
      }
  out += "</g>\n";

  out += "<g id=\"components\">\n";
  if (!slice.degenerate)
    for (int k = 1; k <= slice.decomposition.bounded_count; ++k) {
      svg_append(out, "<g id=\"component-%d\" fill=\"%s\" fill-opacity=\"0.7\">\n", k,
                 detail::kComponentPalette[(k - 1) % 8]);
      for (int t : slice.decomposition.component_triangles[static_cast<std::size_t>(k)]) {
        const auto& tri = slice.dt.triangles[t];
        const Point& a = slice.dt.sites[tri[0]];
        const Point& b = slice.dt.sites[tri[1]];
        const Point& c = slice.dt.sites[tri[2]];
        svg_append(out, "<path d=\"M %.6f %.6f L %.6f %.6f L %.6f %.6f Z\"/>\n", a.x, a.y, b.x,
                   b.y, c.x, c.y);
      }
      out += "</g>\n";
    }
  out += "</g>\n";

  out += "<g id=\"edges\" stroke=\"#24292f\">\n";
  if (!slice.degenerate)
    for (std::size_t e = 0; e < slice.dt.edges.size(); ++e)
      if (slice.alpha.edge_member[e]) {
        const Point& a = slice.dt.sites[slice.dt.edges[e].a];
        const Point& b = slice.dt.sites[slice.dt.edges[e].b];
        svg_append(out, "<line x1=\"%.6f\" y1=\"%.6f\" x2=\"%.6f\" y2=\"%.6f\"/>\n", a.x, a.y,
                   b.x, b.y);
      }
  out += "</g>\n";

  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace cagemap
