#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ambush/polygeom.hpp"

namespace ambush::envgen {

struct RectangleSpec {
  double width = 10.0;
  double height = 8.0;
  int holes = 3;
  double min_radius = 0.8;
  double max_radius = 1.6;
  int min_sides = 3;
  int max_sides = 7;
  // Minimum clearance between holes and from the outer boundary.
  double gap = 0.6;
  // Holes stay this far from the source (left) and sink (right) sides.
  double terminal_margin = 2.0;
};

// Rectangle [0,w]x[0,h] with the source on the left side, the sink on the
// right side and random convex holes. Deterministic in seed.
poly::PolygonalDomain random_rectangle(const RectangleSpec& spec, std::uint64_t seed);

// Empty corridor of the given width (distance between Top and Bottom) and
// length (distance between source and sink).
poly::PolygonalDomain corridor(double length, double width);

// Critical-graph edges (i < j) lying on some cheapest T-B path at radius R.
std::vector<std::pair<int, int>> tight_edges(const poly::CriticalGraph& graph, double R);

// Scans R upward over [lo, hi] in `steps` increments for the first value at
// which every tight edge ratio |s|/2R has its fractional part inside
// [lo_frac, hi_frac].
std::optional<double> radius_in_band(const poly::CriticalGraph& graph, double lo, double hi,
                                     double lo_frac, double hi_frac, int steps = 2000);

}  // namespace ambush::envgen
