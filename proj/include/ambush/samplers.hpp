#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ambush/geometry.hpp"
#include "ambush/netflow.hpp"
#include "ambush/polygeom.hpp"

namespace ambush::sample {

using geom::Point;
using poly::PolygonalDomain;

enum class Builder { kGrid, kRrg, kPrmStar };

const char* builder_name(Builder b);
Builder parse_builder(const std::string& name);

// Vertex ids are indices into `points`. Every connection appears as two
// directed edges.
struct SampledGraph {
  std::vector<Point> points;
  std::vector<netflow::Edge> edges;
  std::vector<int> source_set;
  std::vector<int> sink_set;
  Builder builder = Builder::kGrid;
  std::uint64_t seed = 0;
  std::map<std::string, double> params;
  // Iteration that created each vertex (RRG only; 0 for the initial vertex).
  std::vector<int> created_at;
};

// Closed outer polygon minus open holes, with kEps slack on every boundary.
class FreeSpace {
 public:
  explicit FreeSpace(const PolygonalDomain& domain);

  bool contains(Point p) const;
  // The whole segment lies in free space.
  bool segment_free(Point a, Point b) const;

  double min_x() const { return min_x_; }
  double min_y() const { return min_y_; }
  double max_x() const { return max_x_; }
  double max_y() const { return max_y_; }
  double area() const { return area_; }

 private:
  geom::Polygon outer_;
  std::vector<geom::Polygon> holes_;
  std::vector<geom::Segment> walls_;
  double min_x_, min_y_, max_x_, max_y_;
  double area_;
};

bool collision_free(Point a, Point b, const PolygonalDomain& domain);

// gamma = 2.0001 (1 + 1/d)^(1/d) (mu / zeta_d)^(1/d) with d = 2.
double gamma_constant(const PolygonalDomain& domain);

// 5% of the bounding-box diagonal.
double default_eta(const PolygonalDomain& domain);

// Each vertex joins the terminal set of the nearer terminal edge when that
// edge is within `snap`; ties go to the source. Builders other than the grid
// leave empty sets for the caller to diagnose.
void assign_terminals(SampledGraph& graph, const PolygonalDomain& domain, double snap);

// Lattice anchored at the bounding-box minimum. Throws kEmptyTerminalSet.
SampledGraph grid_sample(const PolygonalDomain& domain, double spacing);

// Spacing giving roughly n lattice points over the bounding box.
double grid_spacing_for(const PolygonalDomain& domain, int n);

// Terminal snap distance is eta for every prefix, so the graphs of a run
// are nested.
SampledGraph rrg_build(const PolygonalDomain& domain, int n, double eta,
                       std::uint64_t seed);

// Vertices created within the first n iterations and the edges among them.
SampledGraph rrg_prefix(const SampledGraph& full, int n);

double prm_star_radius(const PolygonalDomain& domain, int n);

// Neighbor search runs in parallel when `parallel` is set; the result is
// identical either way.
SampledGraph prm_star_build(const PolygonalDomain& domain, int n, std::uint64_t seed,
                            bool parallel = true);

// Throws kInvariantViolation if a point or an edge leaves free space.
void check_graph(const SampledGraph& graph, const PolygonalDomain& domain);

}  // namespace ambush::sample
