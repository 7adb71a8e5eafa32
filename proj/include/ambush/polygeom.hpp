#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ambush/geometry.hpp"

namespace ambush::poly {

using geom::Clearance;
using geom::Point;
using geom::Polygon;
using geom::Segment;

// Outer boundary (counterclockwise) with polygonal holes. The source and
// sink are edges of the outer boundary, given as index pairs of consecutive
// outer vertices.
struct PolygonalDomain {
  Polygon outer;
  std::vector<Polygon> holes;
  std::array<int, 2> source_edge{0, 1};
  std::array<int, 2> sink_edge{2, 3};
};

// Throws kInvalidDomain naming the failed condition.
void validate(const PolygonalDomain& domain);

// Outer vertex index where the edge starts when walking counterclockwise.
std::size_t edge_start(const PolygonalDomain& domain, const std::array<int, 2>& edge);

Segment source_segment(const PolygonalDomain& domain);
Segment sink_segment(const PolygonalDomain& domain);

// Boundary from the sink to the source walking counterclockwise (top) and
// clockwise (bottom), as open polylines.
std::vector<Point> top_chain(const PolygonalDomain& domain);
std::vector<Point> bottom_chain(const PolygonalDomain& domain);

// Area of the outer polygon minus the hole areas.
double free_area(const PolygonalDomain& domain);

// Boundary piece of a domain: a closed polygon or an open chain.
struct Boundary {
  std::vector<Point> points;
  bool closed = true;
};

Clearance polygon_distance(const Boundary& a, const Boundary& b);

inline constexpr int kTop = 0;
inline constexpr int kBottom = 1;

// Complete graph on Top (node 0), Bottom (node 1) and hole i (node 2 + i).
struct CriticalGraph {
  int num_nodes = 0;
  std::vector<Clearance> clearance;  // row-major num_nodes x num_nodes

  const Clearance& edge(int i, int j) const { return clearance[i * num_nodes + j]; }
  double length(int i, int j) const { return edge(i, j).length; }
};

CriticalGraph critical_graph(const PolygonalDomain& domain);

// ceil(length / 2R); 1 for a zero-length segment. Ratios within 1e-9 of an
// integer count as that integer. Throws kInvalidReach when R <= 0.
int segment_ambush_count(double length, double R);
int ambush_cardinality(const std::vector<double>& lengths, double R);

struct AmbushMinCut {
  std::vector<int> nodes;  // critical graph path, Top first, Bottom last
  std::vector<Segment> segments;
  std::vector<int> per_segment_count;
  int capacity = 0;
  double R = 0.0;
};

// Cheapest T-B path in the critical graph weighted by segment_ambush_count.
AmbushMinCut ambush_min_cut(const PolygonalDomain& domain, double R);
AmbushMinCut ambush_min_cut(const CriticalGraph& graph, double R);

double cag_value(const PolygonalDomain& domain, double R);

struct AmbushPoint {
  Point point;
  double probability = 0.0;
  std::size_t segment = 0;
};

// n_i points on segment i at parameters (2k-1)/(2 n_i), each with
// probability 1/capacity.
std::vector<AmbushPoint> red_placement(const AmbushMinCut& cut);

}  // namespace ambush::poly
