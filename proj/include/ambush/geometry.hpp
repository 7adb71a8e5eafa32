#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace ambush::geom {

// Length tolerance for every predicate below.
inline constexpr double kEps = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  Point operator+(Point o) const { return {x + o.x, y + o.y}; }
  Point operator-(Point o) const { return {x - o.x, y - o.y}; }
  Point operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Point&) const = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline Point lerp(Point a, Point b, double t) { return a + (b - a) * t; }

struct Segment {
  Point a;
  Point b;
  double length() const { return distance(a, b); }
};

using Polygon = std::vector<Point>;

// Closest pair between two sets; `length` is |to - from|.
struct Clearance {
  double length = 0.0;
  Point from;
  Point to;
};

Point closest_point_on_segment(Point p, const Segment& s);
double point_segment_distance(Point p, const Segment& s);

// Zero with a common point as witness when the segments touch.
Clearance segment_distance(const Segment& s, const Segment& t);

bool segments_intersect(const Segment& s, const Segment& t);

// Parameters u in [0,1] along s where s meets t (both ends of a collinear
// overlap), sorted.
std::vector<double> intersection_params(const Segment& s, const Segment& t);

double signed_area(const Polygon& poly);

// Every edge of a closed polygon, edge i joining vertex i to vertex i+1.
std::vector<Segment> polygon_edges(const Polygon& poly);

// Edges of an open polyline.
std::vector<Segment> chain_edges(const std::vector<Point>& chain);

double boundary_distance(Point p, const Polygon& poly);

// Even-odd rule; points within kEps of the boundary count as on it and the
// result for them is unspecified, so callers test boundary_distance first.
bool point_in_polygon(Point p, const Polygon& poly);

// No two non-adjacent edges meet, adjacent edges meet only at their shared
// vertex, and no edge is degenerate.
bool is_simple(const Polygon& poly);

// Minimum over all edge pairs.
Clearance edge_set_distance(const std::vector<Segment>& a,
                            const std::vector<Segment>& b);

}  // namespace ambush::geom
