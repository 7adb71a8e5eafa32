#include "ambush/geometry.hpp"

#include <algorithm>
#include <limits>

namespace ambush::geom {
namespace {

int orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  const double scale = std::max({norm(b - a), norm(c - a), 1.0});
  if (v > kEps * scale) return 1;
  if (v < -kEps * scale) return -1;
  return 0;
}

bool on_segment(Point p, const Segment& s) {
  return point_segment_distance(p, s) <= kEps;
}

}  // namespace

Point closest_point_on_segment(Point p, const Segment& s) {
  const Point d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return s.a;
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return lerp(s.a, s.b, t);
}

double point_segment_distance(Point p, const Segment& s) {
  return distance(p, closest_point_on_segment(p, s));
}

bool segments_intersect(const Segment& s, const Segment& t) {
  const int o1 = orientation(s.a, s.b, t.a);
  const int o2 = orientation(s.a, s.b, t.b);
  const int o3 = orientation(t.a, t.b, s.a);
  const int o4 = orientation(t.a, t.b, s.b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_segment(t.a, s) || on_segment(t.b, s) || on_segment(s.a, t) ||
         on_segment(s.b, t);
}

Clearance segment_distance(const Segment& s, const Segment& t) {
  const Point r = s.b - s.a;
  const Point q = t.b - t.a;
  const double denom = cross(r, q);
  if (denom != 0.0) {
    const double u = cross(t.a - s.a, q) / denom;
    const double v = cross(t.a - s.a, r) / denom;
    if (u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0) {
      const Point x = lerp(s.a, s.b, u);
      return {0.0, x, x};
    }
  }
  Clearance best{std::numeric_limits<double>::infinity(), {}, {}};
  auto consider = [&](Point from, Point to) {
    const double d = distance(from, to);
    if (d < best.length) best = {d, from, to};
  };
  consider(s.a, closest_point_on_segment(s.a, t));
  consider(s.b, closest_point_on_segment(s.b, t));
  consider(closest_point_on_segment(t.a, s), t.a);
  consider(closest_point_on_segment(t.b, s), t.b);
  return best;
}

std::vector<double> intersection_params(const Segment& s, const Segment& t) {
  std::vector<double> out;
  const Point r = s.b - s.a;
  const Point q = t.b - t.a;
  const double rr = dot(r, r);
  if (rr == 0.0) return out;
  const double denom = cross(r, q);
  const double scale = std::sqrt(rr) * std::max(norm(q), kEps);
  if (std::abs(denom) > kEps * scale) {
    const double u = cross(t.a - s.a, q) / denom;
    const double v = cross(t.a - s.a, r) / denom;
    const double tol_u = kEps / std::sqrt(rr);
    const double tol_v = kEps / std::max(norm(q), kEps);
    if (u >= -tol_u && u <= 1.0 + tol_u && v >= -tol_v && v <= 1.0 + tol_v) {
      out.push_back(std::clamp(u, 0.0, 1.0));
    }
    return out;
  }
  // Parallel: only collinear overlaps matter.
  if (point_segment_distance(t.a, {s.a, s.b}) > kEps &&
      point_segment_distance(t.b, {s.a, s.b}) > kEps &&
      point_segment_distance(s.a, t) > kEps && point_segment_distance(s.b, t) > kEps) {
    return out;
  }
  for (Point p : {t.a, t.b}) {
    if (point_segment_distance(p, s) <= kEps) {
      out.push_back(std::clamp(dot(p - s.a, r) / rr, 0.0, 1.0));
    }
  }
  for (Point p : {s.a, s.b}) {
    if (point_segment_distance(p, t) <= kEps) {
      out.push_back(std::clamp(dot(p - s.a, r) / rr, 0.0, 1.0));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double signed_area(const Polygon& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    a += cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * a;
}

std::vector<Segment> polygon_edges(const Polygon& poly) {
  std::vector<Segment> edges;
  edges.reserve(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    edges.push_back({poly[i], poly[(i + 1) % poly.size()]});
  }
  return edges;
}

std::vector<Segment> chain_edges(const std::vector<Point>& chain) {
  std::vector<Segment> edges;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    edges.push_back({chain[i], chain[i + 1]});
  }
  if (chain.size() == 1) edges.push_back({chain[0], chain[0]});
  return edges;
}

double boundary_distance(Point p, const Polygon& poly) {
  double best = std::numeric_limits<double>::infinity();
  for (const Segment& e : polygon_edges(poly)) {
    best = std::min(best, point_segment_distance(p, e));
  }
  return best;
}

bool point_in_polygon(Point p, const Polygon& poly) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point a = poly[i];
    const Point b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

bool is_simple(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  const std::vector<Segment> edges = polygon_edges(poly);
  for (const Segment& e : edges) {
    if (e.length() <= kEps) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (!adjacent) {
        if (segments_intersect(edges[i], edges[j])) return false;
        continue;
      }
      // Adjacent edges may only share their common vertex: reject folds.
      const Point shared = j == i + 1 ? edges[i].b : edges[i].a;
      const Point pi = j == i + 1 ? edges[i].a : edges[i].b;
      const Point pj = j == i + 1 ? edges[j].b : edges[j].a;
      if (orientation(shared, pi, pj) == 0 && dot(pi - shared, pj - shared) > 0.0) {
        return false;
      }
    }
  }
  return std::abs(signed_area(poly)) > kEps;
}

Clearance edge_set_distance(const std::vector<Segment>& a,
                            const std::vector<Segment>& b) {
  Clearance best{std::numeric_limits<double>::infinity(), {}, {}};
  for (const Segment& s : a) {
    for (const Segment& t : b) {
      const Clearance c = segment_distance(s, t);
      if (c.length < best.length) best = c;
    }
  }
  return best;
}

}  // namespace ambush::geom
