#include "ambush/envgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ambush/rng.hpp"

namespace ambush::envgen {
namespace {

using geom::Point;
using geom::Polygon;

Polygon random_convex(Rng& rng, Point center, double radius, int sides) {
  std::vector<double> angle(sides);
  for (double& a : angle) a = rng.uniform(0.0, 2.0 * std::numbers::pi);
  std::sort(angle.begin(), angle.end());
  Polygon poly;
  for (double a : angle) {
    poly.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  return poly;
}

// Dijkstra distances over the thresholded critical graph from `from`.
std::vector<int> distances(const poly::CriticalGraph& g, double R, int from) {
  const int n = g.num_nodes;
  const int inf = std::numeric_limits<int>::max();
  std::vector<int> dist(n, inf);
  std::vector<bool> done(n, false);
  dist[from] = 0;
  for (int round = 0; round < n; ++round) {
    int u = -1;
    for (int v = 0; v < n; ++v) {
      if (!done[v] && dist[v] != inf && (u < 0 || dist[v] < dist[u])) u = v;
    }
    if (u < 0) break;
    done[u] = true;
    for (int v = 0; v < n; ++v) {
      if (v == u || done[v]) continue;
      dist[v] = std::min(dist[v], dist[u] + poly::segment_ambush_count(g.length(u, v), R));
    }
  }
  return dist;
}

}  // namespace

poly::PolygonalDomain random_rectangle(const RectangleSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  poly::PolygonalDomain d;
  d.outer = {{0.0, 0.0}, {spec.width, 0.0}, {spec.width, spec.height}, {0.0, spec.height}};
  d.source_edge = {3, 0};
  d.sink_edge = {1, 2};
  const std::vector<geom::Segment> walls = geom::polygon_edges(d.outer);
  for (int attempt = 0; attempt < 10000 && static_cast<int>(d.holes.size()) < spec.holes;
       ++attempt) {
    const double r = rng.uniform(spec.min_radius, spec.max_radius);
    const int sides =
        spec.min_sides + static_cast<int>(rng.below(spec.max_sides - spec.min_sides + 1));
    const Point c{rng.uniform(spec.terminal_margin + r, spec.width - spec.terminal_margin - r),
                  rng.uniform(spec.gap + r, spec.height - spec.gap - r)};
    Polygon hole = random_convex(rng, c, r, sides);
    if (!geom::is_simple(hole) || std::abs(geom::signed_area(hole)) < 0.2 * r * r) continue;
    const std::vector<geom::Segment> edges = geom::polygon_edges(hole);
    bool ok = geom::edge_set_distance(edges, walls).length >= spec.gap;
    for (const Polygon& other : d.holes) {
      ok = ok && geom::edge_set_distance(edges, geom::polygon_edges(other)).length >= spec.gap;
    }
    if (ok) d.holes.push_back(std::move(hole));
  }
  return d;
}

poly::PolygonalDomain corridor(double length, double width) {
  poly::PolygonalDomain d;
  d.outer = {{0.0, 0.0}, {length, 0.0}, {length, width}, {0.0, width}};
  d.source_edge = {3, 0};
  d.sink_edge = {1, 2};
  return d;
}

std::vector<std::pair<int, int>> tight_edges(const poly::CriticalGraph& graph, double R) {
  const std::vector<int> from_top = distances(graph, R, poly::kTop);
  const std::vector<int> from_bottom = distances(graph, R, poly::kBottom);
  const int best = from_top[poly::kBottom];
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < graph.num_nodes; ++i) {
    for (int j = i + 1; j < graph.num_nodes; ++j) {
      const int w = poly::segment_ambush_count(graph.length(i, j), R);
      if (from_top[i] + w + from_bottom[j] == best || from_top[j] + w + from_bottom[i] == best) {
        out.emplace_back(i, j);
      }
    }
  }
  return out;
}

std::optional<double> radius_in_band(const poly::CriticalGraph& graph, double lo, double hi,
                                     double lo_frac, double hi_frac, int steps) {
  for (int s = 0; s <= steps; ++s) {
    const double R = lo + (hi - lo) * s / steps;
    bool ok = true;
    for (const auto& [i, j] : tight_edges(graph, R)) {
      const double ratio = graph.length(i, j) / (2.0 * R);
      const double frac = ratio - std::floor(ratio);
      ok = ok && frac >= lo_frac && frac <= hi_frac;
    }
    if (ok) return R;
  }
  return std::nullopt;
}

}  // namespace ambush::envgen
