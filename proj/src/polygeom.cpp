#include "ambush/polygeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ambush/error.hpp"

namespace ambush::poly {
namespace {

using geom::kEps;

[[noreturn]] void invalid(const std::string& what, const std::string& field) {
  throw Error(ErrorKind::kInvalidDomain, what, field);
}

void check_finite(const Polygon& poly, const std::string& field) {
  for (const Point& p : poly) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      invalid("non-finite coordinate", field);
    }
  }
}

std::vector<geom::Segment> boundary_edges(const Boundary& b) {
  return b.closed ? geom::polygon_edges(b.points) : geom::chain_edges(b.points);
}

// Walk counterclockwise from outer vertex `from` to vertex `to`, inclusive.
std::vector<Point> walk(const Polygon& outer, std::size_t from, std::size_t to) {
  std::vector<Point> out;
  for (std::size_t i = from;; i = (i + 1) % outer.size()) {
    out.push_back(outer[i]);
    if (i == to) break;
  }
  return out;
}

}  // namespace

std::size_t edge_start(const PolygonalDomain& domain, const std::array<int, 2>& edge) {
  const int n = static_cast<int>(domain.outer.size());
  const int i = edge[0];
  const int j = edge[1];
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw Error(ErrorKind::kInvalidDomain, "terminal edge index out of range");
  }
  if ((i + 1) % n == j) return static_cast<std::size_t>(i);
  if ((j + 1) % n == i) return static_cast<std::size_t>(j);
  throw Error(ErrorKind::kInvalidDomain, "terminal edge joins non-consecutive vertices");
}

void validate(const PolygonalDomain& domain) {
  const Polygon& outer = domain.outer;
  check_finite(outer, "outer");
  if (outer.size() < 3 || !geom::is_simple(outer)) {
    invalid("outer boundary is not a simple polygon", "outer");
  }
  if (geom::signed_area(outer) <= 0.0) {
    invalid("outer boundary must be counterclockwise", "outer");
  }
  std::size_t s = 0;
  std::size_t t = 0;
  try {
    s = edge_start(domain, domain.source_edge);
  } catch (const Error& e) {
    invalid(e.what(), "source_edge");
  }
  try {
    t = edge_start(domain, domain.sink_edge);
  } catch (const Error& e) {
    invalid(e.what(), "sink_edge");
  }
  const std::size_t n = outer.size();
  if (s == t || (s + 1) % n == t || (t + 1) % n == s) {
    invalid("source and sink edges must be disjoint", "sink_edge");
  }

  const std::vector<geom::Segment> outer_edges = geom::polygon_edges(outer);
  for (std::size_t h = 0; h < domain.holes.size(); ++h) {
    const Polygon& hole = domain.holes[h];
    const std::string field = "holes[" + std::to_string(h) + "]";
    check_finite(hole, field);
    if (hole.size() < 3 || !geom::is_simple(hole)) {
      invalid("hole is not a simple polygon", field);
    }
    for (const Point& p : hole) {
      if (!geom::point_in_polygon(p, outer) || geom::boundary_distance(p, outer) <= kEps) {
        invalid("hole is not strictly inside the outer boundary", field);
      }
    }
    for (const geom::Segment& e : geom::polygon_edges(hole)) {
      for (const geom::Segment& o : outer_edges) {
        if (geom::segments_intersect(e, o)) {
          invalid("hole touches the outer boundary", field);
        }
      }
    }
    for (std::size_t g = 0; g < h; ++g) {
      const Polygon& other = domain.holes[g];
      const geom::Clearance c = geom::edge_set_distance(
          geom::polygon_edges(hole), geom::polygon_edges(other));
      if (c.length <= kEps || geom::point_in_polygon(hole[0], other) ||
          geom::point_in_polygon(other[0], hole)) {
        invalid("holes overlap", field);
      }
    }
  }
}

Segment source_segment(const PolygonalDomain& domain) {
  const std::size_t i = edge_start(domain, domain.source_edge);
  return {domain.outer[i], domain.outer[(i + 1) % domain.outer.size()]};
}

Segment sink_segment(const PolygonalDomain& domain) {
  const std::size_t i = edge_start(domain, domain.sink_edge);
  return {domain.outer[i], domain.outer[(i + 1) % domain.outer.size()]};
}

std::vector<Point> top_chain(const PolygonalDomain& domain) {
  const std::size_t n = domain.outer.size();
  const std::size_t t = edge_start(domain, domain.sink_edge);
  const std::size_t s = edge_start(domain, domain.source_edge);
  return walk(domain.outer, (t + 1) % n, s);
}

std::vector<Point> bottom_chain(const PolygonalDomain& domain) {
  const std::size_t n = domain.outer.size();
  const std::size_t t = edge_start(domain, domain.sink_edge);
  const std::size_t s = edge_start(domain, domain.source_edge);
  return walk(domain.outer, (s + 1) % n, t);
}

double free_area(const PolygonalDomain& domain) {
  double area = std::abs(geom::signed_area(domain.outer));
  for (const Polygon& h : domain.holes) area -= std::abs(geom::signed_area(h));
  return area;
}

Clearance polygon_distance(const Boundary& a, const Boundary& b) {
  return geom::edge_set_distance(boundary_edges(a), boundary_edges(b));
}

CriticalGraph critical_graph(const PolygonalDomain& domain) {
  validate(domain);
  std::vector<Boundary> nodes;
  nodes.push_back({top_chain(domain), false});
  nodes.push_back({bottom_chain(domain), false});
  for (const Polygon& h : domain.holes) nodes.push_back({h, true});

  CriticalGraph g;
  g.num_nodes = static_cast<int>(nodes.size());
  g.clearance.resize(nodes.size() * nodes.size());
  for (int i = 0; i < g.num_nodes; ++i) {
    for (int j = i + 1; j < g.num_nodes; ++j) {
      const Clearance c = polygon_distance(nodes[i], nodes[j]);
      g.clearance[i * g.num_nodes + j] = c;
      g.clearance[j * g.num_nodes + i] = {c.length, c.to, c.from};
    }
  }
  return g;
}

int segment_ambush_count(double length, double R) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw Error(ErrorKind::kInvalidReach, "reach radius must be positive", "R");
  }
  const double ratio = length / (2.0 * R);
  const int count = static_cast<int>(std::ceil(ratio - 1e-9));
  return std::max(count, 1);
}

int ambush_cardinality(const std::vector<double>& lengths, double R) {
  if (!(R > 0.0)) {
    throw Error(ErrorKind::kInvalidReach, "reach radius must be positive", "R");
  }
  int total = 0;
  for (double len : lengths) total += segment_ambush_count(len, R);
  return total;
}

AmbushMinCut ambush_min_cut(const CriticalGraph& graph, double R) {
  const int n = graph.num_nodes;
  std::vector<int> weight(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) weight[i * n + j] = segment_ambush_count(graph.length(i, j), R);
    }
  }
  // Dense Dijkstra; ties prefer fewer hops, then lower predecessor index.
  const int inf = std::numeric_limits<int>::max();
  std::vector<int> dist(n, inf), hops(n, inf), prev(n, -1);
  std::vector<bool> done(n, false);
  dist[kTop] = 0;
  hops[kTop] = 0;
  for (;;) {
    int u = -1;
    for (int v = 0; v < n; ++v) {
      if (done[v] || dist[v] == inf) continue;
      if (u < 0 || dist[v] < dist[u] || (dist[v] == dist[u] && hops[v] < hops[u])) u = v;
    }
    if (u < 0 || u == kBottom) break;
    done[u] = true;
    for (int v = 0; v < n; ++v) {
      if (done[v] || v == u) continue;
      const int d = dist[u] + weight[u * n + v];
      if (d < dist[v] || (d == dist[v] && hops[u] + 1 < hops[v])) {
        dist[v] = d;
        hops[v] = hops[u] + 1;
        prev[v] = u;
      }
    }
  }
  AmbushMinCut cut;
  cut.R = R;
  for (int v = kBottom; v != -1; v = prev[v]) cut.nodes.push_back(v);
  std::reverse(cut.nodes.begin(), cut.nodes.end());
  for (std::size_t i = 0; i + 1 < cut.nodes.size(); ++i) {
    const Clearance& c = graph.edge(cut.nodes[i], cut.nodes[i + 1]);
    cut.segments.push_back({c.from, c.to});
    cut.per_segment_count.push_back(weight[cut.nodes[i] * n + cut.nodes[i + 1]]);
    cut.capacity += cut.per_segment_count.back();
  }
  return cut;
}

AmbushMinCut ambush_min_cut(const PolygonalDomain& domain, double R) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw Error(ErrorKind::kInvalidReach, "reach radius must be positive", "R");
  }
  return ambush_min_cut(critical_graph(domain), R);
}

double cag_value(const PolygonalDomain& domain, double R) {
  return 1.0 / static_cast<double>(ambush_min_cut(domain, R).capacity);
}

std::vector<AmbushPoint> red_placement(const AmbushMinCut& cut) {
  std::vector<AmbushPoint> out;
  if (cut.capacity <= 0) return out;
  const double prob = 1.0 / static_cast<double>(cut.capacity);
  for (std::size_t i = 0; i < cut.segments.size(); ++i) {
    const int n = cut.per_segment_count[i];
    for (int k = 1; k <= n; ++k) {
      const double t = (2.0 * k - 1.0) / (2.0 * n);
      out.push_back({geom::lerp(cut.segments[i].a, cut.segments[i].b, t), prob, i});
    }
  }
  return out;
}

}  // namespace ambush::poly
