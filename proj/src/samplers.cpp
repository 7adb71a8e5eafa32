#include "ambush/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "ambush/error.hpp"
#include "ambush/rng.hpp"

namespace ambush::sample {
namespace {

using geom::kEps;

Point sample_free(Rng& rng, const FreeSpace& fs) {
  for (;;) {
    const double x = rng.uniform(fs.min_x(), fs.max_x());
    const double y = rng.uniform(fs.min_y(), fs.max_y());
    if (fs.contains({x, y})) return {x, y};
  }
}

// Undirected pairs to the canonical sorted list of directed edges.
std::vector<netflow::Edge> both_directions(const std::vector<std::pair<int, int>>& pairs) {
  std::vector<netflow::Edge> edges;
  edges.reserve(2 * pairs.size());
  for (const auto& [u, v] : pairs) {
    edges.push_back({u, v});
    edges.push_back({v, u});
  }
  std::sort(edges.begin(), edges.end(), [](const netflow::Edge& a, const netflow::Edge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  return edges;
}

}  // namespace

const char* builder_name(Builder b) {
  switch (b) {
    case Builder::kGrid: return "grid";
    case Builder::kRrg: return "rrg";
    case Builder::kPrmStar: return "prmstar";
  }
  return "?";
}

Builder parse_builder(const std::string& name) {
  if (name == "grid") return Builder::kGrid;
  if (name == "rrg") return Builder::kRrg;
  if (name == "prmstar") return Builder::kPrmStar;
  throw Error(ErrorKind::kParse, "unknown builder '" + name + "'", "builder");
}

FreeSpace::FreeSpace(const PolygonalDomain& domain)
    : outer_(domain.outer), holes_(domain.holes), area_(poly::free_area(domain)) {
  min_x_ = min_y_ = std::numeric_limits<double>::infinity();
  max_x_ = max_y_ = -std::numeric_limits<double>::infinity();
  for (const Point& p : outer_) {
    min_x_ = std::min(min_x_, p.x);
    min_y_ = std::min(min_y_, p.y);
    max_x_ = std::max(max_x_, p.x);
    max_y_ = std::max(max_y_, p.y);
  }
  walls_ = geom::polygon_edges(outer_);
  for (const geom::Polygon& h : holes_) {
    for (const geom::Segment& e : geom::polygon_edges(h)) walls_.push_back(e);
  }
}

bool FreeSpace::contains(Point p) const {
  if (p.x < min_x_ - kEps || p.x > max_x_ + kEps || p.y < min_y_ - kEps ||
      p.y > max_y_ + kEps) {
    return false;
  }
  if (!geom::point_in_polygon(p, outer_) && geom::boundary_distance(p, outer_) > kEps) {
    return false;
  }
  for (const geom::Polygon& h : holes_) {
    if (geom::point_in_polygon(p, h) && geom::boundary_distance(p, h) > kEps) {
      return false;
    }
  }
  return true;
}

bool FreeSpace::segment_free(Point a, Point b) const {
  if (!contains(a) || !contains(b)) return false;
  const geom::Segment s{a, b};
  const double lo_x = std::min(a.x, b.x) - kEps, hi_x = std::max(a.x, b.x) + kEps;
  const double lo_y = std::min(a.y, b.y) - kEps, hi_y = std::max(a.y, b.y) + kEps;
  std::vector<double> cuts{0.0, 1.0};
  for (const geom::Segment& w : walls_) {
    if (std::max(w.a.x, w.b.x) < lo_x || std::min(w.a.x, w.b.x) > hi_x ||
        std::max(w.a.y, w.b.y) < lo_y || std::min(w.a.y, w.b.y) > hi_y) {
      continue;
    }
    for (double u : geom::intersection_params(s, w)) cuts.push_back(u);
  }
  if (cuts.size() == 2) return contains(geom::lerp(a, b, 0.5));
  std::sort(cuts.begin(), cuts.end());
  // Between consecutive boundary crossings the segment is entirely in or out.
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] <= 1e-12) continue;
    if (!contains(geom::lerp(a, b, 0.5 * (cuts[i] + cuts[i + 1])))) return false;
  }
  return true;
}

bool collision_free(Point a, Point b, const PolygonalDomain& domain) {
  return FreeSpace(domain).segment_free(a, b);
}

double gamma_constant(const PolygonalDomain& domain) {
  constexpr double d = 2.0;
  return 2.0001 * std::pow(1.0 + 1.0 / d, 1.0 / d) *
         std::pow(poly::free_area(domain) / std::numbers::pi, 1.0 / d);
}

double default_eta(const PolygonalDomain& domain) {
  const FreeSpace fs(domain);
  return 0.05 * std::hypot(fs.max_x() - fs.min_x(), fs.max_y() - fs.min_y());
}

void assign_terminals(SampledGraph& graph, const PolygonalDomain& domain, double snap) {
  const geom::Segment s = poly::source_segment(domain);
  const geom::Segment t = poly::sink_segment(domain);
  const double limit = snap * (1.0 + 1e-9) + kEps;
  graph.source_set.clear();
  graph.sink_set.clear();
  for (std::size_t v = 0; v < graph.points.size(); ++v) {
    const double ds = geom::point_segment_distance(graph.points[v], s);
    const double dt = geom::point_segment_distance(graph.points[v], t);
    if (std::min(ds, dt) > limit) continue;
    (ds <= dt ? graph.source_set : graph.sink_set).push_back(static_cast<int>(v));
  }
}

SampledGraph grid_sample(const PolygonalDomain& domain, double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw Error(ErrorKind::kInvalidDomain, "grid spacing must be positive", "spacing");
  }
  poly::validate(domain);
  const FreeSpace fs(domain);
  const int nx = static_cast<int>(std::floor((fs.max_x() - fs.min_x()) / spacing + 1e-9)) + 1;
  const int ny = static_cast<int>(std::floor((fs.max_y() - fs.min_y()) / spacing + 1e-9)) + 1;
  SampledGraph g;
  g.builder = Builder::kGrid;
  g.params = {{"spacing", spacing}};
  std::vector<int> id(static_cast<std::size_t>(nx) * ny, -1);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Point p{fs.min_x() + i * spacing, fs.min_y() + j * spacing};
      if (!fs.contains(p)) continue;
      id[static_cast<std::size_t>(j) * nx + i] = static_cast<int>(g.points.size());
      g.points.push_back(p);
    }
  }
  // Half of the 8-neighborhood; the other half is the reverse direction.
  constexpr int kOffsets[4][2] = {{1, 0}, {-1, 1}, {0, 1}, {1, 1}};
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int u = id[static_cast<std::size_t>(j) * nx + i];
      if (u < 0) continue;
      for (const auto& off : kOffsets) {
        const int a = i + off[0], b = j + off[1];
        if (a < 0 || a >= nx || b >= ny) continue;
        const int v = id[static_cast<std::size_t>(b) * nx + a];
        if (v < 0 || !fs.segment_free(g.points[u], g.points[v])) continue;
        pairs.emplace_back(u, v);
      }
    }
  }
  g.edges = both_directions(pairs);
  assign_terminals(g, domain, spacing);
  if (g.source_set.empty() || g.sink_set.empty()) {
    throw Error(ErrorKind::kEmptyTerminalSet,
                "no grid point near the " +
                    std::string(g.source_set.empty() ? "source" : "sink") + " edge");
  }
  return g;
}

double grid_spacing_for(const PolygonalDomain& domain, int n) {
  const FreeSpace fs(domain);
  return std::sqrt((fs.max_x() - fs.min_x()) * (fs.max_y() - fs.min_y()) /
                   static_cast<double>(std::max(n, 1)));
}

SampledGraph rrg_build(const PolygonalDomain& domain, int n, double eta,
                       std::uint64_t seed) {
  if (!(eta > 0.0)) {
    throw Error(ErrorKind::kInvalidDomain, "eta must be positive", "eta");
  }
  poly::validate(domain);
  const FreeSpace fs(domain);
  const double gamma = gamma_constant(domain);
  Rng rng(seed);

  SampledGraph g;
  g.builder = Builder::kRrg;
  g.seed = seed;
  g.params = {{"n", n}, {"eta", eta}, {"gamma", gamma}};
  const geom::Segment src = poly::source_segment(domain);
  g.points.push_back(geom::lerp(src.a, src.b, 0.5));
  g.created_at.push_back(0);

  std::vector<std::pair<int, int>> pairs;
  for (int iter = 1; iter <= n; ++iter) {
    const Point x_rand = sample_free(rng, fs);
    std::size_t nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < g.points.size(); ++v) {
      const double d = geom::distance(g.points[v], x_rand);
      if (d < best) {
        best = d;
        nearest = v;
      }
    }
    const Point x_new = best <= eta
                            ? x_rand
                            : g.points[nearest] + (x_rand - g.points[nearest]) * (eta / best);
    if (!fs.segment_free(g.points[nearest], x_new)) continue;

    const double card = static_cast<double>(g.points.size());
    const double radius = std::min(gamma * std::sqrt(std::log(card) / card), eta);
    const int id = static_cast<int>(g.points.size());
    pairs.emplace_back(static_cast<int>(nearest), id);
    for (std::size_t v = 0; v < g.points.size(); ++v) {
      if (v == nearest || geom::distance(g.points[v], x_new) > radius) continue;
      if (fs.segment_free(g.points[v], x_new)) pairs.emplace_back(static_cast<int>(v), id);
    }
    g.points.push_back(x_new);
    g.created_at.push_back(iter);
  }
  g.edges = both_directions(pairs);
  assign_terminals(g, domain, eta);
  return g;
}

SampledGraph rrg_prefix(const SampledGraph& full, int n) {
  SampledGraph g;
  g.builder = full.builder;
  g.seed = full.seed;
  g.params = full.params;
  g.params["n"] = n;
  std::size_t count = 0;
  while (count < full.points.size() && full.created_at[count] <= n) ++count;
  g.points.assign(full.points.begin(), full.points.begin() + count);
  g.created_at.assign(full.created_at.begin(), full.created_at.begin() + count);
  const int limit = static_cast<int>(count);
  for (const netflow::Edge& e : full.edges) {
    if (e.from < limit && e.to < limit) g.edges.push_back(e);
  }
  for (int v : full.source_set) {
    if (v < limit) g.source_set.push_back(v);
  }
  for (int v : full.sink_set) {
    if (v < limit) g.sink_set.push_back(v);
  }
  return g;
}

double prm_star_radius(const PolygonalDomain& domain, int n) {
  const double m = static_cast<double>(std::max(n, 1));
  return gamma_constant(domain) * std::sqrt(std::log(m) / m);
}

SampledGraph prm_star_build(const PolygonalDomain& domain, int n, std::uint64_t seed,
                            bool parallel) {
  poly::validate(domain);
  const FreeSpace fs(domain);
  Rng rng(seed);
  SampledGraph g;
  g.builder = Builder::kPrmStar;
  g.seed = seed;
  const double radius = prm_star_radius(domain, n);
  g.params = {{"n", n}, {"radius", radius}, {"gamma", gamma_constant(domain)}};
  for (int i = 0; i < n; ++i) g.points.push_back(sample_free(rng, fs));

  // Bucket grid for the Near queries; cells are at least radius wide and at
  // most 1024 per side.
  const double span = std::max(fs.max_x() - fs.min_x(), fs.max_y() - fs.min_y());
  const double cell = std::max(radius, span / 1024.0);
  const int cx = static_cast<int>((fs.max_x() - fs.min_x()) / cell) + 1;
  const int cy = static_cast<int>((fs.max_y() - fs.min_y()) / cell) + 1;
  auto cell_of = [&](Point p) {
    const int i = std::clamp(static_cast<int>((p.x - fs.min_x()) / cell), 0, cx - 1);
    const int j = std::clamp(static_cast<int>((p.y - fs.min_y()) / cell), 0, cy - 1);
    return std::pair<int, int>{i, j};
  };
  std::vector<std::vector<int>> bucket(static_cast<std::size_t>(cx) * cy);
  for (int v = 0; v < n; ++v) {
    const auto [i, j] = cell_of(g.points[v]);
    bucket[static_cast<std::size_t>(j) * cx + i].push_back(v);
  }

  std::vector<std::vector<int>> higher(n);
  auto connect = [&](int v) {
    const auto [i, j] = cell_of(g.points[v]);
    for (int b = std::max(j - 1, 0); b <= std::min(j + 1, cy - 1); ++b) {
      for (int a = std::max(i - 1, 0); a <= std::min(i + 1, cx - 1); ++a) {
        for (int u : bucket[static_cast<std::size_t>(b) * cx + a]) {
          if (u <= v || geom::distance(g.points[u], g.points[v]) > radius) continue;
          if (fs.segment_free(g.points[v], g.points[u])) higher[v].push_back(u);
        }
      }
    }
    std::sort(higher[v].begin(), higher[v].end());
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (int v = 0; v < n; ++v) connect(v);
  } else {
    for (int v = 0; v < n; ++v) connect(v);
  }

  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v < n; ++v) {
    for (int u : higher[v]) pairs.emplace_back(v, u);
  }
  g.edges = both_directions(pairs);
  assign_terminals(g, domain, radius);
  return g;
}

void check_graph(const SampledGraph& graph, const PolygonalDomain& domain) {
  const FreeSpace fs(domain);
  for (std::size_t v = 0; v < graph.points.size(); ++v) {
    if (!fs.contains(graph.points[v])) {
      throw Error(ErrorKind::kInvariantViolation,
                  "vertex " + std::to_string(v) + " is outside free space");
    }
  }
  for (const netflow::Edge& e : graph.edges) {
    if (!fs.segment_free(graph.points[e.from], graph.points[e.to])) {
      throw Error(ErrorKind::kInvariantViolation,
                  "edge " + std::to_string(e.from) + "-" + std::to_string(e.to) +
                      " crosses an obstacle");
    }
  }
}

}  // namespace ambush::sample
