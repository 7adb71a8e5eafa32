#include "ambush/scag.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <tuple>

#include "ambush/error.hpp"
#include "ambush/rng.hpp"

namespace ambush::scag {
namespace {

using geom::kEps;

bool inside_outer(Point p, const geom::Polygon& outer) {
  return geom::point_in_polygon(p, outer) || geom::boundary_distance(p, outer) <= kEps;
}

Point closest_on_outer(Point p, const geom::Polygon& outer) {
  Point best = outer[0];
  double best_d = std::numeric_limits<double>::infinity();
  for (const geom::Segment& e : geom::polygon_edges(outer)) {
    const Point c = geom::closest_point_on_segment(p, e);
    const double d = geom::distance(p, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

class SiteFilter {
 public:
  SiteFilter(const PolygonalDomain& domain, double R)
      : outer_(domain.outer),
        terminals_{poly::source_segment(domain), poly::sink_segment(domain)},
        R_(R) {}

  bool allowed(Point p) const {
    return inside_outer(p, outer_) &&
           geom::point_segment_distance(p, terminals_[0]) > R_ &&
           geom::point_segment_distance(p, terminals_[1]) > R_;
  }

  // Moves p into the allowed region with a few projection steps; nullopt if
  // that does not settle.
  std::optional<Point> repair(Point p) const {
    for (int step = 0; step < 4; ++step) {
      if (allowed(p)) return p;
      if (!inside_outer(p, outer_)) {
        p = closest_on_outer(p, outer_);
        continue;
      }
      for (const geom::Segment& t : terminals_) {
        const Point c = geom::closest_point_on_segment(p, t);
        const double d = geom::distance(p, c);
        if (d > R_) continue;
        if (d == 0.0) return std::nullopt;
        p = c + (p - c) * (R_ * (1.0 + 1e-6) / d);
        break;
      }
    }
    return allowed(p) ? std::optional<Point>(p) : std::nullopt;
  }

 private:
  geom::Polygon outer_;
  geom::Segment terminals_[2];
  double R_;
};

// Dedupe key at 1e-9 resolution.
std::pair<long long, long long> key_of(Point p) {
  return {std::llround(p.x * 1e9), std::llround(p.y * 1e9)};
}

}  // namespace

AmbushSiteSet cover_sites(const PolygonalDomain& domain, double R,
                          double density_factor, std::uint64_t seed) {
  poly::validate(domain);
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw Error(ErrorKind::kInvalidReach, "reach radius must be positive", "R");
  }
  if (!(density_factor >= 1.0) || !std::isfinite(density_factor)) {
    throw Error(ErrorKind::kInvalidReach, "density factor must be at least 1",
                "density_factor");
  }
  const double rho = R / density_factor;
  const double pitch = std::sqrt(3.0) * rho;
  const double row = 1.5 * rho;
  const sample::FreeSpace fs(domain);
  Rng rng(seed);
  const double ox = rng.uniform(0.0, pitch);
  const double oy = rng.uniform(0.0, 2.0 * row);

  const SiteFilter filter(domain, R);
  AmbushSiteSet set;
  set.R = R;
  std::set<std::pair<long long, long long>> seen;
  const double x0 = fs.min_x() - 2.0 * pitch + ox;
  const double y0 = fs.min_y() - 2.0 * row + oy;
  for (int j = 0;; ++j) {
    const double y = y0 + j * row;
    if (y > fs.max_y() + 2.0 * row) break;
    const double shift = (j % 2) ? 0.5 * pitch : 0.0;
    for (int i = 0;; ++i) {
      const double x = x0 + shift + i * pitch;
      if (x > fs.max_x() + 2.0 * pitch) break;
      const Point lattice{x, y};
      if (!inside_outer(lattice, domain.outer) &&
          geom::boundary_distance(lattice, domain.outer) > rho) {
        continue;
      }
      const std::optional<Point> site = filter.repair(lattice);
      if (!site || !seen.insert(key_of(*site)).second) continue;
      set.sites.push_back(*site);
    }
  }
  if (set.sites.empty()) {
    throw Error(ErrorKind::kNoSites, "terminal exclusion zones cover the whole domain", "R");
  }
  set.alpha.assign(set.sites.size(), 1.0);
  return set;
}

void add_sites(AmbushSiteSet& set, const PolygonalDomain& domain,
               const std::vector<Point>& extra) {
  const SiteFilter filter(domain, set.R);
  std::set<std::pair<long long, long long>> seen;
  for (const Point& p : set.sites) seen.insert(key_of(p));
  for (const Point& p : extra) {
    if (!filter.allowed(p) || !seen.insert(key_of(p)).second) continue;
    set.sites.push_back(p);
    set.alpha.push_back(1.0);
  }
}

std::vector<std::size_t> entering_edges(const SampledGraph& graph, Point site, double R) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const netflow::Edge& edge = graph.edges[e];
    if (!in_reach(graph.points[edge.from], site, R) &&
        in_reach(graph.points[edge.to], site, R)) {
      out.push_back(e);
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> entering_sets_naive(const SampledGraph& graph,
                                                          const AmbushSiteSet& sites) {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(sites.sites.size());
  for (const Point& site : sites.sites) out.push_back(entering_edges(graph, site, sites.R));
  return out;
}

std::vector<std::vector<std::size_t>> entering_sets(const SampledGraph& graph,
                                                    const AmbushSiteSet& sites,
                                                    bool parallel) {
  const std::size_t n = graph.points.size();
  const double R = sites.R;
  std::vector<std::vector<std::size_t>> out(sites.sites.size());
  if (n == 0) return out;

  std::vector<std::vector<std::size_t>> in_edges(n);
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    in_edges[graph.edges[e].to].push_back(e);
  }
  double min_x = graph.points[0].x, min_y = graph.points[0].y;
  double max_x = min_x, max_y = min_y;
  for (const Point& p : graph.points) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  const double cell = R;
  const int cx = static_cast<int>((max_x - min_x) / cell) + 1;
  const int cy = static_cast<int>((max_y - min_y) / cell) + 1;
  std::vector<std::vector<int>> bucket(static_cast<std::size_t>(cx) * cy);
  for (std::size_t v = 0; v < n; ++v) {
    const int i = std::min(static_cast<int>((graph.points[v].x - min_x) / cell), cx - 1);
    const int j = std::min(static_cast<int>((graph.points[v].y - min_y) / cell), cy - 1);
    bucket[static_cast<std::size_t>(j) * cx + i].push_back(static_cast<int>(v));
  }

  const int num_sites = static_cast<int>(sites.sites.size());
  auto one_site = [&](int k) {
    const Point site = sites.sites[k];
    const int i0 = static_cast<int>(std::floor((site.x - min_x) / cell)) - 1;
    const int j0 = static_cast<int>(std::floor((site.y - min_y) / cell)) - 1;
    std::vector<int> inside;
    for (int j = std::max(j0, 0); j <= std::min(j0 + 2, cy - 1); ++j) {
      for (int i = std::max(i0, 0); i <= std::min(i0 + 2, cx - 1); ++i) {
        for (int v : bucket[static_cast<std::size_t>(j) * cx + i]) {
          if (in_reach(graph.points[v], site, R)) inside.push_back(v);
        }
      }
    }
    std::vector<std::size_t>& result = out[k];
    for (int v : inside) {
      for (std::size_t e : in_edges[v]) {
        if (!in_reach(graph.points[graph.edges[e].from], site, R)) result.push_back(e);
      }
    }
    std::sort(result.begin(), result.end());
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (int k = 0; k < num_sites; ++k) one_site(k);
  } else {
    for (int k = 0; k < num_sites; ++k) one_site(k);
  }
  return out;
}

ScagInstance make_instance(SampledGraph graph, AmbushSiteSet sites, bool parallel) {
  if (!(sites.R > 0.0)) {
    throw Error(ErrorKind::kInvalidReach, "reach radius must be positive", "R");
  }
  if (sites.alpha.size() != sites.sites.size()) {
    throw Error(ErrorKind::kParse, "alpha must list one reward per site", "alpha");
  }
  ScagInstance instance{std::move(graph), std::move(sites), {}};
  instance.entering = entering_sets(instance.graph, instance.sites, parallel);
  return instance;
}

game::ZoneGame zone_game(const ScagInstance& instance) {
  const SampledGraph& g = instance.graph;
  std::vector<int> ids(g.points.size());
  for (std::size_t v = 0; v < ids.size(); ++v) ids[v] = static_cast<int>(v);
  game::SuperTerminals st =
      game::attach_super_terminals(ids, g.edges, g.source_set, g.sink_set);

  game::ZoneGame zg{std::move(st.network), {}};
  const std::size_t first_virtual = g.edges.size();
  for (std::size_t k = 0; k < instance.sites.sites.size(); ++k) {
    game::Zone zone;
    zone.id = static_cast<int>(k);
    zone.alpha = instance.sites.alpha[k];
    zone.entering = instance.entering[k];
    for (std::size_t i = 0; i < g.source_set.size(); ++i) {
      if (in_reach(g.points[g.source_set[i]], instance.sites.sites[k], instance.sites.R)) {
        zone.entering.push_back(first_virtual + i);
      }
    }
    zg.zones.push_back(std::move(zone));
  }
  return zg;
}

ScagSolution solve_scag(const ScagInstance& instance, const game::SolveOptions& options) {
  const game::ZoneGame zg = zone_game(instance);
  ScagSolution out;
  out.full = game::solve_game(zg, options);
  out.p.assign(out.full.p.begin(), out.full.p.begin() + instance.graph.edges.size());
  out.q = out.full.q;
  out.value = out.full.value;
  return out;
}

std::vector<ConvergencePoint> convergence_run(const PolygonalDomain& domain, double R,
                                              const AmbushSiteSet& sites,
                                              const ConvergenceOptions& options) {
  poly::validate(domain);
  if (options.schedule.empty()) {
    throw Error(ErrorKind::kParse, "empty schedule", "schedule");
  }
  for (std::size_t i = 0; i < options.schedule.size(); ++i) {
    if (options.schedule[i] < 1 || (i > 0 && options.schedule[i] <= options.schedule[i - 1])) {
      throw Error(ErrorKind::kParse, "schedule must be positive and increasing", "schedule");
    }
  }
  const double reference = poly::cag_value(domain, R);
  const bool randomized = options.builder != sample::Builder::kGrid;
  std::vector<std::uint64_t> seeds = options.seeds;
  if (seeds.empty()) seeds.push_back(0);
  if (!randomized) seeds.resize(1);
  const double eta = options.eta > 0.0 ? options.eta : sample::default_eta(domain);

  // One full RRG per seed; the schedule points are its prefixes.
  std::vector<SampledGraph> rrg(seeds.size());
  const int num_seeds = static_cast<int>(seeds.size());
  // Exceptions may not cross an OpenMP region; park them per slot.
  std::vector<std::exception_ptr> failure(seeds.size() * options.schedule.size());
  if (options.builder == sample::Builder::kRrg) {
#pragma omp parallel for schedule(dynamic, 1) if (options.parallel)
    for (int s = 0; s < num_seeds; ++s) {
      try {
        rrg[s] = sample::rrg_build(domain, options.schedule.back(), eta, seeds[s]);
      } catch (...) {
        failure[s] = std::current_exception();
      }
    }
    for (const std::exception_ptr& f : failure) {
      if (f) std::rethrow_exception(f);
    }
  }

  const int per_seed = static_cast<int>(options.schedule.size());
  const int tasks = num_seeds * per_seed;
  std::vector<ConvergencePoint> out(tasks);
#pragma omp parallel for schedule(dynamic, 1) if (options.parallel)
  for (int task = 0; task < tasks; ++task) {
    const int s = task / per_seed;
    const int n = options.schedule[task % per_seed];
    ConvergencePoint& point = out[task];
    point.n = n;
    point.seed = seeds[s];
    point.cag_value = reference;
    const auto start = std::chrono::steady_clock::now();
    try {
      SampledGraph graph;
      switch (options.builder) {
        case sample::Builder::kGrid:
          graph = sample::grid_sample(domain, sample::grid_spacing_for(domain, n));
          break;
        case sample::Builder::kRrg:
          graph = sample::rrg_prefix(rrg[s], n);
          break;
        case sample::Builder::kPrmStar:
          graph = sample::prm_star_build(domain, n, seeds[s], false);
          break;
      }
      point.vertices = graph.points.size();
      point.edges = graph.edges.size();
      const ScagInstance instance = make_instance(std::move(graph), sites, false);
      point.value = solve_scag(instance, options.solve).value;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kInfeasibleGame && e.kind() != ErrorKind::kEmptyTerminalSet &&
          e.kind() != ErrorKind::kNoPath) {
        failure[task] = std::current_exception();
      }
      point.value.reset();
    } catch (...) {
      failure[task] = std::current_exception();
    }
    point.runtime_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  }
  for (const std::exception_ptr& f : failure) {
    if (f) std::rethrow_exception(f);
  }
  return out;
}

}  // namespace ambush::scag
