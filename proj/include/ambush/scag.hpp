#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ambush/discrete_game.hpp"
#include "ambush/polygeom.hpp"
#include "ambush/samplers.hpp"

namespace ambush::scag {

using geom::Point;
using poly::PolygonalDomain;
using sample::SampledGraph;

// Site ids are indices.
struct AmbushSiteSet {
  std::vector<Point> sites;
  std::vector<double> alpha;
  double R = 0.0;
};

// Hexagonal lattice with covering radius R / density_factor, shifted by a
// seed-dependent offset. Lattice points just outside the outer boundary are
// pulled onto it and points within R of a terminal edge are pushed out to
// distance R. Every free point farther than R from both terminal edges lies
// within R of a site. Throws kNoSites when nothing survives.
AmbushSiteSet cover_sites(const PolygonalDomain& domain, double R,
                          double density_factor, std::uint64_t seed);

// Appends sites not already present (within 1e-9), skipping any within R of
// a terminal edge.
void add_sites(AmbushSiteSet& set, const PolygonalDomain& domain,
               const std::vector<Point>& extra);

// Closed reach disk.
inline bool in_reach(Point p, Point site, double R) {
  return geom::distance(p, site) <= R;
}

// Indices of graph.edges running from outside the disk to inside it.
std::vector<std::size_t> entering_edges(const SampledGraph& graph, Point site, double R);

// All sites at once. The bucketed version runs sites in parallel; the naive
// version scans every edge for every site. Both return sorted index lists.
std::vector<std::vector<std::size_t>> entering_sets(const SampledGraph& graph,
                                                    const AmbushSiteSet& sites,
                                                    bool parallel = true);
std::vector<std::vector<std::size_t>> entering_sets_naive(const SampledGraph& graph,
                                                          const AmbushSiteSet& sites);

struct ScagInstance {
  SampledGraph graph;
  AmbushSiteSet sites;
  std::vector<std::vector<std::size_t>> entering;
};

ScagInstance make_instance(SampledGraph graph, AmbushSiteSet sites, bool parallel = true);

// Zone game on the graph plus a virtual super-source and super-sink. The
// super-source lies outside every disk, so its edge into a source vertex
// inside disk k enters zone k.
game::ZoneGame zone_game(const ScagInstance& instance);

struct ScagSolution {
  std::vector<double> p;  // per graph edge
  std::vector<double> q;  // per site
  double value = 0.0;
  game::GameSolution full;  // including the virtual terminal edges
};

// Path column generation with Dantzig pricing.
inline game::SolveOptions default_solve_options() {
  game::SolveOptions options;
  options.method = game::Method::kColumnGeneration;
  options.lp.rule = lp::PivotRule::kDantzig;
  return options;
}

// Throws kInfeasibleGame when no sink vertex is reachable from a source
// vertex.
ScagSolution solve_scag(const ScagInstance& instance,
                        const game::SolveOptions& options = default_solve_options());

struct ConvergenceOptions {
  sample::Builder builder = sample::Builder::kGrid;
  std::vector<int> schedule;          // grid: target vertex counts; rrg/prm*: n
  std::vector<std::uint64_t> seeds{0};
  double eta = 0.0;                   // RRG steer distance, 0 for the default
  bool parallel = true;
  game::SolveOptions solve = default_solve_options();
};

struct ConvergencePoint {
  int n = 0;
  std::uint64_t seed = 0;
  std::optional<double> value;  // empty when the sampled game has no s-t path
  double cag_value = 0.0;
  double runtime_ms = 0.0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
};

// Rows ordered by seed, then by schedule position. The site set is shared
// by every point.
std::vector<ConvergencePoint> convergence_run(const PolygonalDomain& domain, double R,
                                              const AmbushSiteSet& sites,
                                              const ConvergenceOptions& options);

}  // namespace ambush::scag
