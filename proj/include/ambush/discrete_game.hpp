#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "ambush/lp.hpp"
#include "ambush/netflow.hpp"

namespace ambush::game {

using netflow::VertexCapNetwork;

// One place RED may ambush. BLUE collects alpha for every traversal of an
// edge listed in `entering`. In the discrete game a zone is a vertex and its
// entering edges are the edges into it; in the sampled game a zone is a
// reach disk and its entering edges cross into it from outside.
struct Zone {
  int id = 0;
  double alpha = 0.0;
  std::vector<std::size_t> entering;  // indices into network.edges()
};

struct ZoneGame {
  VertexCapNetwork network;
  std::vector<Zone> zones;
};

// alpha: vertex id -> nonnegative reward; vertices missing from the map get 0.
using Rewards = std::map<int, double>;

// Discrete game: one zone per vertex, in network vertex order.
ZoneGame vertex_game(const VertexCapNetwork& net, const Rewards& alpha);

// alpha = 1 on every vertex except source and sink.
Rewards uniform_internal_rewards(const VertexCapNetwork& net);

struct GameSolution {
  std::vector<double> p;  // per edge
  std::vector<double> q;  // per zone
  double value = 0.0;
  lp::Certificate certificate;
  std::size_t lp_rows = 0;
  std::size_t lp_columns = 0;
};

enum class Method {
  kEdgeLp,             // the full edge-flow program
  kColumnGeneration,   // path-based master program priced by Dijkstra
};

struct SolveOptions {
  Method method = Method::kEdgeLp;
  lp::Options lp;
  double pricing_tolerance = 1e-10;
  std::size_t max_columns = 200000;
};

// Variables: one per edge, then z (last). One inequality row per zone with
// alpha > 0 and a nonempty entering set; equality rows for conservation at
// every non-terminal vertex, then unit net outflow at the source and unit
// net inflow at the sink. Throws kInfeasibleGame if the sink is unreachable.
lp::LinearProgram build_lp(const ZoneGame& game);

// Zone indices that own an inequality row of build_lp, in row order.
std::vector<std::size_t> lp_zone_rows(const ZoneGame& game);

GameSolution solve_game(const ZoneGame& game, const SolveOptions& options = {});

// q^T D p.
double expected_outcome(const ZoneGame& game, const std::vector<double>& p,
                        const std::vector<double>& q);

// Per-zone alpha-weighted entering flow, alpha_k * sum_{e in E_k} p_e.
std::vector<double> zone_loads(const ZoneGame& game, const std::vector<double>& p);

// RED's best reply to p: the largest zone load.
double best_response_to_p(const ZoneGame& game, const std::vector<double>& p);

// BLUE's best reply to q: the cheapest s-t path with edge weights
// sum_{k : e in E_k} q_k alpha_k.
double best_response_to_q(const ZoneGame& game, const std::vector<double>& q);

// max(best_response_to_p - value, value - best_response_to_q).
double saddle_epsilon(const ZoneGame& game, const GameSolution& solution);

struct ShortestPath {
  std::vector<std::size_t> edges;
  double cost = 0.0;
  bool found = false;
};

// Dijkstra from source to sink over nonnegative edge weights.
ShortestPath shortest_path(const VertexCapNetwork& net,
                           const std::vector<double>& edge_weight);

struct Equidistributed {
  std::vector<double> p;  // 1/kappa on the edges of kappa disjoint paths
  std::vector<double> q;  // per vertex (dense index), 1/kappa on a min cut
  std::size_t kappa = 0;
};

// Requires unit capacities (kUnsupportedCapacities). Throws kNoPath when
// the sink is unreachable.
Equidistributed equidistributed_strategies(const VertexCapNetwork& net);

// True iff deleting `support` (vertex ids, terminals excluded) separates the
// source from the sink.
bool red_support_contains_cut(const VertexCapNetwork& net,
                              const std::set<int>& support);

// Vertex sets as terminals: adds a super-source wired to every vertex of
// `sources` and a super-sink fed by every vertex of `sinks`. The virtual
// edges come after the original ones.
struct SuperTerminals {
  VertexCapNetwork network;
  int source = 0;
  int sink = 0;
  std::size_t real_edges = 0;
};

SuperTerminals attach_super_terminals(const std::vector<int>& vertices,
                                      const std::vector<netflow::Edge>& edges,
                                      const std::vector<int>& sources,
                                      const std::vector<int>& sinks);

}  // namespace ambush::game
