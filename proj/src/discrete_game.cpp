#include "ambush/discrete_game.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>

#include "ambush/error.hpp"

namespace ambush::game {
namespace {

void require_reachable(const VertexCapNetwork& net) {
  if (!netflow::sink_reachable(net, std::vector<bool>(net.num_vertices(), false))) {
    throw Error(ErrorKind::kInfeasibleGame, "sink is unreachable from source");
  }
}

void check_strategies(const ZoneGame& game, const std::vector<double>& p,
                      const std::vector<double>* q) {
  if (p.size() != game.network.num_edges()) {
    throw Error(ErrorKind::kInvalidStrategy, "p has wrong length", "p");
  }
  for (double x : p) {
    if (!std::isfinite(x) || x < -1e-12) {
      throw Error(ErrorKind::kInvalidStrategy, "p must be finite and nonnegative", "p");
    }
  }
  if (q == nullptr) return;
  if (q->size() != game.zones.size()) {
    throw Error(ErrorKind::kInvalidStrategy, "q has wrong length", "q");
  }
  for (double x : *q) {
    if (!std::isfinite(x) || x < -1e-12) {
      throw Error(ErrorKind::kInvalidStrategy, "q must be finite and nonnegative", "q");
    }
  }
}

// q from the multipliers of the zone rows; uniform when they carry no mass
// (only possible when the game value is 0 and every q is optimal).
std::vector<double> normalize_duals(const ZoneGame& game,
                                    const std::vector<std::size_t>& rows,
                                    const std::vector<double>& u) {
  std::vector<double> q(game.zones.size(), 0.0);
  double mass = 0.0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double w = std::max(u[r], 0.0);
    q[rows[r]] = w;
    mass += w;
  }
  if (mass > 1e-12) {
    for (double& x : q) x /= mass;
  } else if (!q.empty()) {
    std::fill(q.begin(), q.end(), 1.0 / static_cast<double>(q.size()));
  }
  return q;
}

std::vector<double> clean_flow(const VertexCapNetwork& net, std::vector<double> p) {
  for (double& x : p) {
    if (x < 1e-12) x = 0.0;
  }
  netflow::Flow flow{std::move(p), 1.0};
  return netflow::cancel_circulations(net, std::move(flow)).edge_flow;
}

GameSolution solve_edge_lp(const ZoneGame& game, const SolveOptions& options) {
  const lp::LinearProgram program = build_lp(game);
  const std::vector<std::size_t> rows = lp_zone_rows(game);
  const lp::LpSolution sol = lp::solve(program, options.lp);
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorKind::kInfeasibleGame, "game program has no optimal solution");
  }
  const std::size_t m = game.network.num_edges();
  GameSolution out;
  out.p = clean_flow(game.network,
                     std::vector<double>(sol.primal.begin(), sol.primal.begin() + m));
  out.q = normalize_duals(game, rows, sol.dual_ineq);
  out.value = sol.objective_value;
  out.certificate = sol.certificate;
  out.lp_rows = program.ineq_rhs.size() + program.eq_rhs.size();
  out.lp_columns = program.num_variables();
  return out;
}

GameSolution solve_column_generation(const ZoneGame& game,
                                     const SolveOptions& options) {
  const VertexCapNetwork& net = game.network;
  const std::vector<std::size_t> rows = lp_zone_rows(game);
  const std::size_t m = rows.size();

  // Rows touched by each edge, with the zone's reward.
  std::vector<std::vector<std::pair<std::size_t, double>>> edge_rows(net.num_edges());
  for (std::size_t r = 0; r < m; ++r) {
    const Zone& zone = game.zones[rows[r]];
    for (std::size_t e : zone.entering) edge_rows[e].emplace_back(r, zone.alpha);
  }
  auto row_coefficients = [&](const std::vector<std::size_t>& path) {
    std::vector<double> a(m, 0.0);
    for (std::size_t e : path) {
      for (const auto& [r, alpha] : edge_rows[e]) a[r] += alpha;
    }
    return a;
  };

  std::vector<double> weight(net.num_edges(), 0.0);
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    for (const auto& [r, alpha] : edge_rows[e]) weight[e] += alpha;
  }
  ShortestPath first = shortest_path(net, weight);
  if (!first.found) {
    throw Error(ErrorKind::kInfeasibleGame, "sink is unreachable from source");
  }

  // Master: variables z, lambda_0; rows a_r . lambda - z <= 0, sum lambda = 1.
  lp::LinearProgram master;
  master.objective = {1.0, 0.0};
  const std::vector<double> a0 = row_coefficients(first.edges);
  for (std::size_t r = 0; r < m; ++r) {
    master.ineq_matrix.push_back({-1.0, a0[r]});
    master.ineq_rhs.push_back(0.0);
  }
  master.eq_matrix = {{0.0, 1.0}};
  master.eq_rhs = {1.0};

  std::vector<std::vector<std::size_t>> paths{first.edges};
  lp::SimplexSolver solver(master, options.lp);
  lp::LpSolution sol;
  double pricing_bound = 0.0;
  const std::vector<double> one{1.0};
  for (;;) {
    sol = solver.solve();
    if (sol.status != lp::Status::kOptimal) {
      throw Error(ErrorKind::kInvariantViolation,
                  sol.status == lp::Status::kUnbounded ? "master program became unbounded"
                                                       : "master program became infeasible");
    }
    std::fill(weight.begin(), weight.end(), 0.0);
    for (std::size_t e = 0; e < net.num_edges(); ++e) {
      for (const auto& [r, alpha] : edge_rows[e]) {
        weight[e] += alpha * std::max(sol.dual_ineq[r], 0.0);
      }
    }
    const ShortestPath priced = shortest_path(net, weight);
    const double v = sol.dual_eq[0];
    pricing_bound = priced.cost;
    if (priced.cost >= v - options.pricing_tolerance * (1.0 + std::abs(v))) break;
    if (paths.size() >= options.max_columns) {
      throw Error(ErrorKind::kInvariantViolation, "column generation did not converge");
    }
    const std::vector<double> a = row_coefficients(priced.edges);
    solver.add_column(0.0, a, one);
    paths.push_back(priced.edges);
  }

  GameSolution out;
  std::vector<double> p(net.num_edges(), 0.0);
  for (std::size_t j = 0; j < paths.size(); ++j) {
    const double lambda = sol.primal[j + 1];
    if (lambda <= 0.0) continue;
    for (std::size_t e : paths[j]) p[e] += lambda;
  }
  out.p = clean_flow(net, std::move(p));
  out.q = normalize_duals(game, rows, sol.dual_ineq);
  out.value = sol.objective_value;
  out.certificate = sol.certificate;
  // The restricted dual (u, min(v, cheapest path)) is feasible for the full
  // path program, so its objective bounds the value from below.
  const double dual_bound = std::min(sol.dual_eq[0], pricing_bound);
  out.certificate.duality_gap =
      std::max(out.certificate.duality_gap, std::abs(out.value - dual_bound));
  out.lp_rows = m + 1;
  out.lp_columns = paths.size() + 1;
  return out;
}

}  // namespace

ZoneGame vertex_game(const VertexCapNetwork& net, const Rewards& alpha) {
  for (const auto& [id, a] : alpha) {
    if (!net.contains(id)) {
      throw Error(ErrorKind::kMalformedNetwork,
                  "reward given for unknown vertex " + std::to_string(id), "alpha");
    }
    if (!std::isfinite(a) || a < 0.0) {
      throw Error(ErrorKind::kMalformedNetwork,
                  "reward must be finite and nonnegative", "alpha");
    }
  }
  ZoneGame game{net, {}};
  game.zones.reserve(net.num_vertices());
  for (std::size_t v = 0; v < net.num_vertices(); ++v) {
    Zone zone;
    zone.id = net.id_at(v);
    auto it = alpha.find(zone.id);
    zone.alpha = it == alpha.end() ? 0.0 : it->second;
    zone.entering = net.in_edges(v);
    game.zones.push_back(std::move(zone));
  }
  return game;
}

Rewards uniform_internal_rewards(const VertexCapNetwork& net) {
  Rewards alpha;
  for (int id : net.vertices()) {
    alpha[id] = (id == net.source() || id == net.sink()) ? 0.0 : 1.0;
  }
  return alpha;
}

std::vector<std::size_t> lp_zone_rows(const ZoneGame& game) {
  std::vector<std::size_t> rows;
  for (std::size_t k = 0; k < game.zones.size(); ++k) {
    if (game.zones[k].alpha > 0.0 && !game.zones[k].entering.empty()) {
      rows.push_back(k);
    }
  }
  return rows;
}

lp::LinearProgram build_lp(const ZoneGame& game) {
  const VertexCapNetwork& net = game.network;
  require_reachable(net);
  const std::size_t m = net.num_edges();
  const std::size_t z = m;
  lp::LinearProgram program;
  program.objective.assign(m + 1, 0.0);
  program.objective[z] = 1.0;

  for (std::size_t k : lp_zone_rows(game)) {
    const Zone& zone = game.zones[k];
    lp::Vector row(m + 1, 0.0);
    for (std::size_t e : zone.entering) {
      if (e >= m) {
        throw Error(ErrorKind::kInvalidStrategy, "zone lists an unknown edge");
      }
      row[e] += zone.alpha;
    }
    row[z] = -1.0;
    program.ineq_matrix.push_back(std::move(row));
    program.ineq_rhs.push_back(0.0);
  }

  auto balance_row = [&](std::size_t v, double in_sign) {
    lp::Vector row(m + 1, 0.0);
    for (std::size_t e : net.in_edges(v)) row[e] += in_sign;
    for (std::size_t e : net.out_edges(v)) row[e] -= in_sign;
    return row;
  };
  const std::size_t s = net.source_index();
  const std::size_t t = net.sink_index();
  for (std::size_t v = 0; v < net.num_vertices(); ++v) {
    if (v == s || v == t) continue;
    program.eq_matrix.push_back(balance_row(v, 1.0));
    program.eq_rhs.push_back(0.0);
  }
  program.eq_matrix.push_back(balance_row(s, -1.0));
  program.eq_rhs.push_back(1.0);
  program.eq_matrix.push_back(balance_row(t, 1.0));
  program.eq_rhs.push_back(1.0);
  return program;
}

GameSolution solve_game(const ZoneGame& game, const SolveOptions& options) {
  require_reachable(game.network);
  if (options.method == Method::kColumnGeneration) {
    return solve_column_generation(game, options);
  }
  return solve_edge_lp(game, options);
}

std::vector<double> zone_loads(const ZoneGame& game, const std::vector<double>& p) {
  check_strategies(game, p, nullptr);
  std::vector<double> load(game.zones.size(), 0.0);
  for (std::size_t k = 0; k < game.zones.size(); ++k) {
    double inflow = 0.0;
    for (std::size_t e : game.zones[k].entering) inflow += p[e];
    load[k] = game.zones[k].alpha * inflow;
  }
  return load;
}

double expected_outcome(const ZoneGame& game, const std::vector<double>& p,
                        const std::vector<double>& q) {
  check_strategies(game, p, &q);
  const std::vector<double> load = zone_loads(game, p);
  double total = 0.0;
  for (std::size_t k = 0; k < load.size(); ++k) total += q[k] * load[k];
  return total;
}

double best_response_to_p(const ZoneGame& game, const std::vector<double>& p) {
  const std::vector<double> load = zone_loads(game, p);
  double best = 0.0;
  for (double x : load) best = std::max(best, x);
  return best;
}

double best_response_to_q(const ZoneGame& game, const std::vector<double>& q) {
  check_strategies(game, std::vector<double>(game.network.num_edges(), 0.0), &q);
  std::vector<double> weight(game.network.num_edges(), 0.0);
  for (std::size_t k = 0; k < game.zones.size(); ++k) {
    const double w = q[k] * game.zones[k].alpha;
    if (w == 0.0) continue;
    for (std::size_t e : game.zones[k].entering) weight[e] += w;
  }
  const ShortestPath path = shortest_path(game.network, weight);
  if (!path.found) {
    throw Error(ErrorKind::kInfeasibleGame, "sink is unreachable from source");
  }
  return path.cost;
}

double saddle_epsilon(const ZoneGame& game, const GameSolution& solution) {
  return std::max(best_response_to_p(game, solution.p) - solution.value,
                  solution.value - best_response_to_q(game, solution.q));
}

ShortestPath shortest_path(const VertexCapNetwork& net,
                           const std::vector<double>& edge_weight) {
  const std::size_t n = net.num_vertices();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<std::size_t> via(n, net.num_edges());
  std::vector<bool> done(n, false);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  const std::size_t s = net.source_index();
  const std::size_t t = net.sink_index();
  dist[s] = 0.0;
  heap.emplace(0.0, s);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = true;
    if (v == t) break;
    for (std::size_t e : net.out_edges(v)) {
      const std::size_t w = net.edge_head(e);
      const double nd = d + edge_weight[e];
      if (nd < dist[w]) {
        dist[w] = nd;
        via[w] = e;
        heap.emplace(nd, w);
      }
    }
  }
  ShortestPath out;
  if (dist[t] == inf) return out;
  out.found = true;
  for (std::size_t v = t; v != s; v = net.edge_tail(via[v])) out.edges.push_back(via[v]);
  std::reverse(out.edges.begin(), out.edges.end());
  // Re-sum along the path so the cost is independent of heap order.
  for (std::size_t e : out.edges) out.cost += edge_weight[e];
  return out;
}

Equidistributed equidistributed_strategies(const VertexCapNetwork& net) {
  if (!net.unit_capacities()) {
    throw Error(ErrorKind::kUnsupportedCapacities,
                "equidistributed strategies need unit vertex capacities");
  }
  if (!netflow::sink_reachable(net, std::vector<bool>(net.num_vertices(), false))) {
    throw Error(ErrorKind::kNoPath, "no path from source to sink");
  }
  const netflow::VertexCut cut = netflow::min_vertex_cut(net);
  const std::vector<netflow::Path> paths = netflow::vertex_disjoint_paths(net);
  Equidistributed out;
  out.kappa = paths.size();
  if (cut.cut.size() != out.kappa) {
    throw Error(ErrorKind::kInvariantViolation,
                "disjoint path count differs from cut size");
  }
  const double share = 1.0 / static_cast<double>(out.kappa);
  out.p.assign(net.num_edges(), 0.0);
  for (const netflow::Path& path : paths) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      out.p[*net.find_edge(path[i], path[i + 1])] += share;
    }
  }
  out.q.assign(net.num_vertices(), 0.0);
  for (int v : cut.cut) out.q[net.index_of(v)] = share;
  return out;
}

bool red_support_contains_cut(const VertexCapNetwork& net,
                              const std::set<int>& support) {
  std::vector<bool> removed(net.num_vertices(), false);
  for (int v : support) {
    if (!net.contains(v)) {
      throw Error(ErrorKind::kInvalidStrategy,
                  "support vertex " + std::to_string(v) + " is not in the network");
    }
    if (v == net.source() || v == net.sink()) {
      throw Error(ErrorKind::kInvalidStrategy, "support must exclude the terminals");
    }
    removed[net.index_of(v)] = true;
  }
  return !netflow::sink_reachable(net, removed);
}

SuperTerminals attach_super_terminals(const std::vector<int>& vertices,
                                      const std::vector<netflow::Edge>& edges,
                                      const std::vector<int>& sources,
                                      const std::vector<int>& sinks) {
  if (sources.empty()) throw Error(ErrorKind::kEmptyTerminalSet, "no source vertices");
  if (sinks.empty()) throw Error(ErrorKind::kEmptyTerminalSet, "no sink vertices");
  int top = 0;
  for (int v : vertices) top = std::max(top, v);
  const int source = top + 1;
  const int sink = top + 2;
  std::vector<int> all = vertices;
  all.push_back(source);
  all.push_back(sink);
  std::vector<netflow::Edge> all_edges = edges;
  for (int v : sources) all_edges.push_back({source, v});
  for (int v : sinks) all_edges.push_back({v, sink});
  return SuperTerminals{
      VertexCapNetwork(std::move(all), std::move(all_edges), source, sink), source,
      sink, edges.size()};
}

}  // namespace ambush::game
