#include "ambush/netflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <string>

#include "ambush/error.hpp"

namespace ambush::netflow {
namespace {

// Residual capacities at or below this are treated as saturated.
constexpr double kZero = 1e-12;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::kMalformedNetwork, what);
}

// Residual graph over a SplitNetwork: residual arc 2a is arc a, 2a+1 its
// reverse.
struct Residual {
  std::vector<int> head;
  std::vector<double> cap;
  std::vector<std::vector<int>> adj;

  explicit Residual(const SplitNetwork& split) : adj(split.num_nodes) {
    head.reserve(2 * split.arcs.size());
    cap.reserve(2 * split.arcs.size());
    for (std::size_t a = 0; a < split.arcs.size(); ++a) {
      const Arc& arc = split.arcs[a];
      adj[arc.from].push_back(static_cast<int>(head.size()));
      head.push_back(arc.to);
      cap.push_back(arc.capacity);
      adj[arc.to].push_back(static_cast<int>(head.size()));
      head.push_back(arc.from);
      cap.push_back(0.0);
    }
  }

  double flow_on(std::size_t arc) const { return cap[2 * arc + 1]; }

  // Nodes reachable from `from` through arcs with positive residual capacity.
  std::vector<bool> reachable(int from) const {
    std::vector<bool> seen(adj.size(), false);
    std::queue<int> queue;
    seen[from] = true;
    queue.push(from);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (int r : adj[u]) {
        if (cap[r] > kZero && !seen[head[r]]) {
          seen[head[r]] = true;
          queue.push(head[r]);
        }
      }
    }
    return seen;
  }
};

// Shortest augmenting paths (Edmonds-Karp). Returns the total augmented.
double augment_all(Residual& res, int source, int sink) {
  double total = 0.0;
  std::vector<int> parent(res.adj.size());
  for (;;) {
    std::fill(parent.begin(), parent.end(), -1);
    std::queue<int> queue;
    queue.push(source);
    parent[source] = -2;
    while (!queue.empty() && parent[sink] == -1) {
      const int u = queue.front();
      queue.pop();
      for (int r : res.adj[u]) {
        const int v = res.head[r];
        if (parent[v] == -1 && res.cap[r] > kZero) {
          parent[v] = r;
          queue.push(v);
        }
      }
    }
    if (parent[sink] == -1) break;
    double bottleneck = std::numeric_limits<double>::infinity();
    for (int v = sink; v != source; v = res.head[parent[v] ^ 1]) {
      bottleneck = std::min(bottleneck, res.cap[parent[v]]);
    }
    for (int v = sink; v != source; v = res.head[parent[v] ^ 1]) {
      res.cap[parent[v]] -= bottleneck;
      res.cap[parent[v] ^ 1] += bottleneck;
    }
    total += bottleneck;
  }
  return total;
}

struct SolvedFlow {
  SplitNetwork split;
  Residual residual;
  Flow flow;
};

SolvedFlow solve_split(const VertexCapNetwork& net) {
  SplitNetwork split = split_vertices(net);
  Residual residual(split);
  augment_all(residual, SplitNetwork::out_node(net.source_index()),
              SplitNetwork::in_node(net.sink_index()));
  Flow flow;
  flow.edge_flow.resize(net.num_edges());
  const std::size_t n = net.num_vertices();
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    flow.edge_flow[e] = residual.flow_on(n + e);
  }
  flow.value = net_outflow(net, flow.edge_flow);
  return {std::move(split), std::move(residual), std::move(flow)};
}

}  // namespace

VertexCapNetwork::VertexCapNetwork(std::vector<int> vertices,
                                   std::vector<Edge> edges, int source,
                                   int sink,
                                   const std::map<int, double>& capacities)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      source_(source),
      sink_(sink) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index_.emplace(vertices_[i], i).second) {
      malformed("duplicate vertex id " + std::to_string(vertices_[i]));
    }
  }
  if (!contains(source_)) malformed("source is not a vertex");
  if (!contains(sink_)) malformed("sink is not a vertex");
  if (source_ == sink_) malformed("source and sink coincide");

  capacity_.assign(vertices_.size(), 1.0);
  for (const auto& [id, cap] : capacities) {
    if (!contains(id)) {
      malformed("capacity given for unknown vertex " + std::to_string(id));
    }
    if (!(cap >= 0.0) || !std::isfinite(cap)) {
      malformed("vertex capacity must be finite and nonnegative");
    }
    capacity_[index_of(id)] = cap;
  }

  out_.resize(vertices_.size());
  in_.resize(vertices_.size());
  std::set<std::pair<int, int>> seen;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (!contains(edge.from) || !contains(edge.to)) {
      malformed("edge endpoint is not a vertex");
    }
    if (edge.from == edge.to) malformed("self-loop edge");
    if (!seen.emplace(edge.from, edge.to).second) malformed("duplicate edge");
    tail_.push_back(index_of(edge.from));
    head_.push_back(index_of(edge.to));
    out_[tail_.back()].push_back(e);
    in_[head_.back()].push_back(e);
  }
}

std::size_t VertexCapNetwork::index_of(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) malformed("unknown vertex id " + std::to_string(id));
  return it->second;
}

bool VertexCapNetwork::unit_capacities() const {
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v] == source_ || vertices_[v] == sink_) continue;
    if (capacity_[v] != 1.0) return false;
  }
  return true;
}

std::optional<std::size_t> VertexCapNetwork::find_edge(int from, int to) const {
  if (!contains(from) || !contains(to)) return std::nullopt;
  for (std::size_t e : out_[index_of(from)]) {
    if (edges_[e].to == to) return e;
  }
  return std::nullopt;
}

SplitNetwork split_vertices(const VertexCapNetwork& net) {
  const std::size_t n = net.num_vertices();
  SplitNetwork split;
  split.num_nodes = static_cast<int>(2 * n);
  split.unbounded = 1.0;
  for (std::size_t v = 0; v < n; ++v) split.unbounded += net.capacity_at(v);

  split.node_vertex.resize(2 * n);
  for (std::size_t v = 0; v < n; ++v) {
    split.node_vertex[SplitNetwork::in_node(v)] = net.id_at(v);
    split.node_vertex[SplitNetwork::out_node(v)] = net.id_at(v);
    const bool terminal = v == net.source_index() || v == net.sink_index();
    split.arcs.push_back({SplitNetwork::in_node(v), SplitNetwork::out_node(v),
                          terminal ? split.unbounded : net.capacity_at(v)});
    split.arc_edge.push_back(-1);
  }
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    split.arcs.push_back({SplitNetwork::out_node(net.edge_tail(e)),
                          SplitNetwork::in_node(net.edge_head(e)),
                          split.unbounded});
    split.arc_edge.push_back(static_cast<int>(e));
  }
  return split;
}

Flow max_flow(const VertexCapNetwork& net) { return solve_split(net).flow; }

VertexCut min_vertex_cut(const VertexCapNetwork& net) {
  if (net.find_edge(net.source(), net.sink()) ||
      net.find_edge(net.sink(), net.source())) {
    throw Error(ErrorKind::kNoCutExists,
                "source and sink are adjacent; no vertex cut separates them");
  }
  const SolvedFlow solved = solve_split(net);
  const std::vector<bool> reach = solved.residual.reachable(
      SplitNetwork::out_node(net.source_index()));

  VertexCut cut;
  for (std::size_t v = 0; v < net.num_vertices(); ++v) {
    const int id = net.id_at(v);
    if (v == net.source_index()) {
      cut.source_side.push_back(id);
    } else if (v == net.sink_index()) {
      cut.sink_side.push_back(id);
    } else if (reach[SplitNetwork::in_node(v)] &&
               !reach[SplitNetwork::out_node(v)]) {
      cut.cut.push_back(id);
      cut.capacity += net.capacity_at(v);
    } else if (reach[SplitNetwork::in_node(v)]) {
      cut.source_side.push_back(id);
    } else {
      cut.sink_side.push_back(id);
    }
  }
  return cut;
}

std::vector<Path> vertex_disjoint_paths(const VertexCapNetwork& net) {
  if (!net.unit_capacities()) {
    throw Error(ErrorKind::kUnsupportedCapacities,
                "vertex-disjoint paths need unit capacities on every "
                "non-terminal vertex");
  }
  std::vector<Path> paths;
  const auto direct = net.find_edge(net.source(), net.sink());
  if (direct) paths.push_back({net.source(), net.sink()});

  // The direct edge carries an unbounded flow; drop it and route the rest.
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    if (!direct || e != *direct) edges.push_back(net.edges()[e]);
  }
  std::map<int, double> caps;
  for (std::size_t v = 0; v < net.num_vertices(); ++v) {
    caps[net.id_at(v)] = net.capacity_at(v);
  }
  const VertexCapNetwork reduced(net.vertices(), std::move(edges), net.source(),
                                 net.sink(), caps);
  Flow flow = max_flow(reduced);

  const std::size_t s = reduced.source_index();
  const std::size_t t = reduced.sink_index();
  for (std::size_t first : reduced.out_edges(s)) {
    if (flow.edge_flow[first] < 0.5) continue;
    Path path{reduced.source()};
    std::size_t e = first;
    std::size_t steps = 0;
    for (;;) {
      flow.edge_flow[e] = 0.0;
      const std::size_t v = reduced.edge_head(e);
      path.push_back(reduced.id_at(v));
      if (v == t) break;
      if (++steps > reduced.num_vertices()) {
        throw Error(ErrorKind::kInvariantViolation,
                    "integral flow decomposition did not reach the sink");
      }
      std::optional<std::size_t> next;
      for (std::size_t out : reduced.out_edges(v)) {
        if (flow.edge_flow[out] >= 0.5) {
          next = out;
          break;
        }
      }
      if (!next) {
        throw Error(ErrorKind::kInvariantViolation,
                    "integral flow decomposition hit a dead end");
      }
      e = *next;
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

double net_outflow(const VertexCapNetwork& net,
                   const std::vector<double>& edge_flow) {
  const std::size_t s = net.source_index();
  double value = 0.0;
  for (std::size_t e : net.out_edges(s)) value += edge_flow[e];
  for (std::size_t e : net.in_edges(s)) value -= edge_flow[e];
  return value;
}

double flow_violation(const VertexCapNetwork& net, const Flow& flow) {
  if (flow.edge_flow.size() != net.num_edges()) {
    return std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  for (double f : flow.edge_flow) {
    if (!std::isfinite(f)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, -f);
  }
  for (std::size_t v = 0; v < net.num_vertices(); ++v) {
    if (v == net.source_index() || v == net.sink_index()) continue;
    double balance = 0.0;
    for (std::size_t e : net.in_edges(v)) balance += flow.edge_flow[e];
    for (std::size_t e : net.out_edges(v)) balance -= flow.edge_flow[e];
    worst = std::max(worst, std::abs(balance));
  }
  worst = std::max(worst,
                   std::abs(net_outflow(net, flow.edge_flow) - flow.value));
  return worst;
}

std::vector<WeightedPath> flow_decompose(const VertexCapNetwork& net,
                                         const Flow& flow) {
  const double scale = std::max(1.0, std::abs(flow.value));
  if (flow_violation(net, flow) > 1e-9 * scale) {
    throw Error(ErrorKind::kInvalidFlow, "flow violates conservation");
  }
  std::vector<double> left = flow.edge_flow;
  const std::size_t n = net.num_vertices();
  const std::size_t s = net.source_index();
  const std::size_t t = net.sink_index();

  std::vector<WeightedPath> paths;
  std::vector<double> width(n);
  std::vector<std::ptrdiff_t> via(n);
  std::vector<bool> done(n);
  for (;;) {
    // Widest path: Dijkstra on the bottleneck.
    std::fill(width.begin(), width.end(), 0.0);
    std::fill(via.begin(), via.end(), -1);
    std::fill(done.begin(), done.end(), false);
    width[s] = std::numeric_limits<double>::infinity();
    std::priority_queue<std::pair<double, std::size_t>> heap;
    heap.emplace(width[s], s);
    while (!heap.empty()) {
      const auto [w, u] = heap.top();
      heap.pop();
      if (done[u]) continue;
      done[u] = true;
      if (u == t) break;
      for (std::size_t e : net.out_edges(u)) {
        const std::size_t v = net.edge_head(e);
        const double cand = std::min(w, left[e]);
        if (left[e] > kZero && !done[v] && cand > width[v]) {
          width[v] = cand;
          via[v] = static_cast<std::ptrdiff_t>(e);
          heap.emplace(cand, v);
        }
      }
    }
    if (via[t] < 0) break;

    WeightedPath path;
    path.weight = width[t];
    std::size_t argmin = static_cast<std::size_t>(via[t]);
    for (std::size_t v = t; v != s;) {
      const auto e = static_cast<std::size_t>(via[v]);
      path.edges.push_back(e);
      if (left[e] < left[argmin]) argmin = e;
      v = net.edge_tail(e);
    }
    std::reverse(path.edges.begin(), path.edges.end());
    path.vertices.push_back(net.source());
    for (std::size_t e : path.edges) {
      left[e] -= path.weight;
      path.vertices.push_back(net.edges()[e].to);
    }
    left[argmin] = 0.0;
    paths.push_back(std::move(path));
  }

  for (double f : left) {
    if (f > 1e-9 * scale) {
      throw Error(ErrorKind::kInvalidFlow,
                  "flow carries a circulation that no s-t path explains");
    }
  }
  return paths;
}

Flow cancel_circulations(const VertexCapNetwork& net, Flow flow) {
  const std::size_t n = net.num_vertices();
  // Iterative DFS over the support; stack_edges[i] joins stack[i] to
  // stack[i + 1], so a back edge to v closes the loop stack[pos[v]..].
  std::vector<int> state(n);  // 0 new, 1 on stack, 2 finished
  std::vector<std::size_t> cursor(n), pos(n);
  std::vector<std::size_t> stack, stack_edges, cycle;

  for (;;) {
    std::fill(state.begin(), state.end(), 0);
    std::fill(cursor.begin(), cursor.end(), 0);
    cycle.clear();
    for (std::size_t root = 0; root < n && cycle.empty(); ++root) {
      if (state[root] != 0) continue;
      stack.assign(1, root);
      stack_edges.clear();
      state[root] = 1;
      pos[root] = 0;
      while (!stack.empty() && cycle.empty()) {
        const std::size_t u = stack.back();
        const auto& outs = net.out_edges(u);
        if (cursor[u] == outs.size()) {
          state[u] = 2;
          stack.pop_back();
          if (!stack_edges.empty()) stack_edges.pop_back();
          continue;
        }
        const std::size_t e = outs[cursor[u]++];
        if (flow.edge_flow[e] <= kZero) continue;
        const std::size_t v = net.edge_head(e);
        if (state[v] == 0) {
          state[v] = 1;
          pos[v] = stack.size();
          stack.push_back(v);
          stack_edges.push_back(e);
        } else if (state[v] == 1) {
          cycle.assign(stack_edges.begin() + static_cast<std::ptrdiff_t>(pos[v]),
                       stack_edges.end());
          cycle.push_back(e);
        }
      }
    }
    if (cycle.empty()) break;
    std::size_t argmin = cycle.front();
    for (std::size_t e : cycle) {
      if (flow.edge_flow[e] < flow.edge_flow[argmin]) argmin = e;
    }
    const double low = flow.edge_flow[argmin];
    for (std::size_t e : cycle) flow.edge_flow[e] -= low;
    flow.edge_flow[argmin] = 0.0;
  }
  return flow;
}

bool sink_reachable(const VertexCapNetwork& net,
                    const std::vector<bool>& removed) {
  const std::size_t s = net.source_index();
  const std::size_t t = net.sink_index();
  std::vector<bool> seen(net.num_vertices(), false);
  std::queue<std::size_t> queue;
  seen[s] = true;
  queue.push(s);
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    if (u == t) return true;
    for (std::size_t e : net.out_edges(u)) {
      const std::size_t v = net.edge_head(e);
      if (!seen[v] && !removed[v]) {
        seen[v] = true;
        queue.push(v);
      }
    }
  }
  return false;
}

}  // namespace ambush::netflow
