#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace ambush::netflow {

struct Edge {
  int from;
  int to;
  bool operator==(const Edge&) const = default;
};

// Vertex ids along an s-t path, source first.
using Path = std::vector<int>;

// Directed network whose flow limits sit on the vertices rather than on the
// arcs. Vertex ids are arbitrary integers; internally every vertex also has
// a dense index in [0, num_vertices()) following the order given at
// construction. The capacities of the source and the sink are ignored by
// every algorithm here: terminals can never belong to a vertex cut.
class VertexCapNetwork {
 public:
  VertexCapNetwork(std::vector<int> vertices, std::vector<Edge> edges,
                   int source, int sink,
                   const std::map<int, double>& capacities = {});

  const std::vector<int>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  int source() const { return source_; }
  int sink() const { return sink_; }
  std::size_t source_index() const { return index_of(source_); }
  std::size_t sink_index() const { return index_of(sink_); }

  bool contains(int id) const { return index_.count(id) != 0; }
  std::size_t index_of(int id) const;
  int id_at(std::size_t index) const { return vertices_[index]; }

  double capacity(int id) const { return capacity_[index_of(id)]; }
  double capacity_at(std::size_t index) const { return capacity_[index]; }
  // True when every non-terminal vertex has capacity exactly 1.
  bool unit_capacities() const;

  // Edge indices leaving / entering the vertex with the given dense index.
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_[v]; }
  std::size_t edge_tail(std::size_t e) const { return tail_[e]; }
  std::size_t edge_head(std::size_t e) const { return head_[e]; }

  std::optional<std::size_t> find_edge(int from, int to) const;

 private:
  std::vector<int> vertices_;
  std::vector<Edge> edges_;
  int source_;
  int sink_;
  std::unordered_map<int, std::size_t> index_;
  std::vector<double> capacity_;
  std::vector<std::size_t> tail_, head_;
  std::vector<std::vector<std::size_t>> out_, in_;
};

struct Flow {
  std::vector<double> edge_flow;  // aligned with VertexCapNetwork::edges()
  double value = 0.0;
};

struct VertexCut {
  std::vector<int> source_side;
  std::vector<int> cut;
  std::vector<int> sink_side;
  double capacity = 0.0;
};

struct Arc {
  int from;
  int to;
  double capacity;
};

// Arc-capacitated image of a vertex-capacitated network. Vertex with dense
// index v becomes nodes in_node(v) -> out_node(v) joined by arc v; original
// edge e becomes arc num_vertices + e from the tail's out node to the head's
// in node.
struct SplitNetwork {
  int num_nodes = 0;
  std::vector<Arc> arcs;
  std::vector<int> node_vertex;  // node -> original vertex id
  std::vector<int> arc_edge;     // arc -> original edge index, -1 for vertex arcs
  double unbounded = 0.0;        // capacity used for "infinite" arcs

  static int in_node(std::size_t v) { return static_cast<int>(2 * v); }
  static int out_node(std::size_t v) { return static_cast<int>(2 * v + 1); }
};

SplitNetwork split_vertices(const VertexCapNetwork& net);

Flow max_flow(const VertexCapNetwork& net);

// Source-side-minimal minimum vertex cut. Throws kNoCutExists when the
// source and the sink are joined by an edge.
VertexCut min_vertex_cut(const VertexCapNetwork& net);

// Maximum set of s-t paths that share no vertex other than the terminals.
// Requires unit capacities on every non-terminal vertex.
std::vector<Path> vertex_disjoint_paths(const VertexCapNetwork& net);

struct WeightedPath {
  Path vertices;
  std::vector<std::size_t> edges;
  double weight = 0.0;
};

// Peels maximum-bottleneck s-t paths off an acyclic flow. Throws kInvalidFlow
// when conservation fails or when a circulation is left over.
std::vector<WeightedPath> flow_decompose(const VertexCapNetwork& net,
                                         const Flow& flow);

// Removes every directed cycle from the support of the flow. The s-t value
// and the conservation law are unchanged and no edge flow increases.
Flow cancel_circulations(const VertexCapNetwork& net, Flow flow);

// Largest conservation / sign violation of the flow, in flow units.
double flow_violation(const VertexCapNetwork& net, const Flow& flow);

// Net flow out of the source.
double net_outflow(const VertexCapNetwork& net, const std::vector<double>& edge_flow);

// True if the sink can be reached from the source without visiting any
// vertex whose dense index is flagged in `removed`.
bool sink_reachable(const VertexCapNetwork& net, const std::vector<bool>& removed);

}  // namespace ambush::netflow
