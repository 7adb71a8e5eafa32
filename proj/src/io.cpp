#include "ambush/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ambush/error.hpp"

namespace ambush::io {
namespace {

[[noreturn]] void parse_error(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::kParse, field + ": " + what, field);
}

const json& require(const json& obj, const std::string& key, const std::string& prefix = {}) {
  const std::string field = prefix.empty() ? key : prefix + "." + key;
  if (!obj.is_object()) parse_error(prefix.empty() ? "input" : prefix, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) parse_error(field, "missing");
  return *it;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) parse_error(field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) parse_error(field, "expected a finite number");
  return x;
}

int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) parse_error(field, "expected an integer");
  return j.get<int>();
}

int id_from_key(const std::string& key, const std::string& field) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), v);
  if (ec != std::errc() || ptr != key.data() + key.size()) {
    parse_error(field, "key '" + key + "' is not an integer id");
  }
  return v;
}

geom::Point point(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) parse_error(field, "expected [x, y]");
  return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
}

std::vector<geom::Point> point_list(const json& j, const std::string& field) {
  if (!j.is_array()) parse_error(field, "expected an array of points");
  std::vector<geom::Point> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(point(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::array<int, 2> index_pair(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) parse_error(field, "expected [i, j]");
  return {integer(j[0], field + "[0]"), integer(j[1], field + "[1]")};
}

std::vector<int> id_list(const json& j, const std::string& field) {
  if (!j.is_array()) parse_error(field, "expected an array of ids");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(integer(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::map<int, double> id_number_map(const json& j, const std::string& field) {
  if (!j.is_object()) parse_error(field, "expected an object keyed by id");
  std::map<int, double> out;
  for (const auto& [key, value] : j.items()) {
    out[id_from_key(key, field)] = number(value, field + "." + key);
  }
  return out;
}

json point_json(geom::Point p) { return json::array({p.x, p.y}); }

json certificate_json(const lp::Certificate& c) {
  return {{"primal_infeasibility", c.primal_infeasibility},
          {"dual_infeasibility", c.dual_infeasibility},
          {"duality_gap", c.duality_gap}};
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("input", "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    parse_error("input", std::string("malformed JSON: ") + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) parse_error("output", "cannot write '" + path + "'");
  out << text;
  if (!out) parse_error("output", "write to '" + path + "' failed");
}

netflow::VertexCapNetwork parse_network(const json& j) {
  const std::vector<int> vertices = id_list(require(j, "vertices"), "vertices");
  const json& edges_json = require(j, "edges");
  if (!edges_json.is_array()) parse_error("edges", "expected an array of [u, v] pairs");
  std::vector<netflow::Edge> edges;
  for (std::size_t i = 0; i < edges_json.size(); ++i) {
    const auto pair = index_pair(edges_json[i], "edges[" + std::to_string(i) + "]");
    edges.push_back({pair[0], pair[1]});
  }
  std::map<int, double> capacities;
  if (j.contains("capacities")) capacities = id_number_map(j["capacities"], "capacities");
  const int source = integer(require(j, "source"), "source");
  const int sink = integer(require(j, "sink"), "sink");
  return netflow::VertexCapNetwork(vertices, edges, source, sink, capacities);
}

json network_to_json(const netflow::VertexCapNetwork& net) {
  json edges = json::array();
  for (const netflow::Edge& e : net.edges()) edges.push_back({e.from, e.to});
  json caps = json::object();
  for (std::size_t v = 0; v < net.num_vertices(); ++v) {
    caps[std::to_string(net.id_at(v))] = net.capacity_at(v);
  }
  return {{"vertices", net.vertices()}, {"edges", edges}, {"capacities", caps},
          {"source", net.source()}, {"sink", net.sink()}};
}

GameInstance parse_game(const json& j) {
  GameInstance g{parse_network(j), {}, {}};
  g.alpha = j.contains("alpha") ? id_number_map(j["alpha"], "alpha")
                                : game::uniform_internal_rewards(g.network);
  if (j.contains("positions")) {
    const json& pos = j["positions"];
    if (!pos.is_object()) parse_error("positions", "expected an object keyed by id");
    for (const auto& [key, value] : pos.items()) {
      g.positions[id_from_key(key, "positions")] = point(value, "positions." + key);
    }
  }
  return g;
}

std::string edge_key(int from, int to) {
  return std::to_string(from) + "-" + std::to_string(to);
}

std::pair<int, int> parse_edge_key(const std::string& key) {
  // The separator is the first '-' after the leading character, so negative
  // ids still parse.
  const std::size_t dash = key.find('-', 1);
  if (dash == std::string::npos) parse_error("p", "edge key '" + key + "' is not 'u-v'");
  return {id_from_key(key.substr(0, dash), "p"), id_from_key(key.substr(dash + 1), "p")};
}

json solution_to_json(const game::ZoneGame& game, const game::GameSolution& solution,
                      bool sparse) {
  json p = json::object();
  const auto& edges = game.network.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (sparse && solution.p[e] < 1e-12) continue;
    p[edge_key(edges[e].from, edges[e].to)] = solution.p[e];
  }
  json q = json::object();
  for (std::size_t k = 0; k < game.zones.size(); ++k) {
    if (sparse && solution.q[k] < 1e-12) continue;
    q[std::to_string(game.zones[k].id)] = solution.q[k];
  }
  return {{"value", solution.value},
          {"p", p},
          {"q", q},
          {"certificate", certificate_json(solution.certificate)},
          {"saddle_epsilon", game::saddle_epsilon(game, solution)}};
}

game::GameSolution parse_solution(const json& j, const game::ZoneGame& game) {
  game::GameSolution s;
  s.value = number(require(j, "value"), "value");
  s.p.assign(game.network.num_edges(), 0.0);
  s.q.assign(game.zones.size(), 0.0);
  const json& p = require(j, "p");
  if (!p.is_object()) parse_error("p", "expected an object keyed by 'u-v'");
  for (const auto& [key, value] : p.items()) {
    const auto [u, v] = parse_edge_key(key);
    const auto e = game.network.find_edge(u, v);
    if (!e) throw Error(ErrorKind::kInvalidStrategy, "p names unknown edge " + key, "p");
    s.p[*e] = number(value, "p." + key);
  }
  std::map<int, std::size_t> zone_index;
  for (std::size_t k = 0; k < game.zones.size(); ++k) zone_index[game.zones[k].id] = k;
  for (const auto& [id, prob] : id_number_map(require(j, "q"), "q")) {
    const auto it = zone_index.find(id);
    if (it == zone_index.end()) {
      throw Error(ErrorKind::kInvalidStrategy, "q names unknown site " + std::to_string(id), "q");
    }
    s.q[it->second] = prob;
  }

  auto reject = [](const std::string& what, const std::string& field) {
    throw Error(ErrorKind::kInvalidStrategy, what, field);
  };
  for (double x : s.p) {
    if (x < -1e-9 || x > 1.0 + 1e-9) reject("p entries must lie in [0, 1]", "p");
  }
  const netflow::Flow flow{s.p, netflow::net_outflow(game.network, s.p)};
  if (std::abs(flow.value - 1.0) > 1e-8 || netflow::flow_violation(game.network, flow) > 1e-8) {
    reject("p is not a unit s-t flow", "p");
  }
  double mass = 0.0;
  for (double x : s.q) {
    if (x < -1e-12) reject("q entries must be nonnegative", "q");
    mass += x;
  }
  if (std::abs(mass - 1.0) > 1e-9) reject("q must sum to 1", "q");
  if (std::abs(game::best_response_to_p(game, s.p) - s.value) > 1e-8) {
    reject("value differs from the largest weighted inflow under p", "value");
  }
  return s;
}

poly::PolygonalDomain parse_domain(const json& j) {
  poly::PolygonalDomain d;
  d.outer = point_list(require(j, "outer"), "outer");
  if (j.contains("holes")) {
    const json& holes = j["holes"];
    if (!holes.is_array()) parse_error("holes", "expected an array of polygons");
    for (std::size_t h = 0; h < holes.size(); ++h) {
      d.holes.push_back(point_list(holes[h], "holes[" + std::to_string(h) + "]"));
    }
  }
  d.source_edge = index_pair(require(j, "source_edge"), "source_edge");
  d.sink_edge = index_pair(require(j, "sink_edge"), "sink_edge");
  poly::validate(d);
  return d;
}

std::optional<double> parse_radius(const json& j) {
  if (!j.is_object() || !j.contains("R")) return std::nullopt;
  return number(j["R"], "R");
}

json domain_to_json(const poly::PolygonalDomain& domain, std::optional<double> R) {
  json outer = json::array();
  for (const geom::Point& p : domain.outer) outer.push_back(point_json(p));
  json holes = json::array();
  for (const geom::Polygon& h : domain.holes) {
    json hole = json::array();
    for (const geom::Point& p : h) hole.push_back(point_json(p));
    holes.push_back(hole);
  }
  json out = {{"outer", outer},
              {"holes", holes},
              {"source_edge", domain.source_edge},
              {"sink_edge", domain.sink_edge}};
  if (R) out["R"] = *R;
  return out;
}

json critical_graph_to_json(const poly::CriticalGraph& graph) {
  auto name = [](int node) {
    if (node == poly::kTop) return std::string("T");
    if (node == poly::kBottom) return std::string("B");
    return "H" + std::to_string(node - 2);
  };
  json edges = json::array();
  for (int i = 0; i < graph.num_nodes; ++i) {
    for (int j = i + 1; j < graph.num_nodes; ++j) {
      const geom::Clearance& c = graph.edge(i, j);
      edges.push_back({{"from", name(i)},
                       {"to", name(j)},
                       {"length", c.length},
                       {"witness", {point_json(c.from), point_json(c.to)}}});
    }
  }
  return {{"nodes", graph.num_nodes}, {"edges", edges}};
}

json polygonal_solution_to_json(const poly::AmbushMinCut& cut,
                                const std::vector<poly::AmbushPoint>& placement) {
  json segments = json::array();
  for (const geom::Segment& s : cut.segments) {
    segments.push_back({point_json(s.a), point_json(s.b)});
  }
  json nodes = json::array();
  for (int n : cut.nodes) {
    nodes.push_back(n == poly::kTop      ? std::string("T")
                    : n == poly::kBottom ? std::string("B")
                                         : "H" + std::to_string(n - 2));
  }
  json points = json::array();
  for (const poly::AmbushPoint& a : placement) {
    points.push_back({{"x", a.point.x},
                      {"y", a.point.y},
                      {"probability", a.probability},
                      {"segment", a.segment}});
  }
  return {{"R", cut.R},
          {"capacity", cut.capacity},
          {"value", 1.0 / static_cast<double>(cut.capacity)},
          {"cut", {{"nodes", nodes}, {"segments", segments}, {"counts", cut.per_segment_count}}},
          {"placement", points}};
}

sample::SampledGraph parse_graph(const json& j) {
  sample::SampledGraph g;
  const json& points = require(j, "points");
  if (!points.is_object()) parse_error("points", "expected an object keyed by id");
  std::map<int, geom::Point> by_id;
  for (const auto& [key, value] : points.items()) {
    by_id[id_from_key(key, "points")] = point(value, "points." + key);
  }
  int expected = 0;
  for (const auto& [id, p] : by_id) {
    if (id != expected++) parse_error("points", "ids must be 0..n-1");
    g.points.push_back(p);
  }
  const int n = static_cast<int>(g.points.size());
  auto check_id = [&](int v, const std::string& field) {
    if (v < 0 || v >= n) parse_error(field, "unknown vertex " + std::to_string(v));
  };
  const json& edges = require(j, "edges");
  if (!edges.is_array()) parse_error("edges", "expected an array of [u, v] pairs");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string field = "edges[" + std::to_string(i) + "]";
    const auto pair = index_pair(edges[i], field);
    check_id(pair[0], field);
    check_id(pair[1], field);
    g.edges.push_back({pair[0], pair[1]});
  }
  g.source_set = id_list(require(j, "source_set"), "source_set");
  g.sink_set = id_list(require(j, "sink_set"), "sink_set");
  for (int v : g.source_set) check_id(v, "source_set");
  for (int v : g.sink_set) check_id(v, "sink_set");
  if (j.contains("builder")) {
    if (!j["builder"].is_string()) parse_error("builder", "expected a string");
    g.builder = sample::parse_builder(j["builder"].get<std::string>());
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) parse_error("seed", "expected a nonnegative integer");
    g.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("params")) {
    const json& params = j["params"];
    if (!params.is_object()) parse_error("params", "expected an object");
    for (const auto& [key, value] : params.items()) {
      g.params[key] = number(value, "params." + key);
    }
  }
  return g;
}

json graph_to_json(const sample::SampledGraph& graph) {
  json points = json::object();
  for (std::size_t v = 0; v < graph.points.size(); ++v) {
    points[std::to_string(v)] = point_json(graph.points[v]);
  }
  json edges = json::array();
  for (const netflow::Edge& e : graph.edges) edges.push_back({e.from, e.to});
  json params = json::object();
  for (const auto& [key, value] : graph.params) params[key] = value;
  return {{"points", points},
          {"edges", edges},
          {"source_set", graph.source_set},
          {"sink_set", graph.sink_set},
          {"builder", sample::builder_name(graph.builder)},
          {"seed", graph.seed},
          {"params", params}};
}

scag::AmbushSiteSet parse_sites(const json& j) {
  scag::AmbushSiteSet s;
  const json& sites = require(j, "sites");
  if (!sites.is_object()) parse_error("sites", "expected an object keyed by id");
  std::map<int, geom::Point> by_id;
  for (const auto& [key, value] : sites.items()) {
    by_id[id_from_key(key, "sites")] = point(value, "sites." + key);
  }
  int expected = 0;
  for (const auto& [id, p] : by_id) {
    if (id != expected++) parse_error("sites", "ids must be 0..n-1");
    s.sites.push_back(p);
  }
  s.alpha.assign(s.sites.size(), 1.0);
  if (j.contains("alpha")) {
    for (const auto& [id, a] : id_number_map(j["alpha"], "alpha")) {
      if (id < 0 || id >= static_cast<int>(s.sites.size())) {
        parse_error("alpha", "unknown site " + std::to_string(id));
      }
      if (a < 0.0) parse_error("alpha", "rewards must be nonnegative");
      s.alpha[id] = a;
    }
  }
  const std::optional<double> R = parse_radius(j);
  if (!R) parse_error("R", "missing");
  s.R = *R;
  return s;
}

json sites_to_json(const scag::AmbushSiteSet& sites) {
  json pts = json::object();
  json alpha = json::object();
  for (std::size_t k = 0; k < sites.sites.size(); ++k) {
    pts[std::to_string(k)] = point_json(sites.sites[k]);
    alpha[std::to_string(k)] = sites.alpha[k];
  }
  return {{"sites", pts}, {"alpha", alpha}, {"R", sites.R}};
}

json scag_solution_to_json(const scag::ScagInstance& instance,
                           const scag::ScagSolution& solution) {
  json p = json::object();
  for (std::size_t e = 0; e < instance.graph.edges.size(); ++e) {
    if (solution.p[e] < 1e-12) continue;
    const netflow::Edge& edge = instance.graph.edges[e];
    p[edge_key(edge.from, edge.to)] = solution.p[e];
  }
  json q = json::object();
  for (std::size_t k = 0; k < solution.q.size(); ++k) {
    if (solution.q[k] < 1e-12) continue;
    q[std::to_string(k)] = solution.q[k];
  }
  return {{"value", solution.value},
          {"p", p},
          {"q", q},
          {"vertices", instance.graph.points.size()},
          {"edges", instance.graph.edges.size()},
          {"sites", instance.sites.sites.size()},
          {"certificate", certificate_json(solution.full.certificate)}};
}

json report_to_json(const sim::Report& report) {
  return {{"trials", report.trials},
          {"mean", report.mean},
          {"std_error", report.std_error},
          {"analytic_value", report.analytic_value},
          {"z_score", report.z_score ? json(*report.z_score) : json(nullptr)}};
}

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("NA");
}

std::string convergence_csv(const std::vector<scag::ConvergencePoint>& points, bool timing) {
  std::ostringstream out;
  out << "n,seed,value,cag_value,runtime_ms\n";
  for (const scag::ConvergencePoint& p : points) {
    out << p.n << ',' << p.seed << ',' << (p.value ? format_number(*p.value) : "NA") << ','
        << format_number(p.cag_value) << ','
        << (timing ? format_number(p.runtime_ms) : "NA") << '\n';
  }
  return out.str();
}

}  // namespace ambush::io
