#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ambush/discrete_game.hpp"
#include "ambush/polygeom.hpp"
#include "ambush/samplers.hpp"
#include "ambush/scag.hpp"
#include "ambush/sim.hpp"

namespace ambush::io {

using json = nlohmann::json;

// Every parse failure throws Error(kParse) with the offending field name.
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// {"vertices":[ids], "edges":[[u,v],...], "capacities":{id:real},
//  "source":id, "sink":id}; missing capacities default to 1.
netflow::VertexCapNetwork parse_network(const json& j);
json network_to_json(const netflow::VertexCapNetwork& net);

struct GameInstance {
  netflow::VertexCapNetwork network;
  game::Rewards alpha;
  // Optional drawing positions, "positions":{id:[x,y]}.
  std::map<int, geom::Point> positions;
};

// Network JSON plus {"alpha":{id:real}}. Without "alpha", every vertex other
// than the terminals gets reward 1.
GameInstance parse_game(const json& j);

std::string edge_key(int from, int to);
std::pair<int, int> parse_edge_key(const std::string& key);

// {"value":v, "p":{"u-v":prob}, "q":{id:prob}, ...}. With `sparse`, entries
// below 1e-12 are omitted.
json solution_to_json(const game::ZoneGame& game, const game::GameSolution& solution,
                      bool sparse = false);

// Reads a solution back and re-checks it: p a unit flow in [0,1], q a
// distribution, value equal to RED's best response to p. Throws
// kInvalidStrategy when a check fails.
game::GameSolution parse_solution(const json& j, const game::ZoneGame& game);

// {"outer":[[x,y],...], "holes":[[[x,y],...],...], "source_edge":[i,j],
//  "sink_edge":[k,l], "R":real}. R is optional here.
poly::PolygonalDomain parse_domain(const json& j);
std::optional<double> parse_radius(const json& j);
json domain_to_json(const poly::PolygonalDomain& domain, std::optional<double> R = {});

json critical_graph_to_json(const poly::CriticalGraph& graph);
json polygonal_solution_to_json(const poly::AmbushMinCut& cut,
                                const std::vector<poly::AmbushPoint>& placement);

// {"points":{id:[x,y]}, "edges":[[u,v]], "source_set":[ids], "sink_set":[ids],
//  "builder":..., "seed":..., "params":{...}}; ids must be 0..n-1.
sample::SampledGraph parse_graph(const json& j);
json graph_to_json(const sample::SampledGraph& graph);

// {"sites":{id:[x,y]}, "alpha":{id:real}, "R":real}; alpha defaults to 1.
scag::AmbushSiteSet parse_sites(const json& j);
json sites_to_json(const scag::AmbushSiteSet& sites);

json scag_solution_to_json(const scag::ScagInstance& instance,
                           const scag::ScagSolution& solution);

json report_to_json(const sim::Report& report);

// n,seed,value,cag_value,runtime_ms; runtime_ms is "NA" unless `timing`,
// and an undefined value is "NA".
std::string convergence_csv(const std::vector<scag::ConvergencePoint>& points, bool timing);

// Shortest round-trip formatting, used for every number written to CSV.
std::string format_number(double x);

}  // namespace ambush::io
