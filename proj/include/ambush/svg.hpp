#pragma once

#include <map>
#include <string>
#include <vector>

#include "ambush/discrete_game.hpp"
#include "ambush/polygeom.hpp"
#include "ambush/scag.hpp"

namespace ambush::svg {

// Edge stroke width proportional to p, vertex fill darkness proportional to
// the q of the zone sharing the vertex id. Without positions the vertices
// are laid out in BFS layers from the source.
std::string network_svg(const game::ZoneGame& game, const game::GameSolution& solution,
                        const std::map<int, geom::Point>& positions = {});

// Outline and holes, cut segments dashed, placement points as reach disks.
std::string domain_svg(const poly::PolygonalDomain& domain, const poly::AmbushMinCut* cut,
                       const std::vector<poly::AmbushPoint>& placement);

// Graph edges with width proportional to p, reach disks with opacity
// proportional to q.
std::string scag_svg(const poly::PolygonalDomain& domain, const scag::ScagInstance& instance,
                     const scag::ScagSolution& solution);

}  // namespace ambush::svg
