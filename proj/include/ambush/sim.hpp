#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ambush/discrete_game.hpp"
#include "ambush/netflow.hpp"

namespace ambush::sim {

struct PathDistribution {
  std::vector<netflow::Path> paths;               // vertex ids, source first
  std::vector<std::vector<std::size_t>> edges;    // edge indices per path
  std::vector<double> weights;                    // sums to 1
};

// Decomposes a unit s-t flow. Throws kInvalidFlow if p is not one.
PathDistribution to_path_distribution(const netflow::VertexCapNetwork& net,
                                      const std::vector<double>& p);

struct Report {
  std::size_t trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double analytic_value = 0.0;
  // (mean - analytic) / std_error. When the standard error is at rounding
  // level (below 1e-12 (1 + |mean|)): 0 if mean and analytic agree within
  // 1e-12 (1 + |analytic|), empty otherwise.
  std::optional<double> z_score;
};

// Each trial draws a path from BLUE's decomposition and a zone from q, using
// the counter-based stream (seed, trial), and scores alpha_k times the
// number of entering edges of zone k on the path. Outcomes are summed in
// trial order, so the parallel and serial runs return identical reports.
Report simulate(const game::ZoneGame& game, const std::vector<double>& p,
                const std::vector<double>& q, double analytic_value,
                std::size_t trials, std::uint64_t seed, bool parallel = true);

// Per-trial outcomes, exposed for tests.
std::vector<double> trial_outcomes(const game::ZoneGame& game, const PathDistribution& dist,
                                   const std::vector<double>& q, std::size_t trials,
                                   std::uint64_t seed, bool parallel = true);

Report summarize(const std::vector<double>& outcomes, double analytic_value);

}  // namespace ambush::sim
