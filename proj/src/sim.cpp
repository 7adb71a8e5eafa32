#include "ambush/sim.hpp"

#include <algorithm>
#include <cmath>

#include "ambush/error.hpp"
#include "ambush/rng.hpp"

namespace ambush::sim {
namespace {

// Index drawn from cumulative weights by inverse CDF.
std::size_t pick(const std::vector<double>& cumulative, double u) {
  const double target = u * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

std::vector<double> cumulate(const std::vector<double>& w) {
  std::vector<double> c(w.size());
  double run = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    run += std::max(w[i], 0.0);
    c[i] = run;
  }
  return c;
}

}  // namespace

PathDistribution to_path_distribution(const netflow::VertexCapNetwork& net,
                                      const std::vector<double>& p) {
  if (p.size() != net.num_edges()) {
    throw Error(ErrorKind::kInvalidFlow, "p has wrong length", "p");
  }
  const double value = netflow::net_outflow(net, p);
  if (std::abs(value - 1.0) > 1e-8) {
    throw Error(ErrorKind::kInvalidFlow, "p does not carry a unit of flow", "p");
  }
  const std::vector<netflow::WeightedPath> parts =
      netflow::flow_decompose(net, netflow::Flow{p, value});
  PathDistribution dist;
  double total = 0.0;
  for (const netflow::WeightedPath& part : parts) total += part.weight;
  for (const netflow::WeightedPath& part : parts) {
    dist.paths.push_back(part.vertices);
    dist.edges.push_back(part.edges);
    dist.weights.push_back(part.weight / total);
  }
  return dist;
}

std::vector<double> trial_outcomes(const game::ZoneGame& game, const PathDistribution& dist,
                                   const std::vector<double>& q, std::size_t trials,
                                   std::uint64_t seed, bool parallel) {
  if (q.size() != game.zones.size()) {
    throw Error(ErrorKind::kInvalidStrategy, "q has wrong length", "q");
  }
  if (dist.paths.empty() || game.zones.empty()) {
    throw Error(ErrorKind::kInvalidStrategy, "empty strategy");
  }
  // Zones touched by each edge, then score[path][zone].
  std::vector<std::vector<std::size_t>> edge_zones(game.network.num_edges());
  for (std::size_t k = 0; k < game.zones.size(); ++k) {
    for (std::size_t e : game.zones[k].entering) edge_zones[e].push_back(k);
  }
  const std::size_t num_zones = game.zones.size();
  std::vector<double> score(dist.paths.size() * num_zones, 0.0);
  for (std::size_t j = 0; j < dist.paths.size(); ++j) {
    for (std::size_t e : dist.edges[j]) {
      for (std::size_t k : edge_zones[e]) score[j * num_zones + k] += game.zones[k].alpha;
    }
  }
  const std::vector<double> path_cdf = cumulate(dist.weights);
  const std::vector<double> zone_cdf = cumulate(q);
  if (!(zone_cdf.back() > 0.0) || !(path_cdf.back() > 0.0)) {
    throw Error(ErrorKind::kInvalidStrategy, "strategy carries no probability mass");
  }

  std::vector<double> out(trials);
  const auto n = static_cast<long long>(trials);
  auto one = [&](long long t) {
    const std::size_t j = pick(path_cdf, counter_uniform(seed, t, 0));
    const std::size_t k = pick(zone_cdf, counter_uniform(seed, t, 1));
    out[t] = score[j * num_zones + k];
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long long t = 0; t < n; ++t) one(t);
  } else {
    for (long long t = 0; t < n; ++t) one(t);
  }
  return out;
}

Report summarize(const std::vector<double>& outcomes, double analytic_value) {
  Report r;
  r.trials = outcomes.size();
  r.analytic_value = analytic_value;
  if (outcomes.empty()) return r;
  double sum = 0.0;
  for (double x : outcomes) sum += x;
  r.mean = sum / static_cast<double>(outcomes.size());
  double sq = 0.0;
  for (double x : outcomes) sq += (x - r.mean) * (x - r.mean);
  if (outcomes.size() > 1) {
    const double var = sq / static_cast<double>(outcomes.size() - 1);
    r.std_error = std::sqrt(var / static_cast<double>(outcomes.size()));
  }
  if (r.std_error > 1e-12 * (1.0 + std::abs(r.mean))) {
    r.z_score = (r.mean - analytic_value) / r.std_error;
  } else if (std::abs(r.mean - analytic_value) <= 1e-12 * (1.0 + std::abs(analytic_value))) {
    r.z_score = 0.0;
  }
  return r;
}

Report simulate(const game::ZoneGame& game, const std::vector<double>& p,
                const std::vector<double>& q, double analytic_value,
                std::size_t trials, std::uint64_t seed, bool parallel) {
  if (trials < 1) {
    throw Error(ErrorKind::kParse, "trials must be at least 1", "trials");
  }
  const PathDistribution dist = to_path_distribution(game.network, p);
  return summarize(trial_outcomes(game, dist, q, trials, seed, parallel), analytic_value);
}

}  // namespace ambush::sim
