// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ambush/cli.hpp"
#include "ambush/discrete_game.hpp"
#include "ambush/envgen.hpp"
#include "ambush/error.hpp"
#include "ambush/io.hpp"
#include "ambush/lp.hpp"
#include "ambush/netflow.hpp"
#include "ambush/polygeom.hpp"
#include "ambush/scag.hpp"
#include "ambush/sim.hpp"
#include "domains.hpp"
#include "oracles.hpp"

using namespace ambush;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Every optimal game solve made by the suites, checked under criterion 10.
struct CertLog {
  int checked = 0;
  int failed = 0;
  void add(const lp::Certificate& c, double value) {
    ++checked;
    if (!c.passes(value)) ++failed;
  }
};
CertLog g_certs;

game::GameSolution solve_logged(const game::ZoneGame& g, const game::SolveOptions& o = {}) {
  game::GameSolution s = game::solve_game(g, o);
  g_certs.add(s.certificate, s.value);
  return s;
}

scag::ScagSolution solve_scag_logged(const scag::ScagInstance& inst) {
  scag::ScagSolution s = scag::solve_scag(inst);
  g_certs.add(s.full.certificate, s.value);
  return s;
}

std::string data_dir() {
  const char* d = std::getenv("AMBUSH_DATA");
  return d ? d : "data";
}

netflow::VertexCapNetwork seven_vertex() {
  return netflow::VertexCapNetwork({1, 2, 3, 4, 5, 6, 7},
                                   {{1, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}, {3, 5},
                                    {3, 6}, {4, 5}, {4, 6}, {5, 7}, {6, 7}},
                                   1, 7);
}

// Random network with the sink reachable from the source.
netflow::VertexCapNetwork connected_network(std::mt19937_64& rng, int max_n, bool unit) {
  for (;;) {
    const int n = 4 + static_cast<int>(rng() % (max_n - 3));
    const double density = std::uniform_real_distribution<double>(0.2, 0.6)(rng);
    netflow::VertexCapNetwork net = oracle::random_network(rng, n, density, unit);
    if (oracle::reaches(net, {})) return net;
  }
}

Outcome c1_seven_vertex() {
  Outcome o;
  const auto t0 = Clock::now();
  cli::RunConfig config;
  config.command = "solve-discrete";
  config.input_path = data_dir() + "/seven_vertex.json";
  std::ostringstream out, err;
  const int code = cli::run(config, out, err);
  const double elapsed = seconds_since(t0);
  o.require(code == 0, "solve-discrete failed: " + err.str());
  if (code != 0) return o;
  const io::json j = io::json::parse(out.str());
  const io::GameInstance inst = io::parse_game(io::read_json_file(config.input_path));
  const game::ZoneGame g = game::vertex_game(inst.network, inst.alpha);
  const game::GameSolution s = io::parse_solution(j, g);
  const double eps = game::saddle_epsilon(g, s);
  solve_logged(g);
  o.require(std::abs(s.value - 0.5) <= 1e-8, fmt("value %.12g", s.value));
  o.require(eps <= 1e-7, fmt("saddle epsilon %.3g", eps));
  o.require(elapsed < 1.0, fmt("runtime %.3f s", elapsed));
  if (o.pass) o.detail = fmt("value %.10g, saddle eps %.2g, %.3f s", s.value, eps, elapsed);
  return o;
}

Outcome c2_maxflow_mincut() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto net = oracle::random_network(rng, 3 + static_cast<int>(rng() % 10),
                                            std::uniform_real_distribution<double>(0.15, 0.6)(rng),
                                            false);
    const double flow = netflow::max_flow(net).value;
    const double cut = oracle::min_cut_capacity(net);
    const double diff = std::isinf(cut) ? (flow > 0 ? 1.0 : 0.0) : std::abs(flow - cut);
    worst = std::max(worst, diff);
  }
  const double elapsed = seconds_since(t0);
  o.require(worst <= 1e-7, fmt("max |flow - cut| %.3g", worst));
  o.require(elapsed < 30.0, fmt("runtime %.1f s", elapsed));
  if (o.pass) o.detail = fmt("200 graphs, max |flow - cut| %.2g, %.2f s", worst, elapsed);
  return o;
}

Outcome c3_menger() {
  Outcome o;
  std::mt19937_64 rng(202);
  int graphs = 0;
  while (graphs < 200) {
    const auto net = oracle::random_network(rng, 3 + static_cast<int>(rng() % 10),
                                            std::uniform_real_distribution<double>(0.15, 0.6)(rng),
                                            true);
    ++graphs;
    const auto paths = netflow::vertex_disjoint_paths(net);
    const double cut = oracle::min_cut_capacity(net);
    const double expected = cut;
    o.require(static_cast<double>(paths.size()) == expected,
              fmt("graph %.0f: %.0f paths, cut %.0f", graphs, paths.size(), expected));
    std::set<int> used;
    std::set<std::pair<int, int>> edges;
    for (const auto& e : net.edges()) edges.insert({e.from, e.to});
    for (const auto& p : paths) {
      o.require(p.front() == net.source() && p.back() == net.sink(), "path endpoints");
      for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        o.require(edges.count({p[i], p[i + 1]}) == 1, "path uses a missing edge");
      }
      for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        o.require(used.insert(p[i]).second, "paths share a vertex");
      }
    }
  }
  if (o.pass) o.detail = "200 unit graphs, counts match the cut oracle, paths disjoint";
  return o;
}

Outcome c4_uniform_rewards() {
  Outcome o;
  std::mt19937_64 rng(303);
  double worst_lp = 0.0, worst_eq = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto net = connected_network(rng, 11, true);
    const double kappa = oracle::min_cut_capacity(net);
    const game::ZoneGame g = game::vertex_game(net, game::uniform_internal_rewards(net));
    const game::GameSolution s = solve_logged(g);
    worst_lp = std::max(worst_lp, std::abs(s.value - 1.0 / kappa));
    const game::Equidistributed e = game::equidistributed_strategies(net);
    o.require(static_cast<double>(e.kappa) == kappa, "equidistributed kappa");
    worst_eq = std::max(worst_eq, std::abs(game::expected_outcome(g, e.p, e.q) - 1.0 / kappa));
  }
  o.require(worst_lp <= 1e-7, fmt("LP value off 1/kappa by %.3g", worst_lp));
  o.require(worst_eq <= 1e-12, fmt("equidistributed pair off 1/kappa by %.3g", worst_eq));
  if (o.pass) o.detail = fmt("100 graphs, LP err %.2g, equidistributed err %.2g", worst_lp, worst_eq);
  return o;
}

Outcome c5_support_without_cut() {
  Outcome o;
  std::mt19937_64 rng(404);
  int built = 0;
  double worst = 0.0;
  while (built < 50) {
    const auto net = connected_network(rng, 10, true);
    std::set<int> support;
    for (int v : net.vertices()) {
      if (v != net.source() && v != net.sink() && rng() % 2) support.insert(v);
    }
    if (support.empty() || !oracle::reaches(net, support)) continue;
    ++built;
    o.require(!game::red_support_contains_cut(net, support), "support reported as a cut");
    game::Rewards alpha;
    for (int v : support) alpha[v] = 1.0;
    const game::GameSolution s = solve_logged(game::vertex_game(net, alpha));
    worst = std::max(worst, std::abs(s.value));
  }
  o.require(worst <= 1e-9, fmt("restricted value %.3g", worst));
  if (o.pass) o.detail = fmt("50 instances, max |value| %.2g", worst);
  return o;
}

Outcome c6_ambush_min_cut() {
  Outcome o;
  std::ostringstream detail;
  for (const auto& [name, d] : {std::pair{"two_bars", domains::two_bars()},
                                std::pair{"bar_and_triangle", domains::bar_and_triangle()}}) {
    int previous = std::numeric_limits<int>::max();
    detail << name << ":";
    for (double R : {0.5, 0.8, 1.3}) {
      const poly::AmbushMinCut cut = poly::ambush_min_cut(d, R);
      o.require(cut.capacity < previous, std::string(name) + " capacity not decreasing");
      o.require(poly::cag_value(d, R) == 1.0 / cut.capacity, "cag_value != 1/capacity");
      previous = cut.capacity;
      detail << " " << cut.capacity;
    }
    detail << "; ";
  }
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> width(0.5, 20.0), radius(0.1, 3.0);
  int mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const double W = width(rng), R = radius(rng);
    const int expected = static_cast<int>(std::ceil(W / (2 * R)));
    if (poly::ambush_min_cut(envgen::corridor(10.0, W), R).capacity != expected) ++mismatches;
  }
  o.require(mismatches == 0, fmt("%.0f corridor mismatches", mismatches));
  detail << "corridors 100/100";
  if (o.pass) o.detail = detail.str();
  return o;
}

Outcome c7_placement() {
  Outcome o;
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> coord(-10, 10), radius(0.2, 2.0);
  for (int i = 0; i < 100; ++i) {
    poly::AmbushMinCut cut;
    cut.R = radius(rng);
    const int segments = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < segments; ++k) {
      const geom::Segment s{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
      const int n = poly::segment_ambush_count(geom::distance(s.a, s.b), cut.R);
      cut.segments.push_back(s);
      cut.per_segment_count.push_back(n);
      cut.capacity += n;
    }
    const auto pts = poly::red_placement(cut);
    double total = 0.0;
    for (const auto& a : pts) total += a.probability;
    o.require(std::abs(total - 1.0) <= 1e-12, fmt("probability sum %.17g", total));
    o.require(pts.size() == static_cast<std::size_t>(cut.capacity), "point count");
    const double tol = 1e-9 * (1 + cut.R);
    for (std::size_t k = 0; k < cut.segments.size(); ++k) {
      std::vector<geom::Point> on;
      for (const auto& a : pts) {
        if (a.segment == k) on.push_back(a.point);
      }
      if (on.empty()) {
        o.require(false, "segment without points");
        continue;
      }
      o.require(geom::distance(cut.segments[k].a, on.front()) <= cut.R + tol, "start margin");
      o.require(geom::distance(cut.segments[k].b, on.back()) <= cut.R + tol, "end margin");
      for (std::size_t j = 0; j + 1 < on.size(); ++j) {
        o.require(geom::distance(on[j], on[j + 1]) <= 2 * cut.R + tol, "spacing");
      }
    }
  }
  if (o.pass) o.detail = "100 random cuts";
  return o;
}

struct Environment {
  std::uint64_t seed;
  poly::PolygonalDomain domain;
  double R;
};

std::vector<Environment> convergence_environments() {
  std::vector<Environment> envs;
  for (std::uint64_t seed = 0; envs.size() < 10 && seed < 200; ++seed) {
    const poly::PolygonalDomain d = envgen::random_rectangle({}, seed);
    const auto R = envgen::radius_in_band(poly::critical_graph(d), 0.8, 1.4, 0.35, 0.85);
    if (R) envs.push_back({seed, d, *R});
  }
  return envs;
}

scag::AmbushSiteSet site_set(const poly::PolygonalDomain& d, double R) {
  scag::AmbushSiteSet s = scag::cover_sites(d, R, 2.0, 0);
  std::vector<geom::Point> extra;
  for (const auto& a : poly::red_placement(poly::ambush_min_cut(d, R))) extra.push_back(a.point);
  scag::add_sites(s, d, extra);
  return s;
}

Outcome c8_convergence() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto envs = convergence_environments();
  o.require(envs.size() == 10, fmt("only %.0f environments", envs.size()));
  std::ostringstream detail;
  double worst_grid = 0.0, worst_rrg = 0.0;
  for (const Environment& env : envs) {
    const scag::AmbushSiteSet sites = site_set(env.domain, env.R);
    const double cag = poly::cag_value(env.domain, env.R);

    int n_final = 16;
    while (sample::grid_spacing_for(env.domain, n_final) > env.R / 2) n_final *= 2;
    scag::ConvergenceOptions grid;
    grid.builder = sample::Builder::kGrid;
    grid.schedule = {std::max(4, n_final / 16), std::max(8, n_final / 4), n_final};
    const auto gp = scag::convergence_run(env.domain, env.R, sites, grid);

    scag::ConvergenceOptions rrg;
    rrg.builder = sample::Builder::kRrg;
    rrg.schedule = {250, 500, 1000, 2000};
    rrg.seeds = {0, 1, 2, 3, 4};
    const auto rp = scag::convergence_run(env.domain, env.R, sites, rrg);

    const std::string tag = "env " + std::to_string(env.seed) + ": ";
    for (const auto* series : {&gp, &rp}) {
      for (const auto& p : *series) {
        if (p.value) o.require(*p.value >= cag - 1e-7, tag + fmt("value %.6g below cag %.6g", *p.value, cag));
      }
    }
    const double grid_ratio = gp.back().value ? *gp.back().value / cag : INFINITY;
    o.require(grid_ratio <= 1.05, tag + fmt("grid final ratio %.4f", grid_ratio));
    worst_grid = std::max(worst_grid, grid_ratio);

    std::vector<double> finals;
    for (std::size_t i = 0; i < rp.size(); ++i) {
      if (rp[i].n == 2000) finals.push_back(rp[i].value ? *rp[i].value : INFINITY);
      if (i % 4 == 0) continue;
      if (rp[i - 1].value) {
        o.require(rp[i].value && *rp[i].value <= *rp[i - 1].value + 1e-7,
                  tag + "rrg series not monotone");
      }
    }
    std::sort(finals.begin(), finals.end());
    const double rrg_ratio = finals[finals.size() / 2] / cag;
    o.require(rrg_ratio <= 1.05, tag + fmt("rrg median final ratio %.4f", rrg_ratio));
    worst_rrg = std::max(worst_rrg, rrg_ratio);
    std::printf("  env %2llu R=%.3f cag=%.4f grid n=%d ratio %.4f, rrg median ratio %.4f\n",
                static_cast<unsigned long long>(env.seed), env.R, cag, n_final, grid_ratio,
                rrg_ratio);
    std::fflush(stdout);
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 600.0, fmt("runtime %.0f s", elapsed));
  if (o.pass) {
    o.detail = fmt("10 envs, worst grid ratio %.4f, worst rrg median ratio %.4f, %.0f s",
                   worst_grid, worst_rrg, elapsed);
  }
  return o;
}

Outcome c9_monte_carlo() {
  Outcome o;
  std::mt19937_64 rng(909);
  int games = 0;
  double worst_z = 0.0;
  auto check = [&](const game::ZoneGame& g, const std::vector<double>& p,
                   const std::vector<double>& q, double value, std::uint64_t seed) {
    const sim::Report r = sim::simulate(g, p, q, value, 100000, seed);
    // With zero spread the report carries z = 0 only when mean and value
    // agree within 1e-12.
    const bool within = r.z_score && std::abs(*r.z_score) <= 4.0;
    o.require(within, fmt("game %.0f: |mean - value| %.3g, SE %.3g", games,
                          std::abs(r.mean - value), r.std_error));
    if (r.z_score) worst_z = std::max(worst_z, std::abs(*r.z_score));
    const std::string a = io::report_to_json(r).dump();
    const std::string b = io::report_to_json(sim::simulate(g, p, q, value, 100000, seed)).dump();
    o.require(a == b, "reports differ for a fixed seed");
    ++games;
  };
  {
    const game::ZoneGame g = game::vertex_game(seven_vertex(), game::uniform_internal_rewards(seven_vertex()));
    const auto s = solve_logged(g);
    check(g, s.p, s.q, s.value, 1);
  }
  while (games < 15) {
    const auto net = connected_network(rng, 10, false);
    game::Rewards alpha;
    for (int v : net.vertices()) {
      if (v != net.source() && v != net.sink()) alpha[v] = std::uniform_real_distribution<double>(0.2, 2.0)(rng);
    }
    const game::ZoneGame g = game::vertex_game(net, alpha);
    const auto s = solve_logged(g);
    check(g, s.p, s.q, s.value, games);
  }
  const auto d1 = domains::two_bars();
  const auto d2 = domains::bar_and_triangle();
  const std::vector<std::tuple<const poly::PolygonalDomain*, double, int>> scag_cases = {
      {&d1, 0.8, 100}, {&d1, 1.3, 225}, {&d2, 1.3, 225}, {&d2, 1.3, 400}, {&d1, 1.3, 400}};
  for (const auto& [d, R, n] : scag_cases) {
    const auto g = sample::grid_sample(*d, sample::grid_spacing_for(*d, n));
    const scag::ScagInstance inst = scag::make_instance(g, site_set(*d, R));
    const scag::ScagSolution s = solve_scag_logged(inst);
    check(scag::zone_game(inst), s.full.p, s.full.q, s.value, games);
  }
  if (o.pass) o.detail = fmt("%.0f games, max |z| %.2f", games, worst_z);
  return o;
}

Outcome c10_certificates() {
  Outcome o;
  std::mt19937_64 rng(1010);
  int agree = 0;
  for (int i = 0; i < 100; ++i) {
    const lp::LinearProgram prog =
        oracle::random_bounded_lp(rng, 1 + rng() % 8, 1 + rng() % 5);
    const auto expected = oracle::lp_by_vertices(prog.objective, prog.ineq_matrix, prog.ineq_rhs);
    const lp::LpSolution s = lp::solve(prog);
    if (!expected) {
      o.require(s.status == lp::Status::kInfeasible, "infeasible program not detected");
      ++agree;
      continue;
    }
    o.require(s.status == lp::Status::kOptimal, "feasible program not solved");
    if (s.status != lp::Status::kOptimal) continue;
    g_certs.add(s.certificate, s.objective_value);
    const double err = std::abs(s.objective_value - *expected);
    o.require(err <= 1e-7 * (1 + std::abs(*expected)), fmt("program %.0f off by %.3g", i, err));
    ++agree;
  }
  o.require(g_certs.failed == 0,
            fmt("%.0f of %.0f certificates failed", g_certs.failed, g_certs.checked));
  if (o.pass) {
    o.detail = fmt("%.0f/100 programs match vertex enumeration, %.0f certificates pass", agree,
                   g_certs.checked);
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"discrete example value", c1_seven_vertex},
      {"max-flow equals min vertex cut", c2_maxflow_mincut},
      {"vertex-disjoint paths", c3_menger},
      {"uniform-reward value 1/kappa", c4_uniform_rewards},
      {"support without a cut", c5_support_without_cut},
      {"ambush min cut", c6_ambush_min_cut},
      {"placement coverage", c7_placement},
      {"sampled game convergence", c8_convergence},
      {"monte carlo consistency", c9_monte_carlo},
      {"lp certification", c10_certificates},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    if (!r.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                r.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
