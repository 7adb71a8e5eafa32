// Serial against OpenMP timings for the parallel kernels. Results of the two
// runs are compared as well.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "ambush/discrete_game.hpp"
#include "ambush/envgen.hpp"
#include "ambush/polygeom.hpp"
#include "ambush/samplers.hpp"
#include "ambush/scag.hpp"
#include "ambush/sim.hpp"

using namespace ambush;

namespace {

double time_ms(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* kernel, double serial, double parallel, bool same) {
  std::printf("%-16s %10.1f %10.1f %8.2fx  %s\n", kernel, serial, parallel, serial / parallel,
              same ? "same" : "DIFFERENT");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-16s %10s %10s %9s\n", "kernel", "serial ms", "omp ms", "speedup");

  const poly::PolygonalDomain d = envgen::random_rectangle({}, 4);
  const double R = 1.0;

  sample::SampledGraph gs, gp;
  const double prm_s = time_ms([&] { gs = sample::prm_star_build(d, 4000, 1, false); });
  const double prm_p = time_ms([&] { gp = sample::prm_star_build(d, 4000, 1, true); });
  row("prm*", prm_s, prm_p, gs.edges == gp.edges);

  scag::AmbushSiteSet sites = scag::cover_sites(d, R, 2.0, 0);
  std::vector<std::vector<std::size_t>> es, ep;
  const double ent_s = time_ms([&] { es = scag::entering_sets(gp, sites, false); });
  const double ent_p = time_ms([&] { ep = scag::entering_sets(gp, sites, true); });
  row("entering sets", ent_s, ent_p, es == ep);

  const scag::ScagInstance inst = scag::make_instance(
      sample::grid_sample(d, sample::grid_spacing_for(d, 400)), sites);
  const scag::ScagSolution sol = scag::solve_scag(inst);
  const game::ZoneGame zg = scag::zone_game(inst);
  const sim::PathDistribution dist = sim::to_path_distribution(zg.network, sol.full.p);
  std::vector<double> ts, tp;
  const double sim_s = time_ms([&] { ts = sim::trial_outcomes(zg, dist, sol.full.q, 200000, 3, false); });
  const double sim_p = time_ms([&] { tp = sim::trial_outcomes(zg, dist, sol.full.q, 200000, 3, true); });
  row("sim trials", sim_s, sim_p, ts == tp);

  scag::ConvergenceOptions o;
  o.builder = sample::Builder::kRrg;
  o.schedule = {200, 400, 800};
  o.seeds = {0, 1, 2, 3};
  std::vector<scag::ConvergencePoint> cs, cp;
  o.parallel = false;
  const double conv_s = time_ms([&] { cs = scag::convergence_run(d, R, sites, o); });
  o.parallel = true;
  const double conv_p = time_ms([&] { cp = scag::convergence_run(d, R, sites, o); });
  bool same = cs.size() == cp.size();
  for (std::size_t i = 0; same && i < cs.size(); ++i) same = cs[i].value == cp[i].value;
  row("convergence", conv_s, conv_p, same);
  return 0;
}
