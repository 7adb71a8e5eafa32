#include "ambush/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ambush/io.hpp"
#include "ambush/lp.hpp"
#include "ambush/svg.hpp"

namespace ambush::cli {
namespace {

using io::json;

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.output_path.empty()) {
    out << text;
  } else {
    io::write_text_file(config.output_path, text);
  }
}

void emit_svg(const RunConfig& config, const std::string& text) {
  if (!config.svg) return;
  std::string path = config.svg_path;
  if (path.empty()) path = config.output_path.empty() ? "ambush.svg" : config.output_path + ".svg";
  io::write_text_file(path, text);
}

double radius(const RunConfig& config, const json& input) {
  std::optional<double> R = config.R ? config.R : io::parse_radius(input);
  if (!R) throw Error(ErrorKind::kParse, "no radius: pass --radius or set R", "R");
  if (!(*R > 0.0)) throw Error(ErrorKind::kInvalidReach, "R must be positive", "R");
  return *R;
}

// Site set from the input when present, otherwise the covering lattice
// joined with the continuous optimal placement.
scag::AmbushSiteSet site_set(const RunConfig& config, const json& input,
                             const poly::PolygonalDomain& domain, double R) {
  if (input.contains("sites")) {
    json copy = input;
    copy["R"] = R;
    return io::parse_sites(copy);
  }
  scag::AmbushSiteSet sites = scag::cover_sites(domain, R, config.density_factor, config.seed);
  std::vector<geom::Point> extra;
  for (const poly::AmbushPoint& a : poly::red_placement(poly::ambush_min_cut(domain, R))) {
    extra.push_back(a.point);
  }
  scag::add_sites(sites, domain, extra);
  return sites;
}

sample::SampledGraph sampled_graph(const RunConfig& config, const json& input,
                                   const poly::PolygonalDomain& domain) {
  if (input.contains("points")) {
    sample::SampledGraph g = io::parse_graph(input);
    sample::check_graph(g, domain);
    return g;
  }
  if (config.schedule.empty()) {
    throw Error(ErrorKind::kParse, "no graph in the input: pass --schedule N to build one",
                "schedule");
  }
  const int n = config.schedule.front();
  switch (sample::parse_builder(config.builder)) {
    case sample::Builder::kGrid:
      return sample::grid_sample(domain, sample::grid_spacing_for(domain, n));
    case sample::Builder::kRrg:
      return sample::rrg_build(domain, n, sample::default_eta(domain), config.seed);
    case sample::Builder::kPrmStar:
      return sample::prm_star_build(domain, n, config.seed);
  }
  throw Error(ErrorKind::kParse, "unknown builder", "builder");
}

struct ScagRun {
  poly::PolygonalDomain domain;
  double R;
  scag::ScagInstance instance;
  scag::ScagSolution solution;
};

ScagRun solve_scag_input(const RunConfig& config, const json& input) {
  poly::PolygonalDomain domain = io::parse_domain(input);
  const double R = radius(config, input);
  scag::AmbushSiteSet sites = site_set(config, input, domain, R);
  scag::ScagInstance instance =
      scag::make_instance(sampled_graph(config, input, domain), std::move(sites));
  scag::ScagSolution solution = scag::solve_scag(instance);
  return {std::move(domain), R, std::move(instance), std::move(solution)};
}

int solve_discrete(const RunConfig& config, std::ostream& out) {
  const io::GameInstance g = io::parse_game(io::read_json_file(config.input_path));
  const game::ZoneGame zg = game::vertex_game(g.network, g.alpha);
  if (!config.dump_lp_path.empty()) {
    std::ostringstream text;
    lp::dump(game::build_lp(zg), text);
    io::write_text_file(config.dump_lp_path, text.str());
  }
  const game::GameSolution sol = game::solve_game(zg);
  emit(config, io::solution_to_json(zg, sol).dump(2) + "\n", out);
  emit_svg(config, svg::network_svg(zg, sol, g.positions));
  return 0;
}

int solve_polygonal(const RunConfig& config, std::ostream& out) {
  const json input = io::read_json_file(config.input_path);
  const poly::PolygonalDomain domain = io::parse_domain(input);
  const double R = radius(config, input);
  const poly::CriticalGraph graph = poly::critical_graph(domain);
  const poly::AmbushMinCut cut = poly::ambush_min_cut(graph, R);
  const std::vector<poly::AmbushPoint> placement = poly::red_placement(cut);
  json result = io::polygonal_solution_to_json(cut, placement);
  result["critical_graph"] = io::critical_graph_to_json(graph);
  emit(config, result.dump(2) + "\n", out);
  emit_svg(config, svg::domain_svg(domain, &cut, placement));
  return 0;
}

int solve_scag(const RunConfig& config, std::ostream& out) {
  const ScagRun r = solve_scag_input(config, io::read_json_file(config.input_path));
  json result = io::scag_solution_to_json(r.instance, r.solution);
  result["cag_value"] = poly::cag_value(r.domain, r.R);
  result["R"] = r.R;
  emit(config, result.dump(2) + "\n", out);
  emit_svg(config, svg::scag_svg(r.domain, r.instance, r.solution));
  return 0;
}

int simulate(const RunConfig& config, std::ostream& out) {
  const json input = io::read_json_file(config.input_path);
  sim::Report report;
  if (input.is_object() && input.contains("outer")) {
    const ScagRun r = solve_scag_input(config, input);
    const game::ZoneGame zg = scag::zone_game(r.instance);
    report = sim::simulate(zg, r.solution.full.p, r.solution.full.q, r.solution.value,
                           config.trials, config.seed, false);
  } else {
    const io::GameInstance g = io::parse_game(input);
    const game::ZoneGame zg = game::vertex_game(g.network, g.alpha);
    const game::GameSolution sol = game::solve_game(zg);
    report = sim::simulate(zg, sol.p, sol.q, sol.value, config.trials, config.seed, false);
  }
  json result = io::report_to_json(report);
  result["seed"] = config.seed;
  emit(config, result.dump(2) + "\n", out);
  return 0;
}

int converge(const RunConfig& config, std::ostream& out) {
  const json input = io::read_json_file(config.input_path);
  const poly::PolygonalDomain domain = io::parse_domain(input);
  const double R = radius(config, input);
  if (config.runs < 1) throw Error(ErrorKind::kParse, "runs must be at least 1", "runs");
  scag::ConvergenceOptions options;
  options.builder = sample::parse_builder(config.builder);
  options.schedule = config.schedule;
  options.seeds.clear();
  for (int i = 0; i < config.runs; ++i) options.seeds.push_back(config.seed + i);
  const scag::AmbushSiteSet sites = site_set(config, input, domain, R);
  const auto points = scag::convergence_run(domain, R, sites, options);
  emit(config, io::convergence_csv(points, config.timing), out);
  return 0;
}

void report_error(std::ostream& err, std::string_view kind, const std::string& message,
                  const std::string& field) {
  const json j = {{"error", kind}, {"message", message}, {"field", field}};
  err << j.dump() << "\n";
}

}  // namespace

std::vector<int> parse_schedule(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string item = text.substr(start, comma - start);
    std::erase(item, ' ');
    int n = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), n);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || n < 1) {
      throw Error(ErrorKind::kParse, "schedule entry '" + item + "' is not a positive integer",
                  "schedule");
    }
    out.push_back(n);
    start = comma + 1;
  }
  return out;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInfeasibleGame:
    case ErrorKind::kNoPath:
    case ErrorKind::kNoCutExists:
    case ErrorKind::kEmptyTerminalSet:
    case ErrorKind::kNoSites:
      return 3;
    case ErrorKind::kInvariantViolation:
    case ErrorKind::kInvalidFlow:
      return 4;
    default:
      return 2;
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.input_path.empty()) {
      throw Error(ErrorKind::kParse, "missing --input", "input");
    }
    if (config.command == "solve-discrete") return solve_discrete(config, out);
    if (config.command == "solve-polygonal") return solve_polygonal(config, out);
    if (config.command == "solve-scag") return solve_scag(config, out);
    if (config.command == "simulate") return simulate(config, out);
    if (config.command == "converge") return converge(config, out);
    throw Error(ErrorKind::kParse, "unknown command '" + config.command + "'", "command");
  } catch (const Error& e) {
    report_error(err, error_kind_name(e.kind()), e.what(), e.field());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    report_error(err, "InternalError", e.what(), "");
    return 4;
  }
}

}  // namespace ambush::cli
