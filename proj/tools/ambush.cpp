#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ambush/cli.hpp"

int main(int argc, char** argv) {
  using ambush::cli::RunConfig;
  CLI::App app{"Ambush games on networks and polygonal domains"};
  app.require_subcommand(1);

  RunConfig config;
  std::string schedule;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", config.input_path, "Input JSON")->required();
    sub->add_option("--output", config.output_path, "Output file (default: stdout)");
    sub->add_option("--seed", config.seed, "Random seed");
  };
  std::vector<CLI::Option*> svg_options;
  auto add_svg = [&](CLI::App* sub) {
    svg_options.push_back(
        sub->add_option("--svg", config.svg_path, "Also write an SVG (optional path)")
            ->expected(0, 1));
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--builder", config.builder, "grid, rrg or prmstar");
    sub->add_option("--schedule", schedule, "Comma-separated sample counts");
    sub->add_option("--radius", config.R, "Ambush radius R");
    sub->add_option("--density-factor", config.density_factor,
                    "Site lattice density relative to R");
  };

  CLI::App* discrete = app.add_subcommand("solve-discrete", "Solve a network ambush game");
  add_common(discrete);
  add_svg(discrete);
  discrete->add_option("--dump-lp", config.dump_lp_path, "Write the game LP as text");

  CLI::App* polygonal = app.add_subcommand("solve-polygonal", "Ambush min cut of a domain");
  add_common(polygonal);
  add_svg(polygonal);
  polygonal->add_option("--radius", config.R, "Ambush radius R");

  CLI::App* scag = app.add_subcommand("solve-scag", "Solve a sampled ambush game");
  add_common(scag);
  add_svg(scag);
  add_sampling(scag);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo check of a solved game");
  add_common(simulate);
  add_sampling(simulate);
  simulate->add_option("--trials", config.trials, "Number of trials");

  CLI::App* converge = app.add_subcommand("converge", "Sampled value against sample count");
  add_common(converge);
  add_sampling(converge);
  converge->add_option("--runs", config.runs, "Number of seeds, starting at --seed");
  converge->add_flag("--timing", config.timing, "Record runtimes instead of NA");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    const nlohmann::json j = {{"error", "ParseError"}, {"message", e.what()}, {"field", ""}};
    std::cerr << j.dump() << "\n";
    return 2;
  }
  config.command = app.get_subcommands().front()->get_name();
  for (const CLI::Option* opt : svg_options) config.svg = config.svg || opt->count() > 0;
  if (!schedule.empty()) {
    try {
      config.schedule = ambush::cli::parse_schedule(schedule);
    } catch (const ambush::Error& e) {
      const nlohmann::json j = {{"error", "ParseError"}, {"message", e.what()}, {"field", e.field()}};
      std::cerr << j.dump() << "\n";
      return 2;
    }
  }
  return ambush::cli::run(config, std::cout, std::cerr);
}
