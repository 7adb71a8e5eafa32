#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ambush/error.hpp"

namespace ambush::cli {

struct RunConfig {
  std::string command;  // solve-discrete, solve-polygonal, solve-scag, simulate, converge
  std::string input_path;
  std::string output_path;  // empty: standard output
  std::uint64_t seed = 0;
  std::string builder = "grid";
  std::vector<int> schedule;
  std::optional<double> R;  // overrides "R" in the input
  std::size_t trials = 100000;
  bool svg = false;
  std::string svg_path;  // empty: output path + ".svg", or ambush.svg
  double density_factor = 2.0;
  int runs = 1;  // converge: seeds seed, seed+1, ...
  bool timing = false;
  std::string dump_lp_path;  // solve-discrete: write the game LP here
};

// "100,200,400" -> {100, 200, 400}. Throws kParse (field "schedule").
std::vector<int> parse_schedule(const std::string& text);

// 0 success, 2 bad input, 3 infeasible instance, 4 internal failure.
int exit_code(ErrorKind kind);

// Executes one command. Errors are reported as a JSON object
// {"error", "message", "field"} on `err`, and the exit code is returned.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ambush::cli
