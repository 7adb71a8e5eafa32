#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ambush/cli.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string env(const char* name) {
  const char* v = std::getenv(name);
  REQUIRE_MESSAGE(v != nullptr, name << " is not set");
  return v;
}

std::string data(const std::string& file) { return env("AMBUSH_DATA") + "/" + file; }

struct Result {
  int code;
  std::string out;
};

// Runs the installed binary; stderr is folded into the captured output.
Result run_binary(const std::string& args) {
  const std::string cmd = env("AMBUSH_BIN") + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ambush_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("solve-discrete") {
  const Result r = run_binary("solve-discrete --input " + data("seven_vertex.json"));
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(0.5));
  CHECK(j["q"]["5"].get<double>() + j["q"]["6"].get<double>() == doctest::Approx(1.0));
  CHECK(j["saddle_epsilon"].get<double>() <= 1e-9);
  CHECK(run_binary("solve-discrete --input " + data("seven_vertex.json")).out == r.out);
}

TEST_CASE("solve-polygonal with svg") {
  const fs::path out = scratch("poly.json");
  const fs::path svg = scratch("poly.svg");
  fs::remove(svg);
  const Result r = run_binary("solve-polygonal --input " + data("bar_and_triangle.json") +
                              " --output " + out.string() + " --svg " + svg.string());
  REQUIRE(r.code == 0);
  const json j = json::parse(slurp(out));
  CHECK(j["capacity"].get<int>() == 5);
  CHECK(j["value"].get<double>() == doctest::Approx(0.2));
  CHECK(j["placement"].size() == 5);
  CHECK(j.contains("critical_graph"));
  CHECK(slurp(svg).rfind("<svg", 0) == 0);

  const Result wider = run_binary("solve-polygonal --radius 0.5 --input " + data("two_bars.json"));
  REQUIRE(wider.code == 0);
  CHECK(json::parse(wider.out)["capacity"].get<int>() == 7);
}

TEST_CASE("solve-scag, simulate and converge") {
  const Result s = run_binary("solve-scag --schedule 225 --input " + data("bar_and_triangle.json"));
  REQUIRE(s.code == 0);
  const json j = json::parse(s.out);
  CHECK(j["value"].get<double>() >= j["cag_value"].get<double>() - 1e-9);
  CHECK(j["cag_value"].get<double>() == doctest::Approx(0.2));

  const Result sim = run_binary("simulate --trials 20000 --seed 4 --input " +
                                data("seven_vertex.json"));
  REQUIRE(sim.code == 0);
  const json rep = json::parse(sim.out);
  CHECK(rep["trials"].get<int>() == 20000);
  CHECK(std::abs(rep["mean"].get<double>() - 0.5) <= 4 * rep["std_error"].get<double>());
  CHECK(run_binary("simulate --trials 20000 --seed 4 --input " + data("seven_vertex.json")).out ==
        sim.out);

  const Result c = run_binary("converge --builder rrg --schedule 100,200 --runs 2 --input " +
                              data("two_bars.json"));
  REQUIRE(c.code == 0);
  std::istringstream lines(c.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n,seed,value,cag_value,runtime_ms");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.substr(line.size() - 3) == ",NA");
  }
  CHECK(rows == 4);
}

TEST_CASE("errors map to exit codes") {
  const fs::path bad = scratch("bad.json");
  std::ofstream(bad) << R"({"vertices": [1, 2], "edges": [[1, 2]], "source": 1})";
  Result r = run_binary("solve-discrete --input " + bad.string());
  CHECK(r.code == 2);
  const json e = json::parse(r.out);
  CHECK(e["error"] == "ParseError");
  CHECK(e["field"] == "sink");

  std::ofstream(bad, std::ios::trunc) << "{ not json";
  CHECK(run_binary("solve-discrete --input " + bad.string()).code == 2);

  std::ofstream(bad, std::ios::trunc)
      << R"({"vertices": [1, 2, 3], "edges": [[2, 3]], "source": 1, "sink": 3})";
  r = run_binary("solve-discrete --input " + bad.string());
  CHECK(r.code == 3);
  CHECK(json::parse(r.out)["error"] == "InfeasibleGame");

  CHECK(run_binary("solve-polygonal --input " + data("two_bars.json") + " --radius -1").code == 2);
  CHECK(run_binary("no-such-command").code == 2);
  CHECK(run_binary("solve-discrete").code == 2);
}

TEST_CASE("in-process run matches the binary") {
  ambush::cli::RunConfig config;
  config.command = "solve-discrete";
  config.input_path = data("seven_vertex.json");
  std::ostringstream out, err;
  CHECK(ambush::cli::run(config, out, err) == 0);
  CHECK(out.str() == run_binary("solve-discrete --input " + config.input_path).out);
  CHECK(ambush::cli::parse_schedule("25, 49,81") == std::vector<int>{25, 49, 81});
  CHECK_THROWS(ambush::cli::parse_schedule("25,x"));
}
