#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <deque>
#include <set>

#include "ambush/envgen.hpp"
#include "ambush/error.hpp"
#include "ambush/samplers.hpp"
#include "domains.hpp"

using namespace ambush;
using namespace ambush::sample;

namespace {

PolygonalDomain unit_square() { return envgen::corridor(1.0, 1.0); }

// Every edge checked at 64 interior points against the raw polygons.
bool edges_stay_free(const SampledGraph& g, const PolygonalDomain& d) {
  for (const netflow::Edge& e : g.edges) {
    for (int k = 0; k <= 64; ++k) {
      const Point p = geom::lerp(g.points[e.from], g.points[e.to], k / 64.0);
      const bool on_outer = geom::boundary_distance(p, d.outer) <= 1e-7;
      if (!on_outer && !geom::point_in_polygon(p, d.outer)) return false;
      for (const geom::Polygon& h : d.holes) {
        if (geom::boundary_distance(p, h) > 1e-7 && geom::point_in_polygon(p, h)) return false;
      }
    }
  }
  return true;
}

bool connected(const SampledGraph& g) {
  if (g.points.empty()) return true;
  std::vector<std::vector<int>> adj(g.points.size());
  for (const netflow::Edge& e : g.edges) adj[e.from].push_back(e.to);
  std::vector<bool> seen(g.points.size(), false);
  std::deque<int> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        queue.push_back(w);
      }
    }
  }
  return count == g.points.size();
}

std::set<std::pair<int, int>> edge_set(const SampledGraph& g) {
  std::set<std::pair<int, int>> s;
  for (const netflow::Edge& e : g.edges) s.insert({e.from, e.to});
  return s;
}

void check_symmetric(const SampledGraph& g) {
  const auto s = edge_set(g);
  for (const auto& [a, b] : s) CHECK(s.count({b, a}) == 1);
  CHECK(s.size() == g.edges.size());
}

}  // namespace

TEST_CASE("free space membership") {
  const PolygonalDomain d = domains::two_bars();
  const FreeSpace fs(d);
  CHECK(fs.contains({1, 1}));
  CHECK(fs.contains({0, 0}));
  CHECK(fs.contains({3.5, 5.0}));  // hole boundary belongs to free space
  CHECK_FALSE(fs.contains({5, 5}));
  CHECK_FALSE(fs.contains({13, 1}));
  CHECK(fs.area() == doctest::Approx(12 * 7.9 - 5 - 5));
}

TEST_CASE("segment collision checks") {
  const PolygonalDomain d = domains::two_bars();
  CHECK(collision_free({0.5, 0.5}, {11.5, 0.5}, d));
  CHECK_FALSE(collision_free({5, 3.5}, {5, 6.5}, d));
  // Grazes the corner (8.5, 5.5) of the upper bar.
  CHECK(collision_free({8.5, 7.5}, {8.5, 5.5}, d));
  CHECK(collision_free({7.5, 6.5}, {9.5, 4.5}, d));
  // Runs along the top edge of the upper bar.
  CHECK(collision_free({3.0, 5.5}, {9.0, 5.5}, d));
  // Slips through the hole diagonally from corner to corner.
  CHECK_FALSE(collision_free({3.5, 4.5}, {8.5, 5.5}, d));
  CHECK_FALSE(collision_free({-1, 1}, {1, 1}, d));
  CHECK(collision_free(envgen::corridor(1, 1).outer[0], {1, 1}, envgen::corridor(1, 1)));
}

TEST_CASE("grid lattice") {
  const SampledGraph g = grid_sample(unit_square(), 0.5);
  CHECK(g.points.size() == 9);
  // 12 axis-aligned and 8 diagonal connections, both directions.
  CHECK(g.edges.size() == 2 * (12 + 8));
  check_symmetric(g);
  CHECK(connected(g));
  CHECK(g.source_set.size() == 6);
  CHECK(g.sink_set.size() == 3);
  try {
    grid_sample(unit_square(), 5.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kEmptyTerminalSet);
  }
  const PolygonalDomain d = domains::bar_and_triangle();
  for (int n : {25, 49, 729}) {
    const SampledGraph big = grid_sample(d, grid_spacing_for(d, n));
    CHECK(big.points.size() <= static_cast<std::size_t>(n) + 2 * std::sqrt(n) + 1);
    CHECK(edges_stay_free(big, d));
    CHECK_NOTHROW(check_graph(big, d));
  }
}

TEST_CASE("rrg growth") {
  const SampledGraph one = rrg_build(unit_square(), 1, 0.3, 4);
  CHECK(one.points.size() == 2);
  CHECK(one.edges.size() == 2);

  const PolygonalDomain d = domains::bar_and_triangle();
  const double eta = default_eta(d);
  const SampledGraph full = rrg_build(d, 600, eta, 17);
  CHECK(edges_stay_free(full, d));
  check_symmetric(full);
  for (const netflow::Edge& e : full.edges) {
    CHECK(geom::distance(full.points[e.from], full.points[e.to]) <= eta + 1e-9);
  }
  for (int n : {50, 200, 400}) {
    const SampledGraph direct = rrg_build(d, n, eta, 17);
    const SampledGraph prefix = rrg_prefix(full, n);
    CHECK(direct.points == prefix.points);
    CHECK(edge_set(direct) == edge_set(prefix));
    CHECK(direct.source_set == prefix.source_set);
    CHECK(direct.sink_set == prefix.sink_set);
  }
  const SampledGraph a = rrg_build(d, 200, eta, 17);
  const SampledGraph b = rrg_build(d, 201, eta, 17);
  const auto ea = edge_set(a), eb = edge_set(b);
  for (const auto& e : ea) CHECK(eb.count(e) == 1);
  for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);
  CHECK(rrg_build(d, 200, eta, 18).points != a.points);
}

TEST_CASE("prm star") {
  const SampledGraph one = prm_star_build(unit_square(), 1, 0);
  CHECK(one.points.size() == 1);
  CHECK(one.edges.empty());

  const PolygonalDomain sq = envgen::corridor(1, 1);
  const double gamma = gamma_constant(sq);
  CHECK(gamma == doctest::Approx(2.0001 * std::sqrt(1.5) * std::sqrt(1.0 / std::acos(-1.0))));
  CHECK(prm_star_radius(sq, 100) == doctest::Approx(gamma * std::sqrt(std::log(100.0) / 100.0)));

  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const SampledGraph g = prm_star_build(sq, 500, seed);
    CHECK(connected(g));
  }

  const PolygonalDomain d = domains::two_bars();
  const SampledGraph par = prm_star_build(d, 800, 5, true);
  const SampledGraph ser = prm_star_build(d, 800, 5, false);
  CHECK(par.points == ser.points);
  CHECK(par.edges == ser.edges);
  CHECK(edges_stay_free(par, d));
  check_symmetric(par);
  const double r = prm_star_radius(d, 800);
  for (const netflow::Edge& e : par.edges) {
    CHECK(geom::distance(par.points[e.from], par.points[e.to]) <= r + 1e-9);
  }
}

TEST_CASE("builder names") {
  CHECK(parse_builder("grid") == Builder::kGrid);
  CHECK(parse_builder("rrg") == Builder::kRrg);
  CHECK(parse_builder("prmstar") == Builder::kPrmStar);
  CHECK(std::string(builder_name(Builder::kPrmStar)) == "prmstar");
  try {
    parse_builder("rrt");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kParse);
    CHECK(e.field() == "builder");
  }
}

TEST_CASE("graph check catches escaping edges") {
  const PolygonalDomain d = domains::two_bars();
  SampledGraph g = grid_sample(d, 1.0);
  CHECK_NOTHROW(check_graph(g, d));
  g.points.push_back({5, 5});
  g.edges.push_back({0, static_cast<int>(g.points.size() - 1)});
  CHECK_THROWS_AS(check_graph(g, d), Error);
}
