#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "ambush/envgen.hpp"
#include "ambush/error.hpp"
#include "ambush/polygeom.hpp"
#include "domains.hpp"

using namespace ambush;
using namespace ambush::poly;
using geom::Point;
using geom::Segment;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInvariantViolation;
}

std::vector<Point> samples(const Boundary& b, int per_edge) {
  std::vector<Point> pts;
  const std::size_t n = b.points.size();
  const std::size_t edges = b.closed ? n : (n > 1 ? n - 1 : 0);
  if (n == 1) pts.push_back(b.points[0]);
  for (std::size_t i = 0; i < edges; ++i) {
    const Point a = b.points[i];
    const Point c = b.points[(i + 1) % n];
    for (int k = 0; k <= per_edge; ++k) pts.push_back(geom::lerp(a, c, double(k) / per_edge));
  }
  return pts;
}

// Closest approach of two polygonal boundaries is attained at a vertex of
// one of them, so vertices against dense samples of the other side suffice.
double sampled_distance(const Boundary& a, const Boundary& b, int per_edge) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [u, v] : {std::pair{&a, &b}, std::pair{&b, &a}}) {
    const std::vector<Point> dense = samples(*v, per_edge);
    for (Point p : u->points) {
      for (Point q : dense) best = std::min(best, geom::distance(p, q));
    }
  }
  return best;
}

int ceil_count(double len, double R) {
  const double r = len / (2 * R);
  int n = static_cast<int>(std::ceil(r));
  if (std::abs(r - std::round(r)) <= 1e-9) n = static_cast<int>(std::round(r));
  return std::max(n, 1);
}

// Cheapest Top-Bottom path over every simple path of the critical graph.
int brute_capacity(const CriticalGraph& g, double R) {
  int best = std::numeric_limits<int>::max();
  std::vector<bool> used(g.num_nodes, false);
  std::function<void(int, int)> walk = [&](int v, int cost) {
    if (cost >= best) return;
    if (v == kBottom) {
      best = cost;
      return;
    }
    for (int w = 0; w < g.num_nodes; ++w) {
      if (used[w] || w == kTop) continue;
      used[w] = true;
      walk(w, cost + ceil_count(g.length(v, w), R));
      used[w] = false;
    }
  };
  used[kTop] = true;
  walk(kTop, 0);
  return best;
}

void check_placement(const AmbushMinCut& cut) {
  const std::vector<AmbushPoint> pts = red_placement(cut);
  double total = 0.0;
  for (const AmbushPoint& a : pts) total += a.probability;
  CHECK(std::abs(total - 1.0) <= 1e-12);
  CHECK(pts.size() == static_cast<std::size_t>(cut.capacity));
  for (std::size_t s = 0; s < cut.segments.size(); ++s) {
    std::vector<Point> on;
    for (const AmbushPoint& a : pts) {
      if (a.segment == s) on.push_back(a.point);
    }
    REQUIRE(!on.empty());
    const Segment& seg = cut.segments[s];
    CHECK(geom::distance(seg.a, on.front()) <= cut.R + 1e-12);
    CHECK(geom::distance(seg.b, on.back()) <= cut.R + 1e-12);
    for (std::size_t i = 0; i + 1 < on.size(); ++i) {
      CHECK(geom::distance(on[i], on[i + 1]) <= 2 * cut.R + 1e-12);
    }
    for (Point p : on) CHECK(geom::point_segment_distance(p, seg) <= 1e-12);
  }
}

}  // namespace

TEST_CASE("segment and polygon distances") {
  const Segment s{{0, 0}, {2, 0}};
  CHECK(geom::point_segment_distance({1, 1}, s) == doctest::Approx(1.0));
  CHECK(geom::point_segment_distance({3, 0}, s) == doctest::Approx(1.0));
  CHECK(geom::segment_distance(s, {{1, -1}, {1, 1}}).length == 0.0);
  CHECK(geom::segments_intersect(s, {{2, 0}, {3, 1}}));
  CHECK_FALSE(geom::segments_intersect(s, {{0, 1}, {2, 1}}));

  const Boundary a{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true};
  const Boundary b{{{4, 0}, {5, 0}, {5, 1}, {4, 1}}, true};
  CHECK(polygon_distance(a, b).length == doctest::Approx(3.0));
  const Boundary dot{{{2, 3}}, true};
  const Boundary line{{{0, 0}, {4, 0}}, false};
  CHECK(polygon_distance(dot, line).length == doctest::Approx(3.0));
}

TEST_CASE("rotated triangles against boundary sampling") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    auto triangle = [&](Point c) {
      const double phase = 6.283185307179586 * u(rng);
      Boundary t{{}, true};
      for (int k = 0; k < 3; ++k) {
        const double ang = phase + k * 2.0943951023931953;
        const double r = 0.5 + u(rng);
        t.points.push_back({c.x + r * std::cos(ang), c.y + r * std::sin(ang)});
      }
      return t;
    };
    const Boundary a = triangle({0, 0});
    const Boundary b = triangle({3.5 + u(rng), 2 * u(rng) - 1});
    const Clearance c = polygon_distance(a, b);
    CHECK(std::abs(c.length - sampled_distance(a, b, 10000)) <= 1e-6);
    CHECK(geom::distance(c.from, c.to) == doctest::Approx(c.length));
  }
}

TEST_CASE("domain validation") {
  CHECK_NOTHROW(validate(domains::two_bars()));
  PolygonalDomain cw = domains::two_bars();
  std::reverse(cw.outer.begin(), cw.outer.end());
  CHECK(kind_of([&] { validate(cw); }) == ErrorKind::kInvalidDomain);

  PolygonalDomain gap = domains::two_bars();
  gap.source_edge = {0, 2};
  CHECK(kind_of([&] { validate(gap); }) == ErrorKind::kInvalidDomain);

  PolygonalDomain touching = domains::two_bars();
  touching.sink_edge = {0, 1};
  touching.source_edge = {1, 2};
  CHECK(kind_of([&] { validate(touching); }) == ErrorKind::kInvalidDomain);

  PolygonalDomain outside = domains::two_bars();
  outside.holes.push_back({{20, 20}, {21, 20}, {21, 21}});
  CHECK(kind_of([&] { validate(outside); }) == ErrorKind::kInvalidDomain);

  PolygonalDomain overlap = domains::two_bars();
  overlap.holes.push_back({{4, 4}, {5, 4}, {5, 5}, {4, 5}});
  CHECK(kind_of([&] { validate(overlap); }) == ErrorKind::kInvalidDomain);

  PolygonalDomain bowtie = domains::two_bars();
  bowtie.holes = {{{3, 3}, {5, 5}, {5, 3}, {3, 5}}};
  CHECK(kind_of([&] { validate(bowtie); }) == ErrorKind::kInvalidDomain);
}

TEST_CASE("critical graph sizes") {
  const CriticalGraph empty = critical_graph(envgen::corridor(10, 4));
  CHECK(empty.num_nodes == 2);
  CHECK(empty.length(kTop, kBottom) == doctest::Approx(4.0));

  PolygonalDomain one = envgen::corridor(10, 4);
  one.holes = {{{4, 1.5}, {6, 1.5}, {6, 2.5}, {4, 2.5}}};
  const CriticalGraph g1 = critical_graph(one);
  CHECK(g1.num_nodes == 3);
  CHECK(g1.length(kTop, 2) == doctest::Approx(1.5));
  CHECK(g1.length(2, kBottom) == doctest::Approx(1.5));

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PolygonalDomain d = envgen::random_rectangle({}, seed);
    const CriticalGraph g = critical_graph(d);
    CHECK(g.num_nodes == static_cast<int>(d.holes.size()) + 2);
    for (int i = 0; i < g.num_nodes; ++i) {
      for (int j = 0; j < g.num_nodes; ++j) {
        CHECK(g.length(i, j) == doctest::Approx(g.length(j, i)));
      }
    }
  }
}

TEST_CASE("critical graph distances against sampling") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const PolygonalDomain d = envgen::random_rectangle({}, seed);
    const CriticalGraph g = critical_graph(d);
    std::vector<Boundary> nodes{{top_chain(d), false}, {bottom_chain(d), false}};
    for (const geom::Polygon& h : d.holes) nodes.push_back({h, true});
    for (int i = 0; i < g.num_nodes; ++i) {
      for (int j = i + 1; j < g.num_nodes; ++j) {
        CHECK(std::abs(g.length(i, j) - sampled_distance(nodes[i], nodes[j], 2000)) <= 1e-5);
      }
    }
  }
}

TEST_CASE("segment counts") {
  CHECK(segment_ambush_count(2.3 * 2.0, 1.0) == 3);
  CHECK(segment_ambush_count(2.0, 1.0) == 1);
  CHECK(segment_ambush_count(0.0, 1.0) == 1);
  CHECK(segment_ambush_count(4.0 * (1 + 1e-12), 1.0) == 2);
  CHECK(ambush_cardinality({1.2 * 2, 0.4 * 2, 2.0 * 2}, 1.0) == 5);
  CHECK(kind_of([] { segment_ambush_count(1.0, 0.0); }) == ErrorKind::kInvalidReach);
}

TEST_CASE("cardinality sweep on the two-bar environment") {
  const PolygonalDomain d = domains::two_bars();
  CHECK(ambush_min_cut(d, 0.5).capacity == 7);
  CHECK(ambush_min_cut(d, 0.8).capacity == 5);
  CHECK(ambush_min_cut(d, 1.3).capacity == 3);
  CHECK(cag_value(d, 1.3) == 1.0 / 3.0);
  CHECK(ambush_min_cut(domains::bar_and_triangle(), 1.3).capacity == 5);
  CHECK(cag_value(domains::bar_and_triangle(), 1.3) == 0.2);
  check_placement(ambush_min_cut(d, 0.5));
}

TEST_CASE("empty corridor") {
  CHECK(ambush_min_cut(envgen::corridor(20, 10), 1.0).capacity == 5);
  CHECK(cag_value(envgen::corridor(20, 10), 1.0) == 0.2);
  CHECK(cag_value(envgen::corridor(20, 10), 5.0) == 1.0);
  CHECK(cag_value(envgen::corridor(20, 10), 7.0) == 1.0);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> W(0.5, 20.0), R(0.1, 4.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double w = W(rng), r = R(rng);
    const AmbushMinCut cut = ambush_min_cut(envgen::corridor(25.0, w), r);
    CHECK(cut.capacity == std::max(1, static_cast<int>(std::ceil(w / (2 * r)))));
  }
}

TEST_CASE("min cut matches path enumeration") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> R(0.2, 2.0);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const CriticalGraph g = critical_graph(envgen::random_rectangle({}, seed));
    for (int k = 0; k < 4; ++k) {
      const double r = R(rng);
      const AmbushMinCut cut = ambush_min_cut(g, r);
      CHECK(cut.capacity == brute_capacity(g, r));
      CHECK(cut.nodes.front() == kTop);
      CHECK(cut.nodes.back() == kBottom);
      int sum = 0;
      for (int c : cut.per_segment_count) sum += c;
      CHECK(sum == cut.capacity);
    }
  }
}

TEST_CASE("placement by formula") {
  AmbushMinCut one;
  one.segments = {{{0, 0}, {2, 0}}};
  one.per_segment_count = {1};
  one.capacity = 1;
  one.R = 1.0;
  const auto p1 = red_placement(one);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0].point.x == doctest::Approx(1.0));
  CHECK(p1[0].probability == 1.0);

  AmbushMinCut three;
  three.segments = {{{0, 0}, {4.6, 0}}};
  three.per_segment_count = {3};
  three.capacity = 3;
  three.R = 1.0;
  const auto p3 = red_placement(three);
  REQUIRE(p3.size() == 3);
  CHECK(p3[0].point.x == doctest::Approx(4.6 / 6));
  CHECK(p3[1].point.x == doctest::Approx(4.6 / 2));
  CHECK(p3[2].point.x == doctest::Approx(4.6 * 5 / 6));
  check_placement(three);
}

TEST_CASE("placement covers random cuts") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> R(0.15, 2.0);
  for (int trial = 0; trial < 60; ++trial) {
    const PolygonalDomain d = envgen::random_rectangle({}, trial);
    check_placement(ambush_min_cut(d, R(rng)));
  }
}
