#include "ambush/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <limits>
#include <sstream>

namespace ambush::svg {
namespace {

using geom::Point;

constexpr double kCanvas = 640.0;
constexpr double kMargin = 24.0;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

// Maps world coordinates onto the canvas, y pointing up.
class Frame {
 public:
  explicit Frame(const std::vector<Point>& pts) {
    double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
    double hi_x = -lo_x, hi_y = -lo_x;
    for (Point p : pts) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
    if (pts.empty()) lo_x = lo_y = hi_x = hi_y = 0.0;
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    scale_ = (kCanvas - 2 * kMargin) / span;
    min_x_ = lo_x;
    max_y_ = hi_y;
    width_ = (hi_x - lo_x) * scale_ + 2 * kMargin;
    height_ = (hi_y - lo_y) * scale_ + 2 * kMargin;
  }

  double x(Point p) const { return kMargin + (p.x - min_x_) * scale_; }
  double y(Point p) const { return kMargin + (max_y_ - p.y) * scale_; }
  double len(double d) const { return d * scale_; }

  std::string open() const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" +
           num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n";
  }

  std::string points(const std::vector<Point>& poly) const {
    std::string s;
    for (Point p : poly) s += num(x(p)) + "," + num(y(p)) + " ";
    if (!s.empty()) s.pop_back();
    return s;
  }

 private:
  double scale_ = 1.0, min_x_ = 0.0, max_y_ = 0.0, width_ = 0.0, height_ = 0.0;
};

void line(std::ostream& out, const Frame& f, Point a, Point b, const std::string& style) {
  out << "<line x1=\"" << num(f.x(a)) << "\" y1=\"" << num(f.y(a)) << "\" x2=\"" << num(f.x(b))
      << "\" y2=\"" << num(f.y(b)) << "\" " << style << "/>\n";
}

void circle(std::ostream& out, const Frame& f, Point c, double r, const std::string& style) {
  out << "<circle cx=\"" << num(f.x(c)) << "\" cy=\"" << num(f.y(c)) << "\" r=\"" << num(r)
      << "\" " << style << "/>\n";
}

void domain_shapes(std::ostream& out, const Frame& f, const poly::PolygonalDomain& d) {
  out << "<polygon points=\"" << f.points(d.outer)
      << "\" fill=\"#f4f4f4\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  for (const geom::Polygon& h : d.holes) {
    out << "<polygon points=\"" << f.points(h)
        << "\" fill=\"#9a9a9a\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  const geom::Segment s = poly::source_segment(d);
  const geom::Segment t = poly::sink_segment(d);
  line(out, f, s.a, s.b, "stroke=\"#2a7a2a\" stroke-width=\"4\"");
  line(out, f, t.a, t.b, "stroke=\"#a02020\" stroke-width=\"4\"");
}

std::vector<Point> domain_points(const poly::PolygonalDomain& d) {
  std::vector<Point> pts = d.outer;
  for (const geom::Polygon& h : d.holes) pts.insert(pts.end(), h.begin(), h.end());
  return pts;
}

std::map<int, Point> layered_layout(const netflow::VertexCapNetwork& net) {
  std::vector<int> depth(net.num_vertices(), -1);
  std::deque<std::size_t> queue{net.source_index()};
  depth[net.source_index()] = 0;
  int deepest = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : net.out_edges(v)) {
      const std::size_t w = net.edge_head(e);
      if (depth[w] >= 0) continue;
      depth[w] = depth[v] + 1;
      deepest = std::max(deepest, depth[w]);
      queue.push_back(w);
    }
  }
  // Unreached vertices go one layer past the deepest, the sink after all.
  for (int& d : depth) {
    if (d < 0) d = deepest + 1;
  }
  depth[net.sink_index()] = *std::max_element(depth.begin(), depth.end()) + 1;
  std::map<int, std::vector<std::size_t>> layers;
  for (std::size_t v = 0; v < depth.size(); ++v) layers[depth[v]].push_back(v);
  std::map<int, Point> pos;
  for (const auto& [layer, members] : layers) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      const double y = static_cast<double>(i) - 0.5 * static_cast<double>(members.size() - 1);
      pos[net.id_at(members[i])] = {static_cast<double>(layer), -y};
    }
  }
  return pos;
}

}  // namespace

std::string network_svg(const game::ZoneGame& game, const game::GameSolution& solution,
                        const std::map<int, Point>& positions) {
  const netflow::VertexCapNetwork& net = game.network;
  std::map<int, Point> pos = positions.empty() ? layered_layout(net) : positions;
  std::vector<Point> pts;
  for (std::size_t v = 0; v < net.num_vertices(); ++v) {
    const auto it = pos.find(net.id_at(v));
    if (it == pos.end()) return network_svg(game, solution, layered_layout(net));
    pts.push_back(it->second);
  }
  const Frame f(pts);
  std::map<int, double> zone_q;
  double q_max = 0.0;
  for (std::size_t k = 0; k < game.zones.size(); ++k) {
    zone_q[game.zones[k].id] = solution.q[k];
    q_max = std::max(q_max, solution.q[k]);
  }

  std::ostringstream out;
  out << f.open();
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    const Point a = pts[net.edge_tail(e)];
    const Point b = pts[net.edge_head(e)];
    const double p = e < solution.p.size() ? solution.p[e] : 0.0;
    line(out, f, a, b, "stroke=\"#c8c8c8\" stroke-width=\"1\"");
    if (p > 1e-12) {
      line(out, f, a, b,
           "stroke=\"#1f4e9a\" stroke-opacity=\"0.85\" stroke-width=\"" + num(1.0 + 9.0 * p) +
               "\"");
    }
  }
  for (std::size_t v = 0; v < net.num_vertices(); ++v) {
    const int id = net.id_at(v);
    const double q = zone_q.count(id) ? zone_q[id] : 0.0;
    const double shade = q_max > 0.0 ? q / q_max : 0.0;
    const int level = static_cast<int>(255.0 * (1.0 - shade));
    char fill[16];
    std::snprintf(fill, sizeof fill, "#ff%02x%02x", level, level);
    std::string style = std::string("fill=\"") + fill + "\" stroke=\"black\"";
    if (id == net.source() || id == net.sink()) style = "fill=\"#dddddd\" stroke=\"black\"";
    circle(out, f, pts[v], 10.0, style);
    out << "<text x=\"" << num(f.x(pts[v])) << "\" y=\"" << num(f.y(pts[v]) + 4.0)
        << "\" font-size=\"10\" text-anchor=\"middle\">" << id << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string domain_svg(const poly::PolygonalDomain& domain, const poly::AmbushMinCut* cut,
                       const std::vector<poly::AmbushPoint>& placement) {
  const Frame f(domain_points(domain));
  std::ostringstream out;
  out << f.open();
  domain_shapes(out, f, domain);
  if (cut != nullptr) {
    for (const geom::Segment& s : cut->segments) {
      line(out, f, s.a, s.b, "stroke=\"#333333\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"");
    }
    for (const poly::AmbushPoint& a : placement) {
      circle(out, f, a.point, f.len(cut->R),
             "fill=\"#d04040\" fill-opacity=\"0.25\" stroke=\"#a02020\"");
      circle(out, f, a.point, 2.5, "fill=\"#a02020\"");
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string scag_svg(const poly::PolygonalDomain& domain, const scag::ScagInstance& instance,
                     const scag::ScagSolution& solution) {
  const Frame f(domain_points(domain));
  const sample::SampledGraph& g = instance.graph;
  std::ostringstream out;
  out << f.open();
  domain_shapes(out, f, domain);
  double q_max = 0.0;
  for (double q : solution.q) q_max = std::max(q_max, q);
  for (std::size_t k = 0; k < instance.sites.sites.size(); ++k) {
    const double q = k < solution.q.size() ? solution.q[k] : 0.0;
    if (q <= 1e-12) continue;
    circle(out, f, instance.sites.sites[k], f.len(instance.sites.R),
           "fill=\"#d04040\" fill-opacity=\"" + num(0.6 * q / q_max) + "\" stroke=\"none\"");
  }
  for (const netflow::Edge& e : g.edges) {
    if (e.from < e.to) {
      line(out, f, g.points[e.from], g.points[e.to], "stroke=\"#cccccc\" stroke-width=\"0.5\"");
    }
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const double p = e < solution.p.size() ? solution.p[e] : 0.0;
    if (p <= 1e-12) continue;
    line(out, f, g.points[g.edges[e].from], g.points[g.edges[e].to],
         "stroke=\"#1f4e9a\" stroke-width=\"" + num(0.5 + 6.0 * p) + "\"");
  }
  for (const Point& s : instance.sites.sites) circle(out, f, s, 1.2, "fill=\"#a02020\"");
  out << "</svg>\n";
  return out.str();
}

}  // namespace ambush::svg
