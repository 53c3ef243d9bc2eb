#include "amoebot/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace amoebot {

namespace {

struct Frame {
  double minx = 0, maxy = 0, scale = 30, pad = 20;
  double x(Point p) const { return pad + (p.x - minx) * scale; }
  double y(Point p) const { return pad + (maxy - p.y) * scale; }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string render_svg(const SvgScene& scene) {
  Structure cells = scene.structure;
  std::sort(cells.begin(), cells.end());
  Frame f;
  double maxx = 0, miny = 0;
  bool first = true;
  for (auto c : cells) {
    Point p = embed(c);
    if (first) {
      f.minx = maxx = p.x;
      f.maxy = miny = p.y;
      first = false;
    }
    f.minx = std::min(f.minx, p.x);
    maxx = std::max(maxx, p.x);
    f.maxy = std::max(f.maxy, p.y);
    miny = std::min(miny, p.y);
  }
  f.minx -= 0.7;
  f.maxy += 0.7;
  const double width = (maxx + 0.7 - f.minx) * f.scale + 2 * f.pad;
  const double height = (f.maxy - (miny - 0.7)) * f.scale + 2 * f.pad;

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
    << num(height) << "\">\n";
  if (!scene.title.empty()) o << "<title>" << escape(scene.title) << "</title>\n";

  std::set<GridCoord> hi(scene.highlighted.begin(), scene.highlighted.end());
  // dual tessellation: faces point at the six neighbours, corners at 60 i degrees
  const double radius = 1.0 / std::sqrt(3.0);
  for (auto c : cells) {
    Point p = embed(c);
    o << "<polygon points=\"";
    for (int i = 0; i < 6; ++i) {
      const double a = i * M_PI / 3;
      Point q{p.x + radius * std::cos(a), p.y + radius * std::sin(a)};
      o << (i ? " " : "") << num(f.x(q)) << "," << num(f.y(q));
    }
    o << "\" fill=\"" << (hi.count(c) ? "#6fa8dc" : "#eeeeee") << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  }
  auto line = [&](GridCoord a, GridCoord b, const char* color, double w, double shift) {
    Point p = embed(a), q = embed(b);
    // offset to the right of the direction of travel so the two visits of a bond stay apart
    double dx = q.x - p.x, dy = q.y - p.y;
    double len = std::sqrt(dx * dx + dy * dy);
    double ox = dy / len * shift, oy = -dx / len * shift;
    p.x += ox;
    p.y += oy;
    q.x += ox;
    q.y += oy;
    o << "<line x1=\"" << num(f.x(p)) << "\" y1=\"" << num(f.y(p)) << "\" x2=\"" << num(f.x(q)) << "\" y2=\""
      << num(f.y(q)) << "\" stroke=\"" << color << "\" stroke-width=\"" << num(w) << "\"/>\n";
  };
  for (const Edge& e : scene.edges) line(e.a, e.b, "#38761d", 3, 0);
  std::set<std::pair<GridCoord, GridCoord>> path_links;
  for (const auto& path : scene.paths)
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      path_links.insert({path[i], path[i + 1]});
      path_links.insert({path[i + 1], path[i]});
    }
  for (const Occurrence& occ : scene.skeleton) {
    if (!occ.succ) continue;
    const bool fusion = path_links.count({occ.node, *occ.succ}) > 0;
    line(occ.node, *occ.succ, fusion ? "#1155cc" : "#cc0000", 2, 0.12);
  }
  if (scene.split) {
    Point p = embed(*scene.split);
    o << "<circle cx=\"" << num(f.x(p)) << "\" cy=\"" << num(f.y(p)) << "\" r=\"" << num(f.scale * 0.2)
      << "\" fill=\"#000000\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace amoebot
