#include "chromatic/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "chromatic/error.hpp"

namespace chromatic::io {

namespace {

constexpr const char* kPalette[16] = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac", "#1170aa", "#fc7d0b", "#a3cce9", "#ffbc79", "#57606c", "#c85200",
};

struct Box {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  void grow(double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  void pad(double m) { xmin -= m; xmax += m; ymin -= m; ymax += m; }
  bool contains(double x, double y, double m) const {
    return x >= xmin - m && x <= xmax + m && y >= ymin - m && y <= ymax + m;
  }
};

void emit_polygon(std::ostringstream& os, const std::vector<Vec>& pts, const char* fill) {
  double cx = 0, cy = 0;
  for (const auto& p : pts) {
    cx += p[0];
    cy += p[1];
  }
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  std::vector<Vec> sorted = pts;
  std::sort(sorted.begin(), sorted.end(), [&](const Vec& u, const Vec& v) {
    return std::atan2(u[1] - cy, u[0] - cx) < std::atan2(v[1] - cy, v[0] - cx);
  });
  os << "<polygon points=\"";
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (i) os << " ";
    os << sorted[i][0] << "," << -sorted[i][1];  // SVG y axis points down
  }
  os << "\" fill=\"" << fill << "\" fill-opacity=\"0.85\" stroke=\"#222222\""
     << " stroke-width=\"0.008\"/>\n";
}

}  // namespace

std::string svg_render(const color::Coloring& c) {
  require(c.n() == 2, Errc::Unsupported, "SVG rendering is planar only (n = 2)");
  const lattice::Lattice& lat = c.tiling.ml.base;
  const double s = c.scale;
  const int k = c.k();

  Box box;  // scaled coordinates, math orientation
  const Vec c1 = lat.basis.col(0) * s;
  const Vec c2 = lat.basis.col(1) * s;
  box.grow(c1[0], c1[1]);
  box.grow(c2[0], c2[1]);
  box.grow(c1[0] + c2[0], c1[1] + c2[1]);
  box.pad(1.25);  // room for the unit reference circle

  double site_reach = 0.0;
  const bool partition = c.mode == color::Mode::CellPartition;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < c.colors; ++j) {
      const Vec t = partition ? c.tiling.site(i) : c.tiling.site(i) + c.translates[j];
      site_reach = std::max(site_reach, t.norm());
    }
  const double box_rad = std::hypot(std::max(std::abs(box.xmin), std::abs(box.xmax)),
                                    std::max(std::abs(box.ymin), std::abs(box.ymax)));
  const auto torus =
      lattice::Torus::make(lat, box_rad / s + site_reach + c.piece_radius + 1.0);

  std::ostringstream os;
  os.precision(5);
  os << std::fixed;
  const double w = box.xmax - box.xmin;
  const double h = box.ymax - box.ymin;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\""
     << static_cast<int>(800.0 * h / w) << "\" viewBox=\"" << box.xmin << " " << -box.ymax
     << " " << w << " " << h << "\">\n";
  os << "<rect x=\"" << box.xmin << "\" y=\"" << -box.ymax << "\" width=\"" << w
     << "\" height=\"" << h << "\" fill=\"#ffffff\"/>\n";

  for (int j = 0; j < c.colors; ++j) {
    for (int i = 0; i < k; ++i) {
      if (partition && i != j) continue;
      const Vec t = partition ? Vec::zero(2) : c.translates[j];
      for (const auto& shift : torus.shifts) {
        const Vec center = (c.tiling.site(i) + t + shift) * s;
        if (!box.contains(center[0], center[1], s * c.piece_radius)) continue;
        std::vector<Vec> pts;
        pts.reserve(c.pieces[i].vertices.size());
        for (const auto& v : c.pieces[i].vertices) pts.push_back((v + t + shift) * s);
        emit_polygon(os, pts, kPalette[j % 16]);
      }
    }
  }

  const double ccx = (box.xmin + box.xmax) / 2.0;
  const double ccy = (box.ymin + box.ymax) / 2.0;
  os << "<circle cx=\"" << ccx << "\" cy=\"" << -ccy
     << "\" r=\"1\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.015\""
     << " stroke-dasharray=\"0.05 0.05\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace chromatic::io
