#include "monodromy/svg.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace monodromy {

namespace {

constexpr double kSize = 400.0;    // canvas edge
constexpr double kRadius = 160.0;  // ray length
constexpr double kCx = kSize / 2.0;
constexpr double kCy = kSize / 2.0;

// SVG y grows downward; mathematical angles grow counterclockwise.
double px(double angle, double r) { return kCx + r * std::cos(angle); }
double py(double angle, double r) { return kCy - r * std::sin(angle); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << v;
  return os.str();
}

}  // namespace

std::string render_rays(const Mat& A0, double base_direction) {
  SectorLayout lay = sector_layout(A0, base_direction);
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize
      << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << " "
      << kSize << "\">\n";
  svg << "  <rect width=\"" << kSize << "\" height=\"" << kSize
      << "\" fill=\"white\"/>\n";

  // Initial sector highlighted as a filled wedge from sect0_lo to sect0_hi.
  {
    double a = lay.sect0_lo, b = lay.sect0_hi;
    int large = (b - a > kPi) ? 1 : 0;
    svg << "  <path class=\"sector0\" d=\"M " << fmt(kCx) << " " << fmt(kCy)
        << " L " << fmt(px(a, kRadius)) << " " << fmt(py(a, kRadius)) << " A "
        << fmt(kRadius) << " " << fmt(kRadius) << " 0 " << large << " 0 "
        << fmt(px(b, kRadius)) << " " << fmt(py(b, kRadius))
        << " Z\" fill=\"#ffe9a8\" stroke=\"none\"/>\n";
    double mid = 0.5 * (a + b);
    svg << "  <text x=\"" << fmt(px(mid, kRadius * 0.55)) << "\" y=\""
        << fmt(py(mid, kRadius * 0.55))
        << "\" font-size=\"14\" fill=\"#8a6d00\" text-anchor=\"middle\">"
        << "Sect<tspan baseline-shift=\"sub\" font-size=\"10\">0</tspan>"
        << "</text>\n";
  }

  // Reference circle.
  svg << "  <circle cx=\"" << fmt(kCx) << "\" cy=\"" << fmt(kCy)
      << "\" r=\"" << fmt(kRadius) << "\" fill=\"none\" stroke=\"#dddddd\"/>\n";

  // Rays d_1..d_{2l}, counterclockwise. The first ray carries the branch cut,
  // drawn dashed and extended past the circle.
  for (size_t k = 0; k < lay.rays.size(); ++k) {
    double a = lay.rays[k];
    bool is_cut = (k == 0);
    svg << "  <line class=\"" << (is_cut ? "ray branch-cut" : "ray")
        << "\" x1=\"" << fmt(kCx) << "\" y1=\"" << fmt(kCy) << "\" x2=\""
        << fmt(px(a, is_cut ? kRadius * 1.15 : kRadius)) << "\" y2=\""
        << fmt(py(a, is_cut ? kRadius * 1.15 : kRadius)) << "\" stroke=\""
        << (is_cut ? "#c0392b" : "#2c3e50") << "\" stroke-width=\"2\""
        << (is_cut ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    svg << "  <text x=\"" << fmt(px(a, kRadius + 22.0)) << "\" y=\""
        << fmt(py(a, kRadius + 22.0))
        << "\" font-size=\"13\" text-anchor=\"middle\" dominant-baseline=\"middle\">"
        << "d<tspan baseline-shift=\"sub\" font-size=\"10\">" << (k + 1)
        << "</tspan></text>\n";
  }

  // Base direction marker.
  {
    double a = lay.base_direction;
    svg << "  <line class=\"base-direction\" x1=\"" << fmt(kCx) << "\" y1=\""
        << fmt(kCy) << "\" x2=\"" << fmt(px(a, kRadius * 0.85)) << "\" y2=\""
        << fmt(py(a, kRadius * 0.85))
        << "\" stroke=\"#2980b9\" stroke-width=\"1.5\""
        << " stroke-dasharray=\"2 3\"/>\n";
  }

  svg << "  <text x=\"10\" y=\"" << fmt(kSize - 12.0)
      << "\" font-size=\"11\" fill=\"#666666\">rays: " << lay.rays.size()
      << ", branch cut along d1 (dashed red), base direction dotted blue"
      << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void plot_rays(const Mat& A0, double base_direction, const std::string& out_path) {
  std::string doc = render_rays(A0, base_direction);
  std::ofstream f(out_path);
  if (!f) throw ConfigError("svg: cannot open output file '" + out_path + "'");
  f << doc;
}

}  // namespace monodromy
