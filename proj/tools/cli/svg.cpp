#include "svg.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace fractarc::cli {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_svg(const ArcApproximation& arc, int size) {
  if (arc.n() != 1) throw std::invalid_argument("svg export needs a planar model (n = 1)");
  const double margin = 16.0;
  const double scale = size - 2 * margin;
  auto x = [&](const Rational& v) { return fmt(margin + v.get_d() * scale); };
  auto y = [&](const Rational& v) { return fmt(margin + (1.0 - v.get_d()) * scale); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  const int k = arc.depth();
  out << "  <g id=\"cells\" fill=\"none\" stroke=\"#555555\" stroke-width=\"0.6\">\n";
  for (const auto& c : arc.cells(k).cells) {
    const double w = Rational(c.box.hi[0] - c.box.lo[0]).get_d() * scale;
    const double h = Rational(c.box.hi[1] - c.box.lo[1]).get_d() * scale;
    out << "    <rect x=\"" << x(c.box.lo[0]) << "\" y=\"" << y(c.box.hi[1]) << "\" width=\"" << fmt(w)
        << "\" height=\"" << fmt(h) << "\"/>\n";
  }
  out << "  </g>\n";
  for (int g = 1; g <= k; ++g) {
    out << "  <g id=\"connectors-" << g << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\""
        << fmt(3.0 / g) << "\">\n";
    for (const auto& c : arc.connectors(g)) {
      out << "    <polyline points=\"";
      for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        if (i > 0) out << ' ';
        out << x(c.vertices[i][0]) << ',' << y(c.vertices[i][1]);
      }
      out << "\"/>\n";
    }
    out << "  </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace fractarc::cli
