#include "mobius/svg.hpp"

#include <cmath>
#include <sstream>

namespace mobius {

namespace {

constexpr double kSize = 480.0, kCenter = 240.0, kRadius = 200.0;

struct Pt {
  double x, y;
};

// Disc angle of the boundary point: w = exp(i (pi/2 - 2 theta)).
double disc_angle(BoundaryPoint p) { return 0.5 * kPi - 2.0 * p.theta(); }

Pt screen(double angle, double r = 1.0) {
  return {kCenter + kRadius * r * std::cos(angle), kCenter - kRadius * r * std::sin(angle)};
}

Pt screen_disc(std::complex<double> w) { return {kCenter + kRadius * w.real(), kCenter - kRadius * w.imag()}; }

void arc_path(std::ostringstream& out, const Arc& a, const std::string& color) {
  if (a.point_like) {
    const Pt p = screen(disc_angle(a.start_point()));
    out << "<circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"5\" fill=\"" << color << "\"/>\n";
    return;
  }
  const int steps = std::max(2, static_cast<int>(a.length / kPi * 256));
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"7\" stroke-opacity=\"0.7\" points=\"";
  for (int k = 0; k <= steps; ++k) {
    const Pt p = screen(disc_angle(BoundaryPoint(a.start)) - 2.0 * a.length * k / steps);
    out << p.x << ',' << p.y << ' ';
  }
  out << "\"/>\n";
}

void geodesic(std::ostringstream& out, BoundaryPoint from, BoundaryPoint to, const std::string& color) {
  const double pu = disc_angle(from), pv = disc_angle(to);
  const Pt u = screen(pu), v = screen(pv);
  const double cosang = std::cos(pu - pv);
  out << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" marker-end=\"url(#arrow)\" d=\"M "
      << u.x << ' ' << u.y;
  if (std::abs(1.0 + cosang) < 1e-9) {
    out << " L " << v.x << ' ' << v.y;
  } else {
    const double r = kRadius * std::abs(std::tan(0.5 * (pu - pv)));
    const Pt c{kCenter + kRadius * (std::cos(pu) + std::cos(pv)) / (1.0 + cosang),
               kCenter - kRadius * (std::sin(pu) + std::sin(pv)) / (1.0 + cosang)};
    const double cross = (u.x - c.x) * (v.y - c.y) - (u.y - c.y) * (v.x - c.x);
    out << " A " << r << ' ' << r << " 0 0 " << (cross > 0 ? 1 : 0) << ' ' << v.x << ' ' << v.y;
  }
  out << "\"/>\n";
}

}  // namespace

std::string render_svg(const SvgScene& scene) {
  std::ostringstream out;
  out.precision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize + 60
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize + 60 << "\">\n";
  out << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"8\" "
         "markerHeight=\"8\" orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\"/></marker></defs>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<circle cx=\"" << kCenter << "\" cy=\"" << kCenter << "\" r=\"" << kRadius
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const auto& [label, real] : {std::pair{"inf", kInf}, {"0", 0.0}, {"1", 1.0}, {"-1", -1.0}}) {
    const Pt p = screen(disc_angle(BoundaryPoint::from_real(real)), 1.08);
    out << "<text x=\"" << p.x << "\" y=\"" << p.y << "\" font-size=\"12\" text-anchor=\"middle\">" << label
        << "</text>\n";
  }
  for (const auto& layer : scene.layers) {
    for (const Arc& a : layer.arcs.arcs) arc_path(out, a, layer.color);
  }
  for (const auto& m : scene.markers) {
    const Pt p = screen(disc_angle(m.point));
    out << "<circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"4\" fill=\"" << m.color << "\"/>\n";
    const Pt t = screen(disc_angle(m.point), 1.16);
    out << "<text x=\"" << t.x << "\" y=\"" << t.y << "\" font-size=\"11\" text-anchor=\"middle\">" << m.label
        << "</text>\n";
  }
  for (const auto& ax : scene.axes) {
    const FixedPointData fp = fixed_points(ax.map);
    if (fp.map_class == MapClass::Hyperbolic) {
      geodesic(out, *fp.repelling, *fp.attracting, ax.color);
    } else if (fp.map_class == MapClass::Parabolic) {
      const double ang = disc_angle(*fp.attracting);
      const Pt c = screen(ang, 0.8);
      out << "<circle cx=\"" << c.x << "\" cy=\"" << c.y << "\" r=\"" << 0.2 * kRadius << "\" fill=\"none\" stroke=\""
          << ax.color << "\" stroke-width=\"2\"/>\n";
    } else if (fp.interior) {
      const std::complex<double> z = *fp.interior;
      const std::complex<double> i(0, 1);
      const Pt p = screen_disc(i * (z - i) / (z + i));  // same quarter turn as the boundary
      out << "<circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"4\" fill=\"" << ax.color << "\"/>\n";
    }
  }
  double y = kSize + 12;
  out << "<text x=\"10\" y=\"" << y << "\" font-size=\"13\">" << scene.title << "</text>\n";
  for (const auto& layer : scene.layers) {
    if (layer.label.empty()) continue;
    y += 14;
    out << "<text x=\"10\" y=\"" << y << "\" font-size=\"11\" fill=\"" << layer.color << "\">" << layer.label
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace mobius
