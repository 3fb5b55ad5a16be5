#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace webfaces {

namespace {

constexpr double kUnit = 12.0;
constexpr double kMargin = 10.0;

struct Pt {
  double x, y;
};

// Arc abscissae are in step units; SVG y grows downward from the baseline.
Pt on_arc(const Arc& a, double x, double base) {
  const double c = 0.5 * (a.start + a.end), r = 0.5 * (a.end - a.start);
  const double h = std::sqrt(std::max(0.0, r * r - (x - c) * (x - c)));
  return {kMargin + x * kUnit, base - h * kUnit};
}

}  // namespace

std::string render_svg(const Arrangement& A, bool shade_faces) {
  const int len = 3 * A.n();
  double max_r = 1.0;
  for (const Arc& a : A.arcs()) max_r = std::max(max_r, 0.5 * (a.end - a.start));
  const double width = 2 * kMargin + (len + 1) * kUnit;
  const double base = kMargin + max_r * kUnit;
  const double height = base + kMargin;

  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (shade_faces) {
    for (const FaceRecord& f : classify_faces(A)) {
      if (f.web_size <= 6) continue;
      os << "<path fill=\"#f3e6a8\" stroke=\"none\" d=\"";
      bool first = true;
      for (int h : A.face_cycle(f.face)) {
        const HalfEdge& e = A.half_edges()[h];
        const int v = e.origin;
        const int c = A.crossing_of_vertex(v);
        Pt p;
        if (c >= 0) {
          const CrossingPoint& cp = A.crossings()[c];
          p = on_arc(A.arcs()[cp.left_arc], cp.x.to_double(), base);
        } else {
          p = {kMargin + static_cast<double>(A.position(v + 1)) * kUnit, base};
        }
        os << (first ? "M" : " L") << p.x << ' ' << p.y;
        first = false;
      }
      os << " Z\"/>\n";
    }
  }

  os << "<line x1=\"" << kMargin << "\" y1=\"" << base << "\" x2=\"" << width - kMargin << "\" y2=\"" << base
     << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  for (const Arc& a : A.arcs()) {
    const double r = 0.5 * (a.end - a.start) * kUnit;
    os << "<path fill=\"none\" stroke=\"" << (a.color == Color::Red ? "#d62728" : "#1f5fbf")
       << "\" stroke-width=\"1\" d=\"M" << kMargin + a.start * kUnit << ' ' << base << " A" << r << ' ' << r
       << " 0 0 1 " << kMargin + a.end * kUnit << ' ' << base << "\"/>\n";
  }
  for (const CrossingPoint& cp : A.crossings()) {
    const Pt p = on_arc(A.arcs()[cp.left_arc], cp.x.to_double(), base);
    os << "<circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"1.5\" fill=\"#2ca02c\"/>\n";
  }
  for (int s = 1; s <= len; ++s)
    os << "<circle cx=\"" << kMargin + s * kUnit << "\" cy=\"" << base << "\" r=\"1\" fill=\"black\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace webfaces
